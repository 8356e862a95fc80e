use std::f64::consts::{PI, TAU};

/// Maps any angle into `[0, 2π)`.
pub fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A finite union of arcs on the circle of directions.
///
/// Stored as sorted, pairwise disjoint half-open intervals `[start, end)` with
/// `0 <= start < end <= 2π`; an arc crossing angle 0 is kept as two pieces.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AngularIntervalSet {
    intervals: Vec<(f64, f64)>,
}

impl AngularIntervalSet {
    pub fn empty() -> Self {
        AngularIntervalSet::default()
    }

    pub fn full() -> Self {
        AngularIntervalSet {
            intervals: vec![(0.0, TAU)],
        }
    }

    /// Arc of directions within `half_width` of `center`.
    pub fn arc(center: f64, half_width: f64) -> Self {
        if half_width >= PI {
            return Self::full();
        }
        if half_width.is_nan() || half_width <= 0.0 {
            return Self::empty();
        }
        let start = canonical_angle(center - half_width);
        let end = start + 2.0 * half_width;
        if end <= TAU {
            AngularIntervalSet {
                intervals: vec![(start, end)],
            }
        } else {
            Self::from_sorted(vec![(0.0, end - TAU), (start, TAU)])
        }
    }

    /// Builds a set from arbitrary `[start, end)` pieces already inside `[0, 2π]`.
    /// Overlapping or touching pieces are merged, empty ones dropped.
    pub fn from_intervals(mut pieces: Vec<(f64, f64)>) -> Self {
        pieces.retain(|&(s, e)| e > s);
        for p in pieces.iter_mut() {
            p.0 = p.0.clamp(0.0, TAU);
            p.1 = p.1.clamp(0.0, TAU);
        }
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (s, e) in pieces {
            match merged.last_mut() {
                Some(last) if s <= last.1 => last.1 = last.1.max(e),
                _ => merged.push((s, e)),
            }
        }
        Self::from_sorted(merged)
    }

    fn from_sorted(mut intervals: Vec<(f64, f64)>) -> Self {
        intervals.retain(|&(s, e)| e > s);
        AngularIntervalSet { intervals }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.intervals == [(0.0, TAU)]
    }

    /// Total length in radians.
    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(s, e)| e - s).sum()
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = canonical_angle(theta);
        let idx = self.intervals.partition_point(|&(s, _)| s <= t);
        idx > 0 && t < self.intervals[idx - 1].1
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let s = a[i].0.max(b[j].0);
            let e = a[i].1.min(b[j].1);
            if e > s {
                out.push((s, e));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        AngularIntervalSet { intervals: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut pieces = self.intervals.clone();
        pieces.extend_from_slice(&other.intervals);
        Self::from_intervals(pieces)
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut cursor = 0.0;
        for &(s, e) in &self.intervals {
            if s > cursor {
                out.push((cursor, s));
            }
            cursor = e;
        }
        if cursor < TAU {
            out.push((cursor, TAU));
        }
        AngularIntervalSet { intervals: out }
    }
}
