use std::f64::consts::PI;

use crate::error::{out_of_range, Result};

/// Buffon probability of the unit disk,
/// `(2/π)(arccos(l/2) - (l/2)√(1 - l²/4))` for `0 < l <= 2`, and 1 at `l = 0`
/// (a zero-length needle is a point).
pub fn disk_closed_form(l: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&l) {
        return Err(out_of_range("l", l, "0 <= l <= 2 for the unit disk"));
    }
    if l == 0.0 {
        return Ok(1.0);
    }
    if l == 2.0 {
        return Ok(0.0);
    }
    let half = 0.5 * l;
    let p = 2.0 / PI * (half.acos() - half * (1.0 - half * half).sqrt());
    Ok(p.clamp(0.0, 1.0))
}

/// Buffon probability of a disk of any radius; needles longer than the
/// diameter never fit, so the value is 0 there.
pub fn disk_probability(radius: f64, l: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(out_of_range("radius", radius, "radius > 0"));
    }
    if l < 0.0 {
        return Err(out_of_range("l", l, "l >= 0"));
    }
    let scaled = l / radius;
    if scaled >= 2.0 {
        return Ok(0.0);
    }
    disk_closed_form(scaled)
}
