//! Batch experiments behind the `buffon-convex` binary: body ingestion and
//! normalization, the disk curve, the ellipse sweep, Steiner tables and the
//! verification suite, with CSV/JSON emission.

mod experiments;
mod input;
mod output;
mod verify;

pub use experiments::{
    evaluate_body, normalized_ellipse, run_disk_curve, run_ellipse_sweep, steiner_rows,
    sweep_crossings, DiskCurveRow, EstimateRow, SteinerRow, SweepConfig, SweepRow,
    DEFAULT_DISK_LENGTHS, DEFAULT_ECCENTRICITIES, DEFAULT_SWEEP_LENGTHS,
};
pub use input::{normalize_to_perimeter, parse_body, read_body, BodyInput, RunConfig};
pub use output::{
    fmt_f64, to_csv_string, write_csv, write_json, write_rows, Format, Row, SCHEMA_LINE,
};
pub use verify::{
    run_verification_suite, standard_bodies, CheckResult, SuiteBody, VerificationReport,
    VerifyConfig, BOUND_TOLERANCE, STEINER_TOLERANCE,
};
