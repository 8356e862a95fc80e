//! The Buffon probability `P_X(l)` by three routes: the disk closed form,
//! deterministic quadrature of the pointwise probability (polygons and disks)
//! and seeded Monte Carlo (every body).

mod closed_form;
mod monte_carlo;
mod quadrature;

pub use closed_form::{disk_closed_form, disk_probability};
pub use monte_carlo::{
    derive_seed, mc_buffon, AngleSampling, Estimate, Method, PointSampling, SamplerConfig,
    CHUNK_SAMPLES, MAX_REJECTION_ATTEMPTS,
};
pub use quadrature::{
    boundary_layer_integral, quad_buffon, QuadratureResult, DEFAULT_GRID, PERIMETER_TOLERANCE,
};
