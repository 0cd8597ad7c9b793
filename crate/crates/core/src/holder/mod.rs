//! Local Hölder exponents of `η(t) = dim_H K(t)` and the supporting
//! prefix metric.

mod estimate;
mod sweep;

pub use estimate::{
    common_prefix_len, default_offsets, geometric_offsets, holder_estimate, pressure_derivative, HolderEstimate,
    HolderSample, HolderValue,
};
pub use sweep::{eta_sweep, SweepRow, SWEEP_HEADER};
