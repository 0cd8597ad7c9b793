//! Two-symbol lexicographic subshifts `𝒦(t, u)`: membership, min/max
//! normalization, and entropy.

mod entropy;
mod normalize;

pub use entropy::{entropy, entropy_of_normalized, enumerate_if_finite, sft_entropy_oracle, EntropyResult, LAMBDA_WIDTH};
pub use normalize::{
    membership, normalize, normalize_traced, normalize_with, step1_max, step1_min, tau, tau_step, theta, theta_step,
    LexPair, NormalizeOptions, NormalizeTrace, NormalizedPair, PairStatus, StepOrder,
};
