//! Survivor sets `K(t)` of the β-transformation with the hole `(0, t)`:
//! bifurcation parameters, stability intervals and Hausdorff dimension.

mod dim;
mod stable;

pub use dim::{
    check_main1_hypothesis, greedy_of, hausdorff_dim, resolve_t, DimResult, Hypothesis, HypothesisReport, ResolvedT,
    TParam, TSeq,
};
pub use stable::{
    in_survivor, is_bifurcation, is_bifurcation_seq, omega_words, r_star, r_star_chain, stable_component, OmegaWord,
    RewriteChain, StableInterval,
};
