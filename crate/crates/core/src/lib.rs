//! β-expansions, two-sided lexicographic subshifts and the Hausdorff
//! dimension of survivor sets of the β-transformation with a hole `(0, t)`.
//!
//! Everything that decides a digit or an order is certified: values over β
//! are carried exactly in `Q(β)` when possible and as refinable rational
//! enclosures otherwise. Only entropies and dimensions, which are reported
//! rather than compared, are floating-point bounds.

pub mod betanum;
pub mod error;
pub mod expansion;
pub mod holder;
pub mod seqcore;
pub mod subshift;
pub mod survivor;

pub use betanum::{BetaSpec, CertValue, Limits};
pub use error::{Error, Result};
pub use seqcore::{parse_seq, EPSeq, Word};
