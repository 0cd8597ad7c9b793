//! Greedy and quasi-greedy β-expansions, `α(β)`, and Parry admissibility.

mod admissible;
mod alpha;
mod engine;

pub use admissible::{is_admissible, is_admissible_with, is_quasi_admissible, is_quasi_admissible_with};
pub use alpha::{alpha_of, AlphaSeq, AlphaStream};
pub use engine::{digits, expand, greedy_digits, quasi_greedy_digits, Expanded, ExpansionKind};
