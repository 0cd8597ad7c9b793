//! Digit words, eventually periodic sequences and their lexicographic order.

mod literal;
mod lyndon;
mod seq;
mod word;

pub use literal::parse_seq;
pub use lyndon::{is_lyndon, lyndon_factorization};
pub use seq::{canonicalize, cmp, shift, EPSeq};
pub use word::{word_cmp, Word, MAX_DIGIT};
