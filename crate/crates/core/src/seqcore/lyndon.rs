use super::word::Word;
use crate::error::{Error, Result};

/// Duval's algorithm: the unique factorization of `w` into a non-increasing
/// sequence of Lyndon words.
pub fn lyndon_factorization(w: &Word) -> Vec<Word> {
    let s = w.digits();
    let n = s.len();
    let mut factors = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push(Word::from_vec_unchecked(s[i..i + j - k].to_vec()));
            i += j - k;
        }
    }
    factors
}

/// `w` is Lyndon iff `w ≺ B` (zero-padded comparison) for every split `w = AB`
/// with `A`, `B` nonempty. Single letters are Lyndon.
///
/// Under the zero-padded order this coincides with the classical definition,
/// so the test is a single Duval pass.
pub fn is_lyndon(w: &Word) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let f = lyndon_factorization(w);
    Ok(f.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::super::word::word_cmp;
    use super::*;
    use std::cmp::Ordering;

    fn brute(w: &Word) -> bool {
        (1..w.len()).all(|cut| {
            let b = Word::from_vec_unchecked(w.digits()[cut..].to_vec());
            word_cmp(w, &b) == Ordering::Less
        })
    }

    fn all_words(len: usize, base: u8) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..base).map(move |d| {
                        let mut v = v.clone();
                        v.push(d);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Word::from_vec_unchecked).collect()
    }

    #[test]
    fn examples() {
        assert!(is_lyndon(&Word::parse("01").unwrap()).unwrap());
        assert!(!is_lyndon(&Word::parse("010").unwrap()).unwrap());
        assert!(is_lyndon(&Word::parse("0").unwrap()).unwrap());
        assert!(is_lyndon(&Word::parse("00111").unwrap()).unwrap());
        assert_eq!(is_lyndon(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn agrees_with_all_splits_binary() {
        for len in 1..=12 {
            for w in all_words(len, 2) {
                assert_eq!(is_lyndon(&w).unwrap(), brute(&w), "{w}");
            }
        }
    }

    #[test]
    fn agrees_with_all_splits_quaternary() {
        for len in 1..=8 {
            for w in all_words(len, 4) {
                assert_eq!(is_lyndon(&w).unwrap(), brute(&w), "{w}");
            }
        }
    }

    #[test]
    fn factorization_concatenates_back() {
        let w = Word::parse("0110100110010110").unwrap();
        let f = lyndon_factorization(&w);
        let joined: Vec<u8> = f.iter().flat_map(|x| x.digits().to_vec()).collect();
        assert_eq!(joined, w.digits());
        for pair in f.windows(2) {
            assert!(pair[0] >= pair[1]);
        }
    }
}
