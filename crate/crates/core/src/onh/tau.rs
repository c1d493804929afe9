//! Signed normal forms of `tau`-words in the odd nilHecke algebra.
//!
//! `tau_w` always means the product along the lexicographically smallest
//! reduced word of `w`. Far commutations `tau_i tau_j = -tau_j tau_i` cost a
//! sign, braid moves do not, and `tau_i^2 = 0`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest rank whose tables are precomputed.
pub const MAX_RANK: usize = 6;

#[derive(Debug)]
pub struct TauTable {
    n: usize,
    perms: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    words: Vec<Vec<usize>>,
    // left[i - 1][w] = tau_i tau_w as (sign, index), None when zero
    left: Vec<Vec<Option<(i8, usize)>>>,
}

static TABLES: [OnceLock<TauTable>; MAX_RANK + 1] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

/// The shared table for rank `n`, built on first use.
pub fn tau_table(n: usize) -> Result<&'static TauTable> {
    if n > MAX_RANK {
        return Err(Error::CapExceeded {
            what: "odd nilHecke rank",
            size: n,
            cap: MAX_RANK,
        });
    }
    Ok(TABLES[n].get_or_init(|| TauTable::build(n)))
}

impl TauTable {
    fn build(n: usize) -> Self {
        let perms = Permutation::all(n);
        let index: HashMap<Permutation, usize> =
            perms.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let words: Vec<Vec<usize>> = perms.iter().map(Permutation::min_reduced_word).collect();
        let mut memo = HashMap::new();
        let left = (1..n)
            .map(|i| {
                perms
                    .iter()
                    .enumerate()
                    .map(|(k, w)| {
                        if w.is_left_descent(i) {
                            return None;
                        }
                        let target = index[&w.left_mul_simple(i)];
                        let mut word = vec![i];
                        word.extend(&words[k]);
                        let (sign, canon) = canonicalize(n, &word, &mut memo);
                        debug_assert_eq!(canon, words[target]);
                        Some((sign, target))
                    })
                    .collect()
            })
            .collect();
        TauTable {
            n,
            perms,
            index,
            words,
            left,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perm(&self, idx: usize) -> &Permutation {
        &self.perms[idx]
    }

    pub fn index_of(&self, w: &Permutation) -> usize {
        self.index[w]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// The canonical word of `tau_w`.
    pub fn word(&self, idx: usize) -> &[usize] {
        &self.words[idx]
    }

    pub fn length(&self, idx: usize) -> usize {
        self.words[idx].len()
    }

    /// `tau_i tau_w`.
    pub fn left_mul(&self, i: usize, idx: usize) -> Option<(i8, usize)> {
        self.left[i - 1][idx]
    }

    /// `tau_u tau_w`.
    pub fn mul(&self, u: usize, w: usize) -> Option<(i8, usize)> {
        let mut sign = 1i8;
        let mut cur = w;
        for &i in self.words[u].iter().rev() {
            let (s, next) = self.left_mul(i, cur)?;
            sign *= s;
            cur = next;
        }
        Some((sign, cur))
    }

    /// Reduce an arbitrary word to `0` or `sign * tau_w`.
    pub fn reduce_word(&self, word: &[usize]) -> Result<Option<(i8, usize)>> {
        if let Some(&bad) = word.iter().find(|&&i| i == 0 || i >= self.n) {
            return Err(Error::GeneratorOutOfRange { index: bad, n: self.n });
        }
        let mut sign = 1i8;
        let mut cur = self.identity();
        for &i in word.iter().rev() {
            match self.left_mul(i, cur) {
                None => return Ok(None),
                Some((s, next)) => {
                    sign *= s;
                    cur = next;
                }
            }
        }
        Ok(Some((sign, cur)))
    }
}

/// `tau` of a word as `0` or `sign * tau_w`, for a rank-`n` algebra.
pub fn tau_word_reduce(n: usize, word: &[usize]) -> Result<Option<(i8, Permutation)>> {
    let table = tau_table(n)?;
    Ok(table
        .reduce_word(word)?
        .map(|(s, idx)| (s, table.perm(idx).clone())))
}

/// Rewrite a reduced word into the canonical one, returning the sign.
fn canonicalize(
    n: usize,
    word: &[usize],
    memo: &mut HashMap<Vec<usize>, (i8, Vec<usize>)>,
) -> (i8, Vec<usize>) {
    if word.is_empty() {
        return (1, Vec::new());
    }
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let w = Permutation::from_word(n, word).expect("letters in range");
    let s = (1..n).find(|&i| w.is_left_descent(i)).expect("nonidentity has a descent");
    let (sign_front, moved) = bring_to_front(s, word);
    let (sign_rest, rest) = canonicalize(n, &moved[1..], memo);
    let mut canon = vec![s];
    canon.extend(rest);
    let out = (sign_front * sign_rest, canon);
    memo.insert(word.to_vec(), out.clone());
    out
}

/// Rewrite a reduced word for `w` into one beginning with `s`, where `s` is a
/// left descent of `w`.
fn bring_to_front(s: usize, word: &[usize]) -> (i8, Vec<usize>) {
    let r = word[0];
    if r == s {
        return (1, word.to_vec());
    }
    let (sign, tail) = bring_to_front(s, &word[1..]);
    if r.abs_diff(s) > 1 {
        // r s rest -> s r rest
        let mut out = vec![s, r];
        out.extend(&tail[1..]);
        (-sign, out)
    } else {
        // r s r rest -> s r s rest
        let (sign2, tail2) = bring_to_front(r, &tail[1..]);
        let mut out = vec![s, r, s];
        out.extend(&tail2[1..]);
        (sign * sign2, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(tau_word_reduce(3, &[1, 1]).unwrap(), None);
        assert_eq!(tau_word_reduce(3, &[]).unwrap(), Some((1, Permutation::identity(3))));
        let longest = Permutation::from_word(3, &[1, 2, 1]).unwrap();
        assert_eq!(tau_word_reduce(3, &[2, 1, 2]).unwrap(), Some((1, longest)));
        let w = Permutation::from_word(4, &[1, 3]).unwrap();
        assert_eq!(tau_word_reduce(4, &[3, 1]).unwrap(), Some((-1, w.clone())));
        assert_eq!(w.min_reduced_word(), vec![1, 3]);
        assert_eq!(tau_word_reduce(3, &[3]).unwrap_err().code(), "E_GENERATOR");
        assert_eq!(tau_word_reduce(7, &[]).unwrap_err().code(), "E_CAP");
    }

    #[test]
    fn canonical_words_are_fixed_points() {
        let t = tau_table(4).unwrap();
        for idx in 0..t.len() {
            assert_eq!(t.reduce_word(t.word(idx)).unwrap(), Some((1, idx)));
        }
    }
}
