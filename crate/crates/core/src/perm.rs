//! Type A combinatorics: one-line permutations, lengths, reduced words,
//! transporter sets `S(nu, nu')` and Young subgroups.
//!
//! Positions and images are 0-based in the API; generator indices are the
//! usual 1-based names `s_1, ..., s_{n-1}`. Text output is 1-based one-line
//! notation, e.g. `3,2,1`.

use std::fmt;

use crate::cartan::WeightSeq;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Permutation(images))
    }

    /// The simple transposition `s_i = (i, i+1)`, `1 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        check_generator(n, i)?;
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Ok(Permutation(images))
    }

    /// `s_{i_1} s_{i_2} ... s_{i_k}` as a permutation of `{1..n}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Permutation::identity(n);
        for &i in word {
            check_generator(n, i)?;
            w.0.swap(i - 1, i);
        }
        Ok(w)
    }

    /// Parse one-line notation (`"3,2,1"`) or cycle notation (`"(1 3)(2 4)"`),
    /// both 1-based. Cycle notation needs the rank `n`.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('(') {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            let mut max = 0;
            for chunk in text.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("bad cycle syntax in {text:?}")))?;
                let cycle = body
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| {
                        s.parse::<usize>()
                            .ok()
                            .filter(|&v| v >= 1)
                            .ok_or_else(|| Error::Parse(format!("bad cycle entry {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                max = max.max(cycle.iter().copied().max().unwrap_or(0));
                cycles.push(cycle);
            }
            let n = n.unwrap_or(max);
            if max > n {
                return Err(Error::Parse(format!("cycle entry {max} exceeds rank {n}")));
            }
            let mut images: Vec<usize> = (0..n).collect();
            let mut touched = vec![false; n];
            for cycle in &cycles {
                for (k, &a) in cycle.iter().enumerate() {
                    if touched[a - 1] {
                        return Err(Error::Parse(format!("cycles in {text:?} are not disjoint")));
                    }
                    touched[a - 1] = true;
                    images[a - 1] = cycle[(k + 1) % cycle.len()] - 1;
                }
            }
            Ok(Permutation(images))
        } else {
            let images = text
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1)
                        .map(|v| v - 1)
                        .ok_or_else(|| Error::Parse(format!("bad one-line entry {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let p = Permutation::from_images(images)?;
            if let Some(n) = n {
                if p.len() != n {
                    return Err(Error::RankMismatch(p.len(), n));
                }
            }
            Ok(p)
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `w(j)`, 0-based.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(j, &v)| j == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (j, &v) in self.0.iter().enumerate() {
            inv[v] = j;
        }
        Permutation(inv)
    }

    /// `self * other`, i.e. `j -> self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let n = self.len();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.0[i] > self.0[j]).count())
            .sum()
    }

    /// `s_i w`: swaps the values `i` and `i+1` (1-based) in one-line notation.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&v| {
                    if v == i - 1 {
                        i
                    } else if v == i {
                        i - 1
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// `l(s_i w) < l(w)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        let inv = |v: usize| self.0.iter().position(|&x| x == v).expect("bijection");
        inv(i - 1) > inv(i)
    }

    /// The lexicographically smallest reduced word.
    pub fn min_reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(i) = (1..w.len()).find(|&i| w.is_left_descent(i)) {
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }

    /// `w nu`, defined by `(w nu)_{w(j)} = nu_j`.
    pub fn act(&self, nu: &WeightSeq) -> WeightSeq {
        let mut out = vec![0; nu.len()];
        for (j, &label) in nu.0.iter().enumerate() {
            out[self.0[j]] = label;
        }
        WeightSeq(out)
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let nu = WeightSeq(vec![0; n]);
        transporter(&nu, &nu)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| (v + 1).to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn check_generator(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, n });
    }
    Ok(())
}

/// The search space of `S(nu, nu')`: position `j` must be sent to a position of
/// `nu'` carrying the label `nu_j`.
#[derive(Clone, Debug)]
pub(crate) struct TransporterSpace {
    nu: Vec<usize>,
    // targets[label] = positions of nu' with that label, increasing
    targets: Vec<Vec<usize>>,
    feasible: bool,
}

impl TransporterSpace {
    pub(crate) fn new(nu: &WeightSeq, nu_prime: &WeightSeq) -> Self {
        let labels = nu.0.iter().chain(&nu_prime.0).copied().max().map_or(0, |m| m + 1);
        let mut targets = vec![Vec::new(); labels];
        for (k, &l) in nu_prime.0.iter().enumerate() {
            targets[l].push(k);
        }
        let feasible = nu.len() == nu_prime.len() && nu.same_content(nu_prime);
        TransporterSpace {
            nu: nu.0.clone(),
            targets,
            feasible,
        }
    }

    /// Partial assignments of the first few positions, enough to split the
    /// enumeration into roughly `min_tasks` independent pieces. Lexicographic.
    pub(crate) fn prefixes(&self, min_tasks: usize) -> Vec<Vec<usize>> {
        if !self.feasible {
            return Vec::new();
        }
        let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
        while layer.len() < min_tasks && layer[0].len() < self.nu.len() {
            layer = layer
                .iter()
                .flat_map(|prefix| {
                    self.candidates(prefix).into_iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        layer
    }

    fn candidates(&self, prefix: &[usize]) -> Vec<usize> {
        let j = prefix.len();
        self.targets[self.nu[j]]
            .iter()
            .copied()
            .filter(|v| !prefix.contains(v))
            .collect()
    }

    /// Visit every completion of `prefix` in lexicographic order.
    pub(crate) fn for_each_from(&self, prefix: &[usize], f: &mut impl FnMut(&Permutation)) {
        if !self.feasible {
            return;
        }
        let n = self.nu.len();
        let mut used = vec![false; n];
        for &v in prefix {
            used[v] = true;
        }
        let mut current = prefix.to_vec();
        self.dfs(&mut current, &mut used, f);
    }

    fn dfs(&self, current: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&Permutation)) {
        let j = current.len();
        if j == self.nu.len() {
            f(&Permutation(current.clone()));
            return;
        }
        for &v in &self.targets[self.nu[j]] {
            if !used[v] {
                used[v] = true;
                current.push(v);
                self.dfs(current, used, f);
                current.pop();
                used[v] = false;
            }
        }
    }
}

/// `S(nu, nu') = { w : w nu = nu' }` in lexicographic order; empty when `nu'`
/// is not a rearrangement of `nu`.
pub fn transporter(nu: &WeightSeq, nu_prime: &WeightSeq) -> Vec<Permutation> {
    let space = TransporterSpace::new(nu, nu_prime);
    let mut out = Vec::new();
    space.for_each_from(&[], &mut |w| out.push(w.clone()));
    out
}

/// `|S(nu, nu')|` without enumerating: the product of label multiplicity factorials.
pub fn transporter_count(nu: &WeightSeq, nu_prime: &WeightSeq) -> u128 {
    if nu.len() != nu_prime.len() || !nu.same_content(nu_prime) {
        return 0;
    }
    let mut sorted = nu.0.clone();
    sorted.sort_unstable();
    let mut total: u128 = 1;
    let mut run = 0u128;
    for (k, v) in sorted.iter().enumerate() {
        if k > 0 && sorted[k - 1] == *v {
            run += 1;
        } else {
            run = 1;
        }
        total = total.saturating_mul(run);
    }
    total
}

/// The element of `S(nu, nu')` matching equal labels in order of appearance.
pub fn coset_representative(nu: &WeightSeq, nu_prime: &WeightSeq) -> Option<Permutation> {
    if nu.len() != nu_prime.len() || !nu.same_content(nu_prime) {
        return None;
    }
    let space = TransporterSpace::new(nu, nu_prime);
    let mut next = vec![0usize; space.targets.len()];
    let images = nu
        .0
        .iter()
        .map(|&l| {
            let v = space.targets[l][next[l]];
            next[l] += 1;
            v
        })
        .collect();
    Some(Permutation(images))
}

/// A composition `b = (b_1, ..., b_p)` of `n` into positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::CompositionMismatch("parts must be positive".into()));
        }
        Ok(Composition(parts))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parts = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad part {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `c_0 = 0, c_t = b_1 + ... + b_t`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(0);
        for &b in &self.0 {
            out.push(out.last().copied().unwrap_or(0) + b);
        }
        out
    }

    /// Block index of each position.
    pub fn block_of_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| std::iter::repeat_n(i, b))
            .collect()
    }
}

/// `S_b = S_{1..c_1} x S_{c_1+1..c_2} x ...`, in lexicographic order.
pub fn young_subgroup(b: &Composition) -> Vec<Permutation> {
    let blocks = WeightSeq(b.block_of_positions());
    transporter(&blocks, &blocks)
}

/// `J_w^{<t} = { j < t : w(j) < w(t) }`, 0-based.
pub fn j_set(w: &Permutation, t: usize) -> Result<Vec<usize>> {
    if t >= w.len() {
        return Err(Error::PositionOutOfRange {
            position: t,
            len: w.len(),
        });
    }
    Ok((0..t).filter(|&j| w.0[j] < w.0[t]).collect())
}
