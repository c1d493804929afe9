//! Monomial bases as labelled index sets (exponent vector plus permutation),
//! each carrying its `Z`-degree and `Z/2`-parity.
//!
//! Every enumerator lists labels in lexicographic order of
//! `(permutation one-line notation, exponent vector)`.

use serde::Serialize;

use crate::cartan::{CartanSuperdatum, DominantWeight, WeightSeq};
use crate::dimension::{tilde_dims, DimensionQuery};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::perm::{self, Composition, Permutation};
use crate::qpi::{Parity, QPiPolynomial};

/// Which family a label belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisShape {
    /// `e(nu~) x^r tau_w`, `w` in a Young subgroup.
    Tilde,
    /// `x^k tau_w` in the cyclotomic odd nilHecke algebra.
    OddNilHecke,
    /// `tau_d x^r e(mu)` for a multiplicity-free root.
    DistinctRoot,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialLabel {
    pub exponents: Vec<u64>,
    pub perm: Permutation,
    pub degree: i64,
    pub parity: Parity,
    pub shape: BasisShape,
}

impl MonomialLabel {
    /// `x1^a*x2^b*t[1,2]`, with `1` for the unit.
    pub fn render(&self) -> String {
        let mut factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) })
            .collect();
        let word = self.perm.min_reduced_word();
        if !word.is_empty() {
            let letters: Vec<String> = word.iter().map(|i| i.to_string()).collect();
            let tau = format!("t[{}]", letters.join(","));
            match self.shape {
                BasisShape::DistinctRoot => factors.insert(0, tau),
                _ => factors.push(tau),
            }
        }
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }
}

/// `(deg, parity)` of `tau_w e(nu)`: every inverted pair `a < b`,
/// `w(a) > w(b)` contributes `-(alpha_{nu_a}|alpha_{nu_b})` and
/// `p(nu_a) p(nu_b)`. Independent of the reduced word.
pub fn tau_degree(datum: &CartanSuperdatum, w: &Permutation, nu: &WeightSeq) -> (i64, Parity) {
    let n = w.len();
    let mut deg = 0;
    let mut par = Parity::Even;
    for a in 0..n {
        for b in a + 1..n {
            if w.apply(a) > w.apply(b) {
                let (i, j) = (nu.0[a], nu.0[b]);
                deg -= datum.bilinear(i, j);
                par += datum.parity(i) * datum.parity(j);
            }
        }
    }
    (deg, par)
}

/// `(deg, parity)` of `x^r e(nu)`.
pub fn x_degree(datum: &CartanSuperdatum, exponents: &[u64], nu: &WeightSeq) -> (i64, Parity) {
    exponents
        .iter()
        .zip(&nu.0)
        .fold((0, Parity::Even), |(d, p), (&r, &i)| {
            (d + r as i64 * datum.bilinear(i, i), p + datum.parity(i).times(r as i64))
        })
}

/// All exponent vectors with `0 <= r_k < bounds[k]`, lexicographically.
fn exponent_box(bounds: &[i64]) -> Vec<Vec<u64>> {
    if bounds.iter().any(|&b| b <= 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0u64; bounds.len()];
    loop {
        out.push(current.clone());
        let mut k = bounds.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if (current[k] as i64) < bounds[k] {
                break;
            }
            current[k] = 0;
        }
    }
}

fn labels_over(
    exec: Execution,
    perms: &[Permutation],
    bounds: &[i64],
    make: impl Fn(&Permutation, Vec<u64>) -> MonomialLabel + Sync + Send,
) -> Vec<MonomialLabel> {
    let exps = exponent_box(bounds);
    if exps.is_empty() {
        return Vec::new();
    }
    exec::map_collect(exec, perms, |w| {
        exps.iter().map(|e| make(w, e.clone())).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Basis of `e(nu~) R^Lambda(beta) e(nu~)`: `x^r tau_w` with `w` in `S_b` and
/// `0 <= r_k < N(nu~, k)`.
pub fn tilde_basis(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    labels: &[usize],
    b: &Composition,
) -> Result<Vec<MonomialLabel>> {
    let dims = tilde_dims(datum, weight, labels, b)?;
    let nu = dims.nu_tilde.clone();
    let group = perm::young_subgroup(b);
    Ok(labels_over(Execution::default(), &group, &dims.position_values, |w, r| {
        let (dx, px) = x_degree(datum, &r, &nu);
        let (dt, pt) = tau_degree(datum, w, &nu);
        MonomialLabel {
            exponents: r,
            perm: w.clone(),
            degree: dx + dt,
            parity: px + pt,
            shape: BasisShape::Tilde,
        }
    }))
}

/// Basis of the cyclotomic odd nilHecke algebra: `x^k tau_w`, `0 <= k_i <= ell - i`.
/// Empty when `ell < n`.
pub fn onh_basis(n: usize, ell: usize) -> Vec<MonomialLabel> {
    if ell < n {
        return Vec::new();
    }
    let bounds: Vec<i64> = (1..=n).map(|i| (ell - i + 1) as i64).collect();
    let group = Permutation::all(n);
    labels_over(Execution::default(), &group, &bounds, |w, k| {
        let total: u64 = k.iter().sum();
        let len = w.length() as i64;
        MonomialLabel {
            degree: 2 * total as i64 - 2 * len,
            parity: Parity::from_bit(total + len as u64),
            exponents: k,
            perm: w.clone(),
            shape: BasisShape::OddNilHecke,
        }
    })
}

/// Basis of `e(nu) R^Lambda(beta) e(mu)` for `mu` with distinct entries:
/// `tau_d x^r e(mu)` with `d mu = nu` and `0 <= r_k < N(d, mu, k)`.
pub fn distinct_root_basis(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    mu: &WeightSeq,
    nu: &WeightSeq,
) -> Result<Vec<MonomialLabel>> {
    if !mu.has_distinct_entries() {
        return Err(Error::RepeatedLabels);
    }
    let query = DimensionQuery::new(datum, weight, mu, nu)?;
    let d = perm::coset_representative(mu, nu).ok_or_else(|| {
        Error::NotRearrangement(datum.render_seq(nu), datum.render_seq(mu))
    })?;
    let bounds: Vec<i64> = (0..mu.len())
        .map(|k| query.n_stat(&d, k))
        .collect::<Result<_>>()?;
    let (dt, pt) = tau_degree(datum, &d, mu);
    Ok(labels_over(Execution::Sequential, &[d], &bounds, |w, r| {
        let (dx, px) = x_degree(datum, &r, mu);
        MonomialLabel {
            exponents: r,
            perm: w.clone(),
            degree: dx + dt,
            parity: px + pt,
            shape: BasisShape::DistinctRoot,
        }
    }))
}

/// `sum q^deg pi^parity` over a list of labels.
pub fn graded_census(labels: &[MonomialLabel]) -> QPiPolynomial {
    labels
        .iter()
        .map(|l| QPiPolynomial::monomial(1, l.degree, l.parity))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn b2() -> CartanSuperdatum {
        CartanSuperdatum::new(
            vec!["1".into(), "2".into()],
            vec![vec![2, -2], vec![-1, 2]],
            vec![Parity::Odd, Parity::Even],
            Some(vec![1, 2]),
        )
        .unwrap()
    }

    #[test]
    fn onh_examples() {
        let basis = onh_basis(2, 2);
        let rendered: Vec<String> = basis.iter().map(MonomialLabel::render).collect();
        assert_eq!(rendered, vec!["1", "x1", "t[1]", "x1*t[1]"]);
        assert!(onh_basis(3, 2).is_empty());
        assert_eq!(onh_basis(1, 1).len(), 1);
        assert_eq!(onh_basis(2, 3).len(), 12);
        assert_eq!(onh_basis(4, 5).len(), 24 * 5 * 4 * 3 * 2);
    }

    #[test]
    fn onh_census_matches_formula() {
        for n in 1..4 {
            for ell in n..5 {
                assert_eq!(
                    graded_census(&onh_basis(n, ell)),
                    DimensionQuery::odd_nilhecke(n, ell as u64).graded_dim(),
                    "n={n} ell={ell}"
                );
            }
        }
    }

    #[test]
    fn tilde_examples() {
        let onh = CartanSuperdatum::odd_nilhecke();
        let basis = tilde_basis(&onh, &DominantWeight(vec![3]), &[0], &Composition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(basis.len(), 12);
        let one = tilde_basis(&onh, &DominantWeight(vec![1]), &[0], &Composition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].exponents, vec![0]);
        assert!(one[0].perm.is_identity());
        let b = tilde_basis(&b2(), &DominantWeight(vec![2, 0]), &[0], &Composition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn distinct_root_examples() {
        let d = b2();
        let lam = DominantWeight(vec![2, 1]);
        let mu = WeightSeq(vec![0, 1]);
        let nu = WeightSeq(vec![1, 0]);
        let basis = distinct_root_basis(&d, &lam, &mu, &nu).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].perm, Permutation::parse("2,1", None).unwrap());
        let q = DimensionQuery::new(&d, &lam, &mu, &nu).unwrap();
        assert_eq!(BigInt::from(basis.len()), q.ungraded_dim());
        assert_eq!(graded_census(&basis), q.graded_dim());
        let single = distinct_root_basis(&d, &DominantWeight(vec![5, 0]), &WeightSeq(vec![0]), &WeightSeq(vec![0])).unwrap();
        assert_eq!(single.len(), 5);
        assert_eq!(
            distinct_root_basis(&d, &lam, &WeightSeq(vec![0, 0]), &WeightSeq(vec![0, 0])).unwrap_err().code(),
            "E_REPEATED_LABELS"
        );
        assert_eq!(
            distinct_root_basis(&d, &lam, &mu, &WeightSeq(vec![0, 0])).unwrap_err().code(),
            "E_NOT_REARRANGEMENT"
        );
    }

    #[test]
    fn tau_degree_matches_word_walk() {
        let d = b2();
        let nu = WeightSeq(vec![0, 1, 0, 1]);
        for w in Permutation::all(4) {
            let mut cur = nu.clone();
            let (mut deg, mut par) = (0, Parity::Even);
            for &a in w.min_reduced_word().iter().rev() {
                let t = d.generator_degrees(&cur).tau[a - 1];
                deg += t.z;
                par += t.parity;
                cur.0.swap(a - 1, a);
            }
            assert_eq!(tau_degree(&d, &w, &nu), (deg, par), "{w}");
            assert_eq!(cur, w.act(&nu));
        }
    }
}
