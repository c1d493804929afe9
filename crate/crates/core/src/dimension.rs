//! Closed dimension formulas for bi-weight spaces `e(nu) R^Lambda(beta) e(nu')`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cartan::{CartanSuperdatum, DominantWeight, RootVector, WeightSeq};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::perm::{self, Composition, Permutation, TransporterSpace};
use crate::qpi::{quantum_bracket, LaurentPolynomial, Parity, QPiPolynomial};

/// Number of independent chunks the transporter enumeration is split into
/// when running in parallel.
const PARALLEL_CHUNKS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionQuery {
    datum: CartanSuperdatum,
    weight: DominantWeight,
    nu: WeightSeq,
    nu_prime: WeightSeq,
}

impl DimensionQuery {
    pub fn new(
        datum: &CartanSuperdatum,
        weight: &DominantWeight,
        nu: &WeightSeq,
        nu_prime: &WeightSeq,
    ) -> Result<Self> {
        let rank = datum.rank();
        if weight.0.len() != rank {
            return Err(Error::MalformedQuery(format!(
                "weight has {} entries, datum has rank {rank}",
                weight.0.len()
            )));
        }
        if nu.len() != nu_prime.len() {
            return Err(Error::MalformedQuery(format!(
                "nu has length {} but nu' has length {}",
                nu.len(),
                nu_prime.len()
            )));
        }
        if let Some(&bad) = nu.0.iter().chain(&nu_prime.0).find(|&&i| i >= rank) {
            return Err(Error::MalformedQuery(format!("label index {bad} out of range")));
        }
        Ok(DimensionQuery {
            datum: datum.clone(),
            weight: weight.clone(),
            nu: nu.clone(),
            nu_prime: nu_prime.clone(),
        })
    }

    /// The query `e(nu) R e(nu)`.
    pub fn diagonal(datum: &CartanSuperdatum, weight: &DominantWeight, nu: &WeightSeq) -> Result<Self> {
        Self::new(datum, weight, nu, nu)
    }

    /// The odd nilHecke query: one odd label repeated `n` times, `lambda = ell`.
    pub fn odd_nilhecke(n: usize, ell: u64) -> Self {
        let datum = CartanSuperdatum::odd_nilhecke();
        DimensionQuery {
            datum,
            weight: DominantWeight(vec![ell]),
            nu: WeightSeq(vec![0; n]),
            nu_prime: WeightSeq(vec![0; n]),
        }
    }

    pub fn datum(&self) -> &CartanSuperdatum {
        &self.datum
    }

    pub fn weight(&self) -> &DominantWeight {
        &self.weight
    }

    pub fn nu(&self) -> &WeightSeq {
        &self.nu
    }

    pub fn nu_prime(&self) -> &WeightSeq {
        &self.nu_prime
    }

    pub fn n(&self) -> usize {
        self.nu.len()
    }

    /// The reversed query `e(nu') R e(nu)`.
    pub fn transposed(&self) -> Self {
        DimensionQuery {
            datum: self.datum.clone(),
            weight: self.weight.clone(),
            nu: self.nu_prime.clone(),
            nu_prime: self.nu.clone(),
        }
    }

    fn check(&self, w: &Permutation, t: usize) -> Result<()> {
        if w.len() != self.n() {
            return Err(Error::RankMismatch(w.len(), self.n()));
        }
        if t >= self.n() {
            return Err(Error::PositionOutOfRange {
                position: t,
                len: self.n(),
            });
        }
        Ok(())
    }

    fn lambda(&self, i: usize) -> i64 {
        self.weight.0[i] as i64
    }

    /// `N(w, nu, t) = <h_{nu_t}, Lambda - sum_{j in J_w^{<t}} alpha_{nu_j}>`, `t` 0-based.
    pub fn n_stat(&self, w: &Permutation, t: usize) -> Result<i64> {
        self.check(w, t)?;
        Ok(self.n_stat_unchecked(w, t))
    }

    fn n_stat_unchecked(&self, w: &Permutation, t: usize) -> i64 {
        let i = self.nu.0[t];
        let wt = w.apply(t);
        let shift: i64 = (0..t)
            .filter(|&j| w.apply(j) < wt)
            .map(|j| self.datum.entry(i, self.nu.0[j]))
            .sum();
        self.lambda(i) - shift
    }

    /// `N(w, nu, t)` read off the target sequence: sum over the earlier images
    /// `k = w(j) < w(t)` of `alpha_{nu'_k}`. Agrees with [`Self::n_stat`] on
    /// the transporter.
    pub fn n_stat_via_target(&self, w: &Permutation, t: usize) -> Result<i64> {
        self.check(w, t)?;
        let i = self.nu.0[t];
        let wt = w.apply(t);
        let shift: i64 = (0..t)
            .map(|j| w.apply(j))
            .filter(|&k| k < wt)
            .map(|k| self.datum.entry(i, self.nu_prime.0[k]))
            .sum();
        Ok(self.lambda(i) - shift)
    }

    /// `p(w, nu, t) = sum_{k < t, w(k) > w(t)} p(nu_k)`.
    pub fn p_stat(&self, w: &Permutation, t: usize) -> Result<Parity> {
        self.check(w, t)?;
        Ok(self.p_stat_unchecked(w, t))
    }

    fn p_stat_unchecked(&self, w: &Permutation, t: usize) -> Parity {
        let wt = w.apply(t);
        (0..t)
            .filter(|&k| w.apply(k) > wt)
            .fold(Parity::Even, |acc, k| acc + self.datum.parity(self.nu.0[k]))
    }

    /// `p(w, nu, t)` as a sum of `p(nu'_k)` over earlier images `k > w(t)`.
    pub fn p_stat_via_target(&self, w: &Permutation, t: usize) -> Result<Parity> {
        self.check(w, t)?;
        let wt = w.apply(t);
        Ok((0..t)
            .map(|j| w.apply(j))
            .filter(|&k| k > wt)
            .fold(Parity::Even, |acc, k| acc + self.datum.parity(self.nu_prime.0[k])))
    }

    /// `S(nu, nu')` in lexicographic order.
    pub fn transporter(&self) -> Vec<Permutation> {
        perm::transporter(&self.nu, &self.nu_prime)
    }

    /// `N(1, nu, t)` for every position.
    pub fn identity_n_stats(&self) -> Vec<i64> {
        let id = Permutation::identity(self.n());
        (0..self.n()).map(|t| self.n_stat_unchecked(&id, t)).collect()
    }

    /// The summand indexed by `w`:
    /// `prod_t [N(w,nu,t)]_{nu_t} q_{nu_t}^{N(1,nu,t)-1} pi_{nu_t}^{p(w,nu,t)}`.
    pub fn term(&self, w: &Permutation) -> Result<QPiPolynomial> {
        if w.len() != self.n() {
            return Err(Error::RankMismatch(w.len(), self.n()));
        }
        Ok(self.term_with(w, &self.identity_n_stats()))
    }

    fn term_with(&self, w: &Permutation, base: &[i64]) -> QPiPolynomial {
        let mut acc = QPiPolynomial::one();
        for (t, &base_t) in base.iter().enumerate() {
            let i = self.nu.0[t];
            let d = self.datum.d(i);
            let parity = self.datum.parity(i);
            let bracket = quantum_bracket(self.n_stat_unchecked(w, t), d, parity);
            if bracket.is_zero() {
                return QPiPolynomial::zero();
            }
            let twist = parity * self.p_stat_unchecked(w, t);
            acc = (&acc * &bracket).shift(i64::from(d) * (base_t - 1), twist);
        }
        acc
    }

    fn sum_over_transporter<R, F, Z, A>(&self, exec: Execution, f: F, zero: Z, add: A) -> R
    where
        R: Send,
        F: Fn(&Permutation) -> R + Sync + Send,
        Z: Fn() -> R + Sync + Send,
        A: Fn(R, R) -> R + Sync + Send,
    {
        let space = TransporterSpace::new(&self.nu, &self.nu_prime);
        let chunks = match exec {
            Execution::Parallel => PARALLEL_CHUNKS,
            Execution::Sequential => 1,
        };
        let prefixes = space.prefixes(chunks);
        exec::map_reduce(
            exec,
            &prefixes,
            |prefix| {
                let mut acc = Some(zero());
                space.for_each_from(prefix, &mut |w| {
                    let cur = acc.take().expect("accumulator present");
                    acc = Some(add(cur, f(w)));
                });
                acc.expect("accumulator present")
            },
            &zero,
            &add,
        )
    }

    /// The `(q, pi)`-graded dimension. `1` for `n = 0`, `0` for an empty transporter.
    pub fn graded_dim(&self) -> QPiPolynomial {
        self.graded_dim_with(Execution::default())
    }

    pub fn graded_dim_with(&self, exec: Execution) -> QPiPolynomial {
        let base = self.identity_n_stats();
        self.sum_over_transporter(
            exec,
            |w| self.term_with(w, &base),
            QPiPolynomial::zero,
            |a, b| a + b,
        )
    }

    /// The graded dimension at `pi = 1`.
    pub fn graded_dim_z(&self) -> LaurentPolynomial {
        self.graded_dim_z_with(Execution::default())
    }

    pub fn graded_dim_z_with(&self, exec: Execution) -> LaurentPolynomial {
        // The even-datum specialization of the same sum: brackets at pi = 1.
        let even = self
            .datum
            .with_parity(vec![Parity::Even; self.datum.rank()])
            .expect("all-even parity is always admissible");
        let q = DimensionQuery {
            datum: even,
            ..self.clone()
        };
        q.graded_dim_with(exec).specialize_pi_one()
    }

    /// `sum_{w in S(nu,nu')} prod_t N(w, nu, t)`.
    pub fn ungraded_dim(&self) -> BigInt {
        self.ungraded_dim_with(Execution::default())
    }

    pub fn ungraded_dim_with(&self, exec: Execution) -> BigInt {
        self.sum_over_transporter(
            exec,
            |w| {
                let mut prod = BigInt::one();
                for t in 0..self.n() {
                    let v = self.n_stat_unchecked(w, t);
                    if v == 0 {
                        return BigInt::zero();
                    }
                    prod *= v;
                }
                prod
            },
            BigInt::zero,
            |a, b| a + b,
        )
    }
}

/// Whether `e(nu) != 0` in `R^Lambda(beta)`.
pub fn idempotent_nonzero(datum: &CartanSuperdatum, weight: &DominantWeight, nu: &WeightSeq) -> Result<bool> {
    Ok(!DimensionQuery::diagonal(datum, weight, nu)?.ungraded_dim().is_zero())
}

/// Block data for `nu~ = (nu^1)^{b_1} ... (nu^p)^{b_p}` with pairwise distinct
/// block labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeDims {
    pub nu_tilde: WeightSeq,
    /// `N_i = N(1, nu~, c_{i-1} + 1)`, one per block.
    pub block_values: Vec<i64>,
    /// `N(nu~, k) = N_i - (k - c_{i-1} - 1)` for every position `k`.
    pub position_values: Vec<i64>,
    /// `prod_i b_i! prod_k N(nu~, k)`.
    pub total: BigInt,
    /// `N_i >= b_i` for every block.
    pub nonzero: bool,
}

/// Concatenate `labels[i]` repeated `b_i` times.
pub fn tilde_sequence(labels: &[usize], b: &Composition) -> Result<WeightSeq> {
    if labels.len() != b.parts().len() {
        return Err(Error::CompositionMismatch(format!(
            "{} block labels but {} parts",
            labels.len(),
            b.parts().len()
        )));
    }
    if !WeightSeq(labels.to_vec()).has_distinct_entries() {
        return Err(Error::RepeatedLabels);
    }
    Ok(WeightSeq(
        labels
            .iter()
            .zip(b.parts())
            .flat_map(|(&l, &m)| std::iter::repeat_n(l, m))
            .collect(),
    ))
}

pub fn tilde_dims(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    labels: &[usize],
    b: &Composition,
) -> Result<TildeDims> {
    let nu_tilde = tilde_sequence(labels, b)?;
    let query = DimensionQuery::diagonal(datum, weight, &nu_tilde)?;
    let base = query.identity_n_stats();
    let c = b.partial_sums();
    let block_values: Vec<i64> = (0..labels.len()).map(|i| base[c[i]]).collect();
    let position_values: Vec<i64> = b
        .block_of_positions()
        .iter()
        .enumerate()
        .map(|(k, &i)| block_values[i] - (k - c[i]) as i64)
        .collect();
    let mut total: BigInt = b
        .parts()
        .iter()
        .map(|&m| (1..=m).map(BigInt::from).product::<BigInt>())
        .product();
    for &v in &position_values {
        total *= v;
    }
    let nonzero = block_values.iter().zip(b.parts()).all(|(&v, &m)| v >= m as i64);
    Ok(TildeDims {
        nu_tilde,
        block_values,
        position_values,
        total,
        nonzero,
    })
}

/// The full matrix of bi-weight spaces over `I^beta x I^beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimTable {
    pub sequences: Vec<WeightSeq>,
    /// `entries[a][b]` is the graded dimension of `e(seq_a) R e(seq_b)`.
    pub entries: Vec<Vec<QPiPolynomial>>,
}

impl DimTable {
    /// Graded dimension of the whole `R^Lambda(beta)`.
    pub fn total(&self) -> QPiPolynomial {
        self.entries.iter().flatten().cloned().sum()
    }
}

pub fn dim_table(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    beta: &RootVector,
    cap: usize,
    exec: Execution,
) -> Result<DimTable> {
    let size = datum.count_sequences(beta);
    if size > cap {
        return Err(Error::CapExceeded {
            what: "I^beta",
            size,
            cap,
        });
    }
    let sequences = datum.sequences_of(beta);
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).collect();
    let values = exec::try_map_collect(exec, &pairs, |&(a, b)| {
        DimensionQuery::new(datum, weight, &sequences[a], &sequences[b])
            .map(|q| q.graded_dim_with(Execution::Sequential))
    })?;
    let mut entries = Vec::with_capacity(size);
    let mut it = values.into_iter();
    for _ in 0..size {
        entries.push(it.by_ref().take(size).collect());
    }
    Ok(DimTable { sequences, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> CartanSuperdatum {
        CartanSuperdatum::new(
            vec!["1".into(), "2".into()],
            vec![vec![2, -2], vec![-1, 2]],
            vec![Parity::Odd, Parity::Even],
            Some(vec![1, 2]),
        )
        .unwrap()
    }

    fn b2_query() -> DimensionQuery {
        let d = b2();
        DimensionQuery::diagonal(&d, &DominantWeight(vec![2, 1]), &WeightSeq(vec![0, 1, 0])).unwrap()
    }

    #[test]
    fn b2_statistics() {
        let q = b2_query();
        let id = Permutation::identity(3);
        let w = Permutation::parse("3,2,1", None).unwrap();
        let n_id: Vec<i64> = (0..3).map(|t| q.n_stat(&id, t).unwrap()).collect();
        let n_w: Vec<i64> = (0..3).map(|t| q.n_stat(&w, t).unwrap()).collect();
        let p_w: Vec<u64> = (0..3).map(|t| q.p_stat(&w, t).unwrap().bit()).collect();
        assert_eq!(n_id, vec![2, 2, 2]);
        assert_eq!(n_w, vec![2, 1, 2]);
        assert_eq!(p_w, vec![0, 1, 1]);
        assert_eq!(q.p_stat(&id, 2).unwrap(), Parity::Even);
        assert_eq!(q.n_stat(&w, 3).unwrap_err().code(), "E_POSITION");
    }

    #[test]
    fn b2_graded_dim() {
        let q = b2_query();
        let dim = q.graded_dim();
        assert_eq!(dim.to_string(), "q^8 + 3*p*q^6 + 4*q^4 + 3*p*q^2 + 1");
        assert_eq!(q.graded_dim_z().to_string(), "q^8 + 3*q^6 + 4*q^4 + 3*q^2 + 1");
        assert_eq!(q.ungraded_dim(), BigInt::from(12));
        assert_eq!(q.graded_dim_with(Execution::Sequential), dim);
    }

    #[test]
    fn trivial_cases() {
        let d = b2();
        let lam = DominantWeight(vec![2, 1]);
        let empty = DimensionQuery::diagonal(&d, &lam, &WeightSeq(vec![])).unwrap();
        assert_eq!(empty.graded_dim(), QPiPolynomial::one());
        assert_eq!(empty.ungraded_dim(), BigInt::one());
        let mismatch = DimensionQuery::new(&d, &lam, &WeightSeq(vec![0, 0]), &WeightSeq(vec![0, 1])).unwrap();
        assert!(mismatch.graded_dim().is_zero());
        assert!(mismatch.ungraded_dim().is_zero());
        assert!(DimensionQuery::new(&d, &lam, &WeightSeq(vec![0]), &WeightSeq(vec![])).is_err());
    }

    #[test]
    fn single_odd_label() {
        for ell in 0..6u64 {
            let q = DimensionQuery::odd_nilhecke(1, ell);
            let expected = quantum_bracket(ell as i64, 1, Parity::Odd).shift(ell as i64 - 1, Parity::Even);
            assert_eq!(q.graded_dim(), expected);
        }
    }

    #[test]
    fn odd_nilhecke_small() {
        let q = DimensionQuery::odd_nilhecke(2, 2);
        assert_eq!(q.ungraded_dim(), BigInt::from(4));
        assert_eq!(q.graded_dim().to_string(), "p*q^2 + 2 + p*q^-2");
        assert!(!idempotent_nonzero(
            &CartanSuperdatum::odd_nilhecke(),
            &DominantWeight(vec![2]),
            &WeightSeq(vec![0, 0, 0])
        )
        .unwrap());
    }

    #[test]
    fn nonzero_examples() {
        let d = b2();
        assert!(idempotent_nonzero(&d, &DominantWeight(vec![2, 1]), &WeightSeq(vec![0, 1, 0])).unwrap());
        assert!(idempotent_nonzero(&d, &DominantWeight(vec![0, 3]), &WeightSeq(vec![1])).unwrap());
        assert!(!idempotent_nonzero(&d, &DominantWeight(vec![0, 3]), &WeightSeq(vec![0])).unwrap());
    }

    #[test]
    fn tilde_examples() {
        let d = b2();
        let t = tilde_dims(&d, &DominantWeight(vec![2, 0]), &[0], &Composition::new(vec![2]).unwrap()).unwrap();
        assert_eq!(t.block_values, vec![2]);
        assert_eq!(t.position_values, vec![2, 1]);
        assert_eq!(t.total, BigInt::from(4));
        assert!(t.nonzero);
        let onh = CartanSuperdatum::odd_nilhecke();
        let t = tilde_dims(&onh, &DominantWeight(vec![1]), &[0], &Composition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(t.total, BigInt::one());
        let t = tilde_dims(&onh, &DominantWeight(vec![4]), &[0], &Composition::new(vec![3]).unwrap()).unwrap();
        assert_eq!(t.total, BigInt::from(6 * 4 * 3 * 2));
        assert_eq!(
            tilde_dims(&d, &DominantWeight(vec![1, 1]), &[0, 0], &Composition::new(vec![1, 1]).unwrap())
                .unwrap_err()
                .code(),
            "E_REPEATED_LABELS"
        );
        assert_eq!(
            tilde_dims(&d, &DominantWeight(vec![1, 1]), &[0], &Composition::new(vec![1, 1]).unwrap())
                .unwrap_err()
                .code(),
            "E_COMPOSITION"
        );
    }

    #[test]
    fn dim_table_total() {
        let d = b2();
        let beta = d.parse_root("1:2,2:1").unwrap();
        let table = dim_table(&d, &DominantWeight(vec![2, 1]), &beta, 5000, Execution::default()).unwrap();
        assert_eq!(table.sequences.len(), 3);
        assert_eq!(table.entries[1][1].to_string(), "q^8 + 3*p*q^6 + 4*q^4 + 3*p*q^2 + 1");
        let err = dim_table(&d, &DominantWeight(vec![2, 1]), &beta, 2, Execution::default()).unwrap_err();
        assert_eq!(err.code(), "E_CAP");
    }
}
