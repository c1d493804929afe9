//! Independent evaluation of `e_{nu_1} ... e_{nu_n} f_{nu'_n} ... f_{nu'_1} v_Lambda`
//! in the integrable module `V(Lambda)`, whose scalar is the graded dimension
//! of `e(nu) R^Lambda(beta) e(nu')`.

use std::collections::BTreeMap;

use crate::cartan::{CartanSuperdatum, DominantWeight, WeightSeq};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::qpi::{quantum_bracket, Parity, QPiPolynomial};

/// A linear combination of monomials `f_{j_k} ... f_{j_1} v_Lambda`, keyed by
/// `(j_1, ..., j_k)` (innermost first).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockState {
    amplitudes: BTreeMap<Vec<usize>, QPiPolynomial>,
}

impl FockState {
    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, seq: &[usize]) -> QPiPolynomial {
        self.amplitudes.get(seq).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &QPiPolynomial)> {
        self.amplitudes.iter()
    }

    fn add_term(&mut self, seq: Vec<usize>, coeff: QPiPolynomial) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.amplitudes.entry(seq.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.amplitudes.remove(&seq);
        }
    }
}

/// `f_{nu'_n} ... f_{nu'_1} v_Lambda` with amplitude 1.
pub fn initial_state(nu_prime: &WeightSeq) -> FockState {
    let mut state = FockState::default();
    state.add_term(nu_prime.0.clone(), QPiPolynomial::one());
    state
}

/// Coefficients produced by `e_i` on a single monomial.
fn expand_monomial(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    i: usize,
    seq: &[usize],
    amp: &QPiPolynomial,
) -> Vec<(Vec<usize>, QPiPolynomial)> {
    let d = datum.d(i);
    let parity = datum.parity(i);
    let mut out = Vec::new();
    for (k, &jk) in seq.iter().enumerate() {
        if jk != i {
            continue;
        }
        // <h_i, Lambda - sum_{l<k} alpha_{j_l}>
        let x = weight.get(i) as i64 - seq[..k].iter().map(|&j| datum.entry(i, j)).sum::<i64>();
        let later_a: i64 = seq[k + 1..].iter().map(|&j| datum.entry(i, j)).sum();
        let later_p = seq[k + 1..]
            .iter()
            .fold(Parity::Even, |acc, &j| acc + datum.parity(j));
        let coeff = quantum_bracket(x, d, parity)
            .shift(i64::from(d) * (x - 1 - later_a), parity * later_p);
        if coeff.is_zero() {
            continue;
        }
        let mut rest = seq.to_vec();
        rest.remove(k);
        out.push((rest, &coeff * amp));
    }
    out
}

/// Apply `e_i`; monomials with no `f_i` are killed.
pub fn apply_e(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    i: usize,
    state: &FockState,
) -> Result<FockState> {
    apply_e_with(datum, weight, i, state, Execution::default())
}

pub fn apply_e_with(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    i: usize,
    state: &FockState,
    exec: Execution,
) -> Result<FockState> {
    if i >= datum.rank() {
        return Err(Error::UnknownLabel(i.to_string()));
    }
    if weight.0.len() != datum.rank() {
        return Err(Error::MalformedQuery("weight length differs from rank".into()));
    }
    let items: Vec<(&Vec<usize>, &QPiPolynomial)> = state.amplitudes.iter().collect();
    let pieces = exec::map_collect(exec, &items, |(seq, amp)| {
        expand_monomial(datum, weight, i, seq, amp)
    });
    let mut next = FockState::default();
    for (seq, coeff) in pieces.into_iter().flatten() {
        next.add_term(seq, coeff);
    }
    Ok(next)
}

/// Apply `e_{nu_n}`, then `e_{nu_{n-1}}`, ..., then `e_{nu_1}` to the initial
/// state of `nu'` and read off the coefficient of `v_Lambda`.
pub fn oracle_dim(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    nu: &WeightSeq,
    nu_prime: &WeightSeq,
) -> Result<QPiPolynomial> {
    oracle_dim_with(datum, weight, nu, nu_prime, Execution::default())
}

pub fn oracle_dim_with(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    nu: &WeightSeq,
    nu_prime: &WeightSeq,
    exec: Execution,
) -> Result<QPiPolynomial> {
    if nu.len() != nu_prime.len() {
        return Err(Error::MalformedQuery(format!(
            "nu has length {} but nu' has length {}",
            nu.len(),
            nu_prime.len()
        )));
    }
    let mut state = initial_state(nu_prime);
    for &i in nu.0.iter().rev() {
        state = apply_e_with(datum, weight, i, &state, exec)?;
    }
    if let Some((seq, _)) = state.amplitudes.iter().find(|(k, _)| !k.is_empty()) {
        return Err(Error::Internal(format!(
            "oracle left a nonempty monomial {seq:?}"
        )));
    }
    Ok(state.amplitude(&[]))
}
