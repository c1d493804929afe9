//! Skew polynomials: `x_i x_j = -x_j x_i` for `i != j`, stored on
//! canonically ordered monomials `x_1^{a_1} ... x_n^{a_n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `(-1)^{sum_k t_k sum_{j>k} a_j}`: the sign of `x^a x^t = +- x^{a+t}`.
pub fn product_sign(a: &[u32], t: &[u32]) -> bool {
    let mut later = 0u64;
    let mut odd = false;
    for k in (0..a.len()).rev() {
        if (t[k] as u64 * later) % 2 == 1 {
            odd = !odd;
        }
        later += a[k] as u64;
    }
    odd
}

pub(crate) fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn signed(c: &BigRational, negate: bool) -> BigRational {
    if negate {
        -c.clone()
    } else {
        c.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewPolynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SkewPolynomial {
    pub fn zero(n: usize) -> Self {
        SkewPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, coeff: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    /// `x_k`, 1-based.
    pub fn var(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k - 1] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SkewPolynomial {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> SkewPolynomial {
        self.scale(&-BigRational::one())
    }

    /// `self * other`.
    pub fn mul(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (t, ct) in &other.terms {
                out.add_term(add_exponents(a, t), signed(&(ca * ct), product_sign(a, t)));
            }
        }
        out
    }

    /// `x_k * self`, 1-based.
    pub fn lmul_var(&self, k: usize) -> SkewPolynomial {
        let mut out = Self::zero(self.n);
        for (t, c) in &self.terms {
            let before: u32 = t[..k - 1].iter().sum();
            let mut e = t.clone();
            e[k - 1] += 1;
            out.add_term(e, signed(c, before % 2 == 1));
        }
        out
    }

    /// Largest exponent of `x_k` among the terms, 1-based.
    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[k - 1]).max()
    }
}

/// Factors of a monomial; empty for `1`.
pub(crate) fn render_monomial(exps: &[u32]) -> Vec<String> {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) })
        .collect()
}

/// Write `terms` as `c*m + ...` with signs folded into the separators.
pub(crate) fn render_sum<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Vec<String>, &'a BigRational)>,
) -> fmt::Result {
    let mut first = true;
    for (factors, c) in terms {
        let negative = c.is_negative();
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let abs = c.abs();
        let mut parts = factors;
        if !abs.is_one() || parts.is_empty() {
            parts.insert(0, abs.to_string());
        }
        write!(f, "{}", parts.join("*"))?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), std::cmp::Reverse(*e)));
        render_sum(f, sorted.into_iter().map(|(e, c)| (render_monomial(e), c)))
    }
}
