//! Exact arithmetic in `Z[q, q^-1][pi] / (pi^2 - 1)`.
//!
//! A [`QPiPolynomial`] records a `(Z x Z2)`-graded dimension: the coefficient
//! of `q^a` in the even slot counts degree-`a` even vectors, the coefficient
//! in the odd slot (written `p` in text output) counts odd ones.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

/// A `Z2` degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u64) -> Self {
        if bit.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `self * k` in `Z2`.
    pub fn times(self, k: i64) -> Parity {
        Parity::from_bit(self.bit() * k.unsigned_abs())
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl AddAssign for Parity {
    fn add_assign(&mut self, rhs: Parity) {
        *self = *self + rhs;
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() * rhs.bit())
    }
}

/// Element of `Z[q^{+-1}][pi]/(pi^2-1)` with arbitrary-precision coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPiPolynomial {
    // key: (q exponent, pi parity); zero coefficients are never stored
    terms: BTreeMap<(i64, Parity), BigInt>,
}

impl QPiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, Parity::Even)
    }

    /// `pi`
    pub fn pi() -> Self {
        Self::monomial(1, 0, Parity::Odd)
    }

    /// `coeff * pi^parity * q^exp`
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64, parity: Parity) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, parity, coeff.into());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: i64, parity: Parity) -> BigInt {
        self.terms
            .get(&(exp, parity))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exp: i64, parity: Parity, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (exp, parity);
        let remove = match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                c.is_zero()
            }
            None => {
                self.terms.insert(key, coeff);
                false
            }
        };
        if remove {
            self.terms.remove(&key);
        }
    }

    /// Terms in canonical order: descending q-exponent, even slot before odd.
    pub fn terms(&self) -> Vec<(i64, Parity, &BigInt)> {
        let mut out: Vec<_> = self.terms.iter().map(|(&(e, p), c)| (e, p, c)).collect();
        out.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        out
    }

    /// Multiply by `pi^parity * q^exp`.
    pub fn shift(&self, exp: i64, parity: Parity) -> Self {
        QPiPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(e, p), c)| ((e + exp, p + parity), c.clone()))
                .collect(),
        }
    }

    /// Substitute `pi -> 1`.
    pub fn specialize_pi_one(&self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&(e, _), c) in &self.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    /// Substitute `q -> 1, pi -> 1`.
    pub fn specialize_total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn has_odd_terms(&self) -> bool {
        self.terms.keys().any(|&(_, p)| p.is_odd())
    }

    /// `{"terms":[{"q":8,"even":1,"odd":0},...]}`, descending in `q`.
    pub fn to_json(&self) -> Value {
        let mut by_exp: BTreeMap<i64, (BigInt, BigInt)> = BTreeMap::new();
        for (&(e, p), c) in &self.terms {
            let slot = by_exp.entry(e).or_default();
            match p {
                Parity::Even => slot.0 += c,
                Parity::Odd => slot.1 += c,
            }
        }
        let terms: Vec<Value> = by_exp
            .iter()
            .rev()
            .map(|(e, (even, odd))| json!({"q": e, "even": big_to_json(even), "odd": big_to_json(odd)}))
            .collect();
        json!({ "terms": terms })
    }
}

/// JSON number for an arbitrary-precision integer.
pub fn big_to_json(n: &BigInt) -> Value {
    let number: serde_json::Number =
        serde_json::from_str(&n.to_string()).expect("integer literal is valid JSON");
    Value::Number(number)
}

/// Super quantum integer `[m]^pi` for `q_i = q^d`, `pi_i = pi^parity`.
///
/// For `m >= 0` this is `sum_{k=0}^{m-1} pi_i^{m-1-k} q_i^{m-1-2k}`; negative
/// arguments use `[-m] = -pi_i^m [m]`.
pub fn quantum_bracket(m: i64, d: u32, parity: Parity) -> QPiPolynomial {
    let d = i64::from(d);
    let mut out = QPiPolynomial::zero();
    let k_total = m.unsigned_abs() as i64;
    for k in 0..k_total {
        let exp = d * (k_total - 1 - 2 * k);
        out.add_term(exp, parity.times(k_total - 1 - k), BigInt::one());
    }
    if m < 0 {
        out = -out.shift(0, parity.times(k_total));
    }
    out
}

impl Add for &QPiPolynomial {
    type Output = QPiPolynomial;
    fn add(self, rhs: &QPiPolynomial) -> QPiPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QPiPolynomial {
    type Output = QPiPolynomial;
    fn add(mut self, rhs: QPiPolynomial) -> QPiPolynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&QPiPolynomial> for QPiPolynomial {
    fn add_assign(&mut self, rhs: &QPiPolynomial) {
        for (&(e, p), c) in &rhs.terms {
            self.add_term(e, p, c.clone());
        }
    }
}

impl AddAssign for QPiPolynomial {
    fn add_assign(&mut self, rhs: QPiPolynomial) {
        for ((e, p), c) in rhs.terms {
            self.add_term(e, p, c);
        }
    }
}

impl Neg for QPiPolynomial {
    type Output = QPiPolynomial;
    fn neg(mut self) -> QPiPolynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for &QPiPolynomial {
    type Output = QPiPolynomial;
    fn sub(self, rhs: &QPiPolynomial) -> QPiPolynomial {
        self + &(-rhs.clone())
    }
}

impl Sub for QPiPolynomial {
    type Output = QPiPolynomial;
    fn sub(self, rhs: QPiPolynomial) -> QPiPolynomial {
        self + (-rhs)
    }
}

impl Mul for &QPiPolynomial {
    type Output = QPiPolynomial;
    fn mul(self, rhs: &QPiPolynomial) -> QPiPolynomial {
        let mut out = QPiPolynomial::zero();
        for (&(e1, p1), c1) in &self.terms {
            for (&(e2, p2), c2) in &rhs.terms {
                out.add_term(e1 + e2, p1 + p2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for QPiPolynomial {
    type Output = QPiPolynomial;
    fn mul(self, rhs: QPiPolynomial) -> QPiPolynomial {
        &self * &rhs
    }
}

impl std::iter::Sum for QPiPolynomial {
    fn sum<I: Iterator<Item = QPiPolynomial>>(iter: I) -> Self {
        iter.fold(QPiPolynomial::zero(), |acc, x| acc + x)
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &BigInt,
    parity: Parity,
    exp: i64,
) -> fmt::Result {
    let negative = coeff.is_negative();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let abs = coeff.abs();
    let mut factors: Vec<String> = Vec::new();
    if parity.is_odd() {
        factors.push("p".into());
    }
    match exp {
        0 => {}
        1 => factors.push("q".into()),
        e => factors.push(format!("q^{e}")),
    }
    if !abs.is_one() || factors.is_empty() {
        factors.insert(0, abs.to_string());
    }
    write!(f, "{}", factors.join("*"))
}

impl fmt::Display for QPiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exp, parity, coeff)) in self.terms().into_iter().enumerate() {
            write_term(f, idx == 0, coeff, parity, exp)?;
        }
        Ok(())
    }
}

/// Element of `Z[q, q^-1]`; the image of a [`QPiPolynomial`] under `pi -> 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, BigInt::from(c));
        }
        out
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().rev().map(|(&e, c)| (e, c))
    }

    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({"q": e, "coeff": big_to_json(c)}))
            .collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exp, coeff)) in self.terms().enumerate() {
            write_term(f, idx == 0, coeff, Parity::Even, exp)?;
        }
        Ok(())
    }
}
