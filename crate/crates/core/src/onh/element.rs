//! Elements of the odd nilHecke algebra `ONH_n` in PBW normal form
//! `sum c x^a tau_w`, and multiplication in the free algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::skew::{add_exponents, product_sign, render_monomial, render_sum, signed, SkewPolynomial};
use super::tau::{tau_table, TauTable};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Terms are keyed by `(w, a)` so iteration follows `(w one-line, exponents)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OnhElement {
    n: usize,
    terms: BTreeMap<(Permutation, Vec<u32>), BigRational>,
}

impl OnhElement {
    pub fn zero(n: usize) -> Self {
        OnhElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], Permutation::identity(n), BigRational::one())
    }

    pub fn scalar(n: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; n], Permutation::identity(n), c)
    }

    /// `c x^a tau_w`.
    pub fn monomial(exps: Vec<u32>, w: Permutation, c: BigRational) -> Self {
        let mut e = Self::zero(exps.len());
        e.add_term(w, exps, c);
        e
    }

    pub fn from_skew(p: &SkewPolynomial) -> Self {
        let mut e = Self::zero(p.rank());
        for (a, c) in p.terms() {
            e.add_term(Permutation::identity(p.rank()), a.clone(), c.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(w, a, c)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Vec<u32>, &BigRational)> {
        self.terms.iter().map(|((w, a), c)| (w, a, c))
    }

    pub fn coefficient(&self, exps: &[u32], w: &Permutation) -> BigRational {
        self.terms
            .get(&(w.clone(), exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: Permutation, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (w, exps);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &OnhElement, c: &BigRational) {
        for ((w, a), v) in &other.terms {
            self.add_term(w.clone(), a.clone(), v * c);
        }
    }

    pub fn add(&self, other: &OnhElement) -> OnhElement {
        let mut out = self.clone();
        out.add_scaled(other, &BigRational::one());
        out
    }

    pub fn sub(&self, other: &OnhElement) -> OnhElement {
        let mut out = self.clone();
        out.add_scaled(other, &-BigRational::one());
        out
    }

    pub fn scale(&self, c: &BigRational) -> OnhElement {
        let mut out = OnhElement::zero(self.n);
        out.add_scaled(self, c);
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&BigRational) -> BigRational) -> OnhElement {
        let mut out = OnhElement::zero(self.n);
        for ((w, a), c) in &self.terms {
            out.add_term(w.clone(), a.clone(), f(c));
        }
        out
    }

    /// `(deg, parity bit)` of each term: `deg x = 2`, `deg tau = -2`, all odd.
    pub fn term_degrees(&self) -> Vec<(i64, u64)> {
        self.terms
            .keys()
            .map(|(w, a)| {
                let k: u64 = a.iter().map(|&e| u64::from(e)).sum();
                let l = w.length() as u64;
                (2 * k as i64 - 2 * l as i64, (k + l) % 2)
            })
            .collect()
    }
}

impl fmt::Display for OnhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|((w, a), _)| (w, a.iter().sum::<u32>(), std::cmp::Reverse(a)));
        render_sum(
            f,
            sorted.into_iter().map(|((w, a), c)| {
                let mut factors = render_monomial(a);
                let word = w.min_reduced_word();
                if !word.is_empty() {
                    let letters: Vec<String> = word.iter().map(|i| i.to_string()).collect();
                    factors.push(format!("t[{}]", letters.join(",")));
                }
                (factors, c)
            }),
        )
    }
}

type PushResult = (SkewPolynomial, SkewPolynomial);

/// The free odd nilHecke algebra `ONH_n`.
#[derive(Debug)]
pub struct OnhAlgebra {
    n: usize,
    table: &'static TauTable,
    push_cache: Mutex<HashMap<(usize, Vec<u32>), PushResult>>,
}

impl OnhAlgebra {
    pub fn new(n: usize) -> Result<Self> {
        Ok(OnhAlgebra {
            n,
            table: tau_table(n)?,
            push_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &'static TauTable {
        self.table
    }

    fn check(&self, e: &OnhElement) -> Result<()> {
        if e.n != self.n {
            return Err(Error::RankMismatch(e.n, self.n));
        }
        Ok(())
    }

    pub fn x(&self, k: usize) -> Result<OnhElement> {
        if k == 0 || k > self.n {
            return Err(Error::GeneratorOutOfRange { index: k, n: self.n });
        }
        Ok(OnhElement::from_skew(&SkewPolynomial::var(self.n, k)))
    }

    pub fn tau(&self, i: usize) -> Result<OnhElement> {
        Ok(OnhElement::monomial(
            vec![0; self.n],
            Permutation::simple(self.n, i)?,
            BigRational::one(),
        ))
    }

    /// `tau` of an arbitrary word, reduced to `0` or `+- tau_w`.
    pub fn tau_word(&self, word: &[usize]) -> Result<OnhElement> {
        Ok(match self.table.reduce_word(word)? {
            None => OnhElement::zero(self.n),
            Some((s, idx)) => OnhElement::monomial(
                vec![0; self.n],
                self.table.perm(idx).clone(),
                BigRational::from_integer(s.into()),
            ),
        })
    }

    /// `tau_i x^t = A + B tau_i`.
    pub fn push_tau(&self, i: usize, t: &[u32]) -> (SkewPolynomial, SkewPolynomial) {
        if let Some(hit) = self.push_cache.lock().expect("cache lock").get(&(i, t.to_vec())) {
            return hit.clone();
        }
        let n = self.n;
        let out = match t.iter().position(|&e| e > 0) {
            None => (SkewPolynomial::zero(n), SkewPolynomial::one(n)),
            Some(j) => {
                // tau_i x_j = c - x_{s(j)} tau_i, then recurse on the rest.
                let mut rest = t.to_vec();
                rest[j] -= 1;
                let (a, b) = self.push_tau(i, &rest);
                let (c, image) = if j + 1 == i {
                    (true, i + 1)
                } else if j == i {
                    (true, i)
                } else {
                    (false, j + 1)
                };
                let mut new_a = a.lmul_var(image).neg();
                if c {
                    new_a = new_a.add(&SkewPolynomial::monomial(rest, BigRational::one()));
                }
                (new_a, b.lmul_var(image).neg())
            }
        };
        self.push_cache
            .lock()
            .expect("cache lock")
            .insert((i, t.to_vec()), out.clone());
        out
    }

    /// `tau_i * e`.
    pub fn lmul_tau(&self, i: usize, e: &OnhElement) -> Result<OnhElement> {
        self.check(e)?;
        if i == 0 || i >= self.n {
            return Err(Error::GeneratorOutOfRange { index: i, n: self.n });
        }
        let mut out = OnhElement::zero(self.n);
        for ((w, t), c) in &e.terms {
            let (a, b) = self.push_tau(i, t);
            for (s, v) in a.terms() {
                out.add_term(w.clone(), s.clone(), v * c);
            }
            let idx = self.table.index_of(w);
            if let Some((sign, target)) = self.table.left_mul(i, idx) {
                let perm = self.table.perm(target);
                for (s, v) in b.terms() {
                    out.add_term(perm.clone(), s.clone(), signed(&(v * c), sign < 0));
                }
            }
        }
        Ok(out)
    }

    /// `c x^a * e`.
    pub fn lmul_monomial(&self, a: &[u32], c: &BigRational, e: &OnhElement) -> OnhElement {
        let mut out = OnhElement::zero(self.n);
        for ((w, t), v) in &e.terms {
            out.add_term(w.clone(), add_exponents(a, t), signed(&(v * c), product_sign(a, t)));
        }
        out
    }

    /// `e * tau_w`.
    pub fn rmul_tau_perm(&self, e: &OnhElement, w: &Permutation) -> OnhElement {
        let right = self.table.index_of(w);
        let mut out = OnhElement::zero(self.n);
        for ((u, t), c) in &e.terms {
            if let Some((sign, target)) = self.table.mul(self.table.index_of(u), right) {
                out.add_term(self.table.perm(target).clone(), t.clone(), signed(c, sign < 0));
            }
        }
        out
    }

    /// Product in `ONH_n`, returned in normal form.
    pub fn multiply_free(&self, a: &OnhElement, b: &OnhElement) -> Result<OnhElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = OnhElement::zero(self.n);
        for ((w, exps), c) in &a.terms {
            let mut cur = b.clone();
            for &i in self.table.word(self.table.index_of(w)).iter().rev() {
                cur = self.lmul_tau(i, &cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            let part = self.lmul_monomial(exps, c, &cur);
            out.add_scaled(&part, &BigRational::one());
        }
        Ok(out)
    }
}
