//! The cyclotomic quotient `ONH_n^ell = ONH_n / <x_1^ell>`: annihilator
//! families, reduction onto the monomial basis, and multiplication.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::element::{OnhAlgebra, OnhElement};
use super::skew::{add_exponents, product_sign, signed, SkewPolynomial};
use crate::basis::{graded_census, onh_basis};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::perm::Permutation;
use crate::qpi::QPiPolynomial;

/// Upper bound on rewrite steps for a single reduction.
const STEP_LIMIT: usize = 5_000_000;

/// Coefficient domain for the quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Scalars {
    #[default]
    Rationals,
    /// `F_p` for an odd prime `p`.
    PrimeField(u64),
}

impl Scalars {
    pub fn prime(p: u64) -> Result<Self> {
        let is_prime = p > 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !is_prime {
            return Err(Error::MalformedQuery(format!("{p} is not an odd prime")));
        }
        Ok(Scalars::PrimeField(p))
    }

    /// Canonical representative: the rational itself, or an integer in `[0, p)`.
    pub fn normalize(&self, c: &BigRational) -> Result<BigRational> {
        match *self {
            Scalars::Rationals => Ok(c.clone()),
            Scalars::PrimeField(p) => {
                let p = BigInt::from(p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::Internal(format!("coefficient {c} has denominator divisible by {p}")));
                }
                let inv = den.modpow(&(&p - 2u32), &p);
                let v = (c.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(BigRational::from_integer(v))
            }
        }
    }

    pub fn normalize_element(&self, e: &OnhElement) -> Result<OnhElement> {
        if *self == Scalars::Rationals {
            return Ok(e.clone());
        }
        let mut out = OnhElement::zero(e.rank());
        for (w, a, c) in e.terms() {
            out.add_term(w.clone(), a.clone(), self.normalize(c)?);
        }
        Ok(out)
    }
}

/// Annihilator family at level `k`: `families[k][e]` is `g_{e,k+1}`, where bit
/// `j-1` of the index `e` records whether `tau_j` occurs in
/// `tau_{S_k^e} = tau_k^{e_k} ... tau_1^{e_1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilators {
    pub n: usize,
    pub ell: usize,
    pub families: Vec<Vec<SkewPolynomial>>,
}

impl Annihilators {
    /// The word `S_k^e`.
    pub fn word(k: usize, e: usize) -> Vec<usize> {
        (1..=k).rev().filter(|&j| e >> (j - 1) & 1 == 1).collect()
    }

    /// `(g_{e,k+1}, S_k^e)` pairs at level `k`.
    pub fn level(&self, k: usize) -> impl Iterator<Item = (&SkewPolynomial, Vec<usize>)> {
        self.families[k]
            .iter()
            .enumerate()
            .map(move |(e, g)| (g, Self::word(k, e)))
    }
}

/// Build `g_{e,k+1}` for `1 <= k < n` by pushing `tau_{k+1}` through the
/// previous level, starting from `x_1^ell` at level `0`.
pub fn annihilators(alg: &OnhAlgebra, ell: usize) -> Result<Annihilators> {
    let n = alg.rank();
    if ell < n {
        return Err(Error::LevelTooSmall { n, ell });
    }
    let mut start = vec![0u32; n];
    if n > 0 {
        start[0] = ell as u32;
    }
    let mut families = vec![vec![SkewPolynomial::monomial(start, BigRational::one())]];
    for k in 1..n {
        let prev = &families[k - 1];
        let mut next = vec![SkewPolynomial::zero(n); prev.len() * 2];
        for (e, g) in prev.iter().enumerate() {
            for (t, c) in g.terms() {
                let (a, b) = alg.push_tau(k, t);
                next[e] = next[e].add(&a.scale(c));
                next[e | 1 << (k - 1)] = next[e | 1 << (k - 1)].add(&b.scale(c));
            }
        }
        families.push(next);
    }
    Ok(Annihilators { n, ell, families })
}

/// `ONH_n^ell` with reduction onto `{ x^k tau_w : k_i <= ell - i }`.
#[derive(Debug)]
pub struct CyclotomicOnh {
    alg: OnhAlgebra,
    ell: usize,
    scalars: Scalars,
    annihilators: Annihilators,
    // rhs[m - 1] rewrites x_m^{ell - m + 1}
    rhs: Vec<OnhElement>,
    cache: Mutex<HashMap<(usize, Vec<u32>), OnhElement>>,
}

impl CyclotomicOnh {
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        Self::with_scalars(n, ell, Scalars::Rationals)
    }

    pub fn with_scalars(n: usize, ell: usize, scalars: Scalars) -> Result<Self> {
        if ell < n {
            return Err(Error::LevelTooSmall { n, ell });
        }
        let alg = OnhAlgebra::new(n)?;
        let annihilators = annihilators(&alg, ell)?;
        let rhs = (1..=n)
            .map(|m| rewrite_rule(&alg, &annihilators, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicOnh {
            alg,
            ell,
            scalars,
            annihilators,
            rhs,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.alg.rank()
    }

    pub fn level(&self) -> usize {
        self.ell
    }

    pub fn scalars(&self) -> Scalars {
        self.scalars
    }

    pub fn algebra(&self) -> &OnhAlgebra {
        &self.alg
    }

    pub fn annihilators(&self) -> &Annihilators {
        &self.annihilators
    }

    /// The relation used to rewrite `x_m^{ell-m+1}`.
    pub fn rewrite_rule(&self, m: usize) -> &OnhElement {
        &self.rhs[m - 1]
    }

    /// Whether `x^k tau_w` satisfies `k_i <= ell - i`.
    pub fn in_basis_range(&self, exps: &[u32]) -> bool {
        exps.iter()
            .enumerate()
            .all(|(i, &k)| (k as usize) + i < self.ell)
    }

    /// Expansion in the monomial basis.
    pub fn reduce(&self, a: &OnhElement) -> Result<OnhElement> {
        if a.rank() != self.rank() {
            return Err(Error::RankMismatch(a.rank(), self.rank()));
        }
        let n = self.rank();
        let mut out = OnhElement::zero(n);
        for (w, t, c) in a.terms() {
            let c = self.scalars.normalize(c)?;
            let part = self.reduce_monomial(t, w)?;
            out.add_scaled(&part, &c);
        }
        self.scalars.normalize_element(&out)
    }

    fn reduce_monomial(&self, t: &[u32], w: &Permutation) -> Result<OnhElement> {
        let idx = self.alg.table().index_of(w);
        let key = (idx, t.to_vec());
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let mut memo = HashMap::new();
        let mut steps = 0usize;
        let out = self.reduce_upto(self.rank(), t, idx, &mut memo, &mut steps)?;
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    /// Reduce `x^t tau_w` where `t` only involves `x_1..x_m`.
    fn reduce_upto(
        &self,
        m: usize,
        t: &[u32],
        w: usize,
        memo: &mut HashMap<(usize, Vec<u32>, usize), OnhElement>,
        steps: &mut usize,
    ) -> Result<OnhElement> {
        *steps += 1;
        if *steps > STEP_LIMIT {
            return Err(Error::GuardTripped(format!(
                "reduction exceeded {STEP_LIMIT} rewrite steps"
            )));
        }
        let n = self.rank();
        let table = self.alg.table();
        if m == 0 {
            return Ok(OnhElement::monomial(t.to_vec(), table.perm(w).clone(), BigRational::one()));
        }
        let key = (m, t.to_vec(), w);
        if let Some(hit) = memo.get(&key) {
            return Ok(hit.clone());
        }
        let bound = (self.ell + 1 - m) as u32;
        let tm = t[m - 1];
        let mut out = OnhElement::zero(n);
        if tm < bound {
            let mut lower = t.to_vec();
            lower[m - 1] = 0;
            let lower_deg: u32 = lower.iter().sum();
            let reduced = self.reduce_upto(m - 1, &lower, w, memo, steps)?;
            for (u, k, c) in reduced.terms() {
                let k_deg: u32 = k.iter().sum();
                let mut e = k.clone();
                e[m - 1] = tm;
                out.add_term(u.clone(), e, signed(c, (tm * (lower_deg + k_deg)) % 2 == 1));
            }
        } else {
            let mut prefix = t.to_vec();
            prefix[m - 1] -= bound;
            for (u, s, c) in self.rhs[m - 1].terms() {
                let Some((sign, target)) = table.mul(table.index_of(u), w) else {
                    continue;
                };
                let exps = add_exponents(&prefix, s);
                let negate = product_sign(&prefix, s) != (sign < 0);
                let part = self.reduce_upto(m, &exps, target, memo, steps)?;
                out.add_scaled(&part, &signed(c, negate));
            }
        }
        memo.insert(key, out.clone());
        Ok(out)
    }

    /// `a * b` in `ONH_n^ell`, reduced.
    pub fn multiply(&self, a: &OnhElement, b: &OnhElement) -> Result<OnhElement> {
        let prod = self.alg.multiply_free(a, b)?;
        self.reduce(&prod)
    }

    /// The monomial basis as algebra elements, in basis-label order.
    pub fn basis(&self) -> Vec<OnhElement> {
        onh_basis(self.rank(), self.ell)
            .into_iter()
            .map(|l| {
                OnhElement::monomial(
                    l.exponents.iter().map(|&e| e as u32).collect(),
                    l.perm,
                    BigRational::one(),
                )
            })
            .collect()
    }

    /// Products of every ordered pair of basis elements.
    pub fn structure_table(&self, exec: Execution) -> Result<StructureTable> {
        let basis = self.basis();
        let size = basis.len();
        let pairs: Vec<(usize, usize)> = (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).collect();
        let products = exec::try_map_collect(exec, &pairs, |&(a, b)| self.multiply(&basis[a], &basis[b]))?;
        let mut index = HashMap::new();
        for (k, e) in basis.iter().enumerate() {
            let (w, a, _) = e.terms().next().expect("basis monomial");
            index.insert((w.clone(), a.clone()), k);
        }
        let mut entries = Vec::with_capacity(size);
        let mut it = products.into_iter();
        for _ in 0..size {
            entries.push(it.by_ref().take(size).collect());
        }
        Ok(StructureTable {
            n: self.rank(),
            basis,
            index,
            entries,
            scalars: self.scalars,
        })
    }

    /// `sum q^{2|k| - 2 l(w)} pi^{|k| + l(w)}` over the monomial basis.
    pub fn graded_super_dimension(&self) -> QPiPolynomial {
        graded_census(&onh_basis(self.rank(), self.ell))
    }
}

/// Solve the level-`m-1` relation for `x_m^{ell-m+1}`.
fn rewrite_rule(alg: &OnhAlgebra, ann: &Annihilators, m: usize) -> Result<OnhElement> {
    let n = alg.rank();
    if m == 1 {
        return Ok(OnhElement::zero(n));
    }
    let k = m - 1;
    let power = (ann.ell - k) as u32;
    let mut lead = vec![0u32; n];
    lead[m - 1] = power;
    let g0 = &ann.families[k][0];
    let c = g0.coefficient(&lead);
    if c.is_zero() || g0.terms().any(|(e, _)| e[m - 1] >= power && *e != lead) {
        return Err(Error::Internal(format!("annihilator g_(0,{m}) has no invertible leading term")));
    }
    let mut rel = OnhElement::from_skew(&g0.add(&SkewPolynomial::monomial(lead, -c.clone())));
    for (g, word) in ann.level(k).skip(1) {
        let tau = alg.tau_word(&word)?;
        rel = rel.add(&alg.multiply_free(&OnhElement::from_skew(g), &tau)?);
    }
    Ok(rel.scale(&(-c.recip())))
}

/// `(basis index, coefficient)` pairs of one product.
pub type SparseRow = Vec<(usize, i64)>;

/// Multiplication table of the monomial basis.
#[derive(Clone, Debug)]
pub struct StructureTable {
    n: usize,
    basis: Vec<OnhElement>,
    index: HashMap<(Permutation, Vec<u32>), usize>,
    entries: Vec<Vec<OnhElement>>,
    scalars: Scalars,
}

impl StructureTable {
    pub fn basis(&self) -> &[OnhElement] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `b_a * b_b`.
    pub fn entry(&self, a: usize, b: usize) -> &OnhElement {
        &self.entries[a][b]
    }

    fn coordinates(&self, x: &OnhElement) -> Result<Vec<(usize, BigRational)>> {
        x.terms()
            .map(|(w, a, c)| {
                self.index
                    .get(&(w.clone(), a.clone()))
                    .map(|&k| (k, c.clone()))
                    .ok_or_else(|| Error::Internal(format!("{x} is not in the span of the basis")))
            })
            .collect()
    }

    /// Bilinear extension of the table.
    pub fn product(&self, x: &OnhElement, y: &OnhElement) -> Result<OnhElement> {
        let mut out = OnhElement::zero(self.n);
        for (a, ca) in self.coordinates(x)? {
            for (b, cb) in self.coordinates(y)? {
                out.add_scaled(&self.entries[a][b], &(&ca * &cb));
            }
        }
        self.scalars.normalize_element(&out)
    }

    /// Triples `(a, b, c)` with `(b_a b_b) b_c != b_a (b_b b_c)`.
    pub fn associativity_defects(&self, exec: Execution) -> Result<Vec<(usize, usize, usize)>> {
        let size = self.len();
        let triples: Vec<(usize, usize, usize)> = (0..size)
            .flat_map(|a| (0..size).flat_map(move |b| (0..size).map(move |c| (a, b, c))))
            .collect();
        let flags = exec::try_map_collect(exec, &triples, |&(a, b, c)| {
            let left = self.product(&self.entries[a][b], &self.basis[c])?;
            let right = self.product(&self.basis[a], &self.entries[b][c])?;
            Ok::<bool, Error>(left != right)
        })?;
        Ok(triples
            .into_iter()
            .zip(flags)
            .filter_map(|(t, bad)| bad.then_some(t))
            .collect())
    }

    /// Integer structure constants, when every coefficient is integral.
    pub fn integral_entries(&self) -> Option<Vec<Vec<SparseRow>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        self.coordinates(e).ok()?.into_iter().map(|(k, c)| {
                            if c.is_integer() && c.abs() < BigRational::from_integer(i64::MAX.into()) {
                                c.to_integer().to_i64().map(|v| (k, v))
                            } else {
                                None
                            }
                        })
                        .collect()
                    })
                    .collect()
            })
            .collect()
    }
}
