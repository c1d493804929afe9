//! Cartan superdata and the pairings every dimension formula consumes.
//!
//! Weights are modelled only through their coroot pairings `<h_i, Lambda>`;
//! labels are kept as strings and their order fixes every serialization order.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpi::Parity;

/// Unvalidated datum as read from a JSON config file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanConfig {
    pub labels: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
    pub parity: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<u32>>,
}

impl CartanConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("cartan config: {e}")))
    }

    pub fn validate(&self) -> Result<(CartanSuperdatum, ValidationReport)> {
        let parity = self
            .parity
            .iter()
            .map(|p| match p.as_str() {
                "even" | "0" => Ok(Parity::Even),
                "odd" | "1" => Ok(Parity::Odd),
                other => Err(Error::Parse(format!("parity must be \"even\" or \"odd\", got {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        CartanSuperdatum::with_report(
            self.labels.clone(),
            self.cartan.clone(),
            parity,
            self.symmetrizer.clone(),
        )
    }
}

/// Outcome of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub symmetrizer: Vec<u32>,
    /// `true` when the symmetrizer was not supplied and had to be solved for.
    pub symmetrizer_computed: bool,
}

/// A validated Cartan superdatum `(A, P, Pi, Pi^vee)` with its parity split
/// and symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSuperdatum {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
    parity: Vec<Parity>,
    symmetrizer: Vec<u32>,
}

impl CartanSuperdatum {
    pub fn new(
        labels: Vec<String>,
        matrix: Vec<Vec<i64>>,
        parity: Vec<Parity>,
        symmetrizer: Option<Vec<u32>>,
    ) -> Result<Self> {
        Self::with_report(labels, matrix, parity, symmetrizer).map(|(d, _)| d)
    }

    /// Validate and also report how the symmetrizer was obtained.
    pub fn with_report(
        labels: Vec<String>,
        matrix: Vec<Vec<i64>>,
        parity: Vec<Parity>,
        symmetrizer: Option<Vec<u32>>,
    ) -> Result<(Self, ValidationReport)> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::MalformedDatum("empty index set".into()));
        }
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedDatum(format!("cartan matrix must be {n}x{n}")));
        }
        if parity.len() != n {
            return Err(Error::MalformedDatum(format!("expected {n} parities, got {}", parity.len())));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains([',', ':', ' ']) {
                return Err(Error::MalformedDatum(format!("label {l:?} must be nonempty without ',', ':' or spaces")));
            }
            if labels[..i].contains(l) {
                return Err(Error::MalformedDatum(format!("duplicate label {l:?}")));
            }
        }
        check_cartan(&labels, &matrix)?;
        let (symmetrizer, computed) = match symmetrizer {
            Some(d) => {
                check_symmetrizer(&labels, &matrix, &d)?;
                (d, false)
            }
            None => (solve_symmetrizer(&labels, &matrix)?, true),
        };
        for i in 0..n {
            if parity[i].is_odd() {
                if let Some(j) = (0..n).find(|&j| matrix[i][j] % 2 != 0) {
                    return Err(Error::ParityViolation {
                        label: labels[i].clone(),
                        column: labels[j].clone(),
                        entry: matrix[i][j],
                    });
                }
            }
        }
        let report = ValidationReport {
            symmetrizer: symmetrizer.clone(),
            symmetrizer_computed: computed,
        };
        Ok((
            CartanSuperdatum {
                labels,
                matrix,
                parity,
                symmetrizer,
            },
            report,
        ))
    }

    /// The single odd vertex with `d = 1`, whose quiver Hecke superalgebra is
    /// the odd nilHecke algebra.
    pub fn odd_nilhecke() -> Self {
        Self::new(vec!["0".into()], vec![vec![2]], vec![Parity::Odd], Some(vec![1]))
            .expect("rank one datum is valid")
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn d(&self, i: usize) -> u32 {
        self.symmetrizer[i]
    }

    pub fn symmetrizer(&self) -> &[u32] {
        &self.symmetrizer
    }

    /// Same matrix and symmetrizer, different parity split.
    pub fn with_parity(&self, parity: Vec<Parity>) -> Result<Self> {
        Self::new(
            self.labels.clone(),
            self.matrix.clone(),
            parity,
            Some(self.symmetrizer.clone()),
        )
    }

    pub fn to_config(&self) -> CartanConfig {
        CartanConfig {
            labels: self.labels.clone(),
            cartan: self.matrix.clone(),
            parity: self.parity.iter().map(|p| p.name().to_string()).collect(),
            symmetrizer: Some(self.symmetrizer.clone()),
        }
    }

    /// `<h_i, Lambda - sum_j k_j alpha_j> = lambda_i - sum_j k_j a_ij`.
    pub fn pairing(&self, i: usize, weight: &DominantWeight, sub: &RootVector) -> i64 {
        let shift: i64 = sub
            .0
            .iter()
            .enumerate()
            .map(|(j, &k)| k as i64 * self.matrix[i][j])
            .sum();
        weight.0[i] as i64 - shift
    }

    /// `(alpha_i | alpha_j) = d_i a_ij`.
    pub fn bilinear(&self, i: usize, j: usize) -> i64 {
        i64::from(self.symmetrizer[i]) * self.matrix[i][j]
    }

    /// Degrees and parities of `x_k e(nu)` and `tau_a e(nu)`.
    pub fn generator_degrees(&self, nu: &WeightSeq) -> DegreeTable {
        let x = nu
            .0
            .iter()
            .map(|&i| Degree {
                z: self.bilinear(i, i),
                parity: self.parity[i],
            })
            .collect();
        let tau = nu
            .0
            .windows(2)
            .map(|w| Degree {
                z: -self.bilinear(w[0], w[1]),
                parity: self.parity[w[0]] * self.parity[w[1]],
            })
            .collect();
        DegreeTable { x, tau }
    }

    /// Comma-separated integers aligned with the labels, e.g. `"2,1"`.
    pub fn parse_weight(&self, text: &str) -> Result<DominantWeight> {
        let values = split_list(text)
            .map(|s| {
                s.parse::<u64>()
                    .map_err(|_| Error::Parse(format!("weight entry {s:?} is not a nonnegative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != self.rank() {
            return Err(Error::Parse(format!(
                "weight has {} entries but the datum has {} labels",
                values.len(),
                self.rank()
            )));
        }
        Ok(DominantWeight(values))
    }

    /// `label:mult` pairs, e.g. `"1:2,2:1"`. Missing labels have multiplicity 0.
    pub fn parse_root(&self, text: &str) -> Result<RootVector> {
        let mut mult = vec![0u64; self.rank()];
        for item in split_list(text) {
            let (label, m) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("root entry {item:?} must look like label:mult")))?;
            let i = self.index_of(label.trim())?;
            mult[i] += m
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("multiplicity {m:?} is not a nonnegative integer")))?;
        }
        Ok(RootVector(mult))
    }

    /// Comma-separated labels, e.g. `"1,2,1"`. The empty string is the empty sequence.
    pub fn parse_seq(&self, text: &str) -> Result<WeightSeq> {
        split_list(text)
            .map(|s| self.index_of(s))
            .collect::<Result<Vec<_>>>()
            .map(WeightSeq)
    }

    pub fn render_seq(&self, nu: &WeightSeq) -> String {
        nu.0.iter()
            .map(|&i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Root vector `sum_s alpha_{nu_s}`.
    pub fn root_of(&self, nu: &WeightSeq) -> RootVector {
        let mut mult = vec![0u64; self.rank()];
        for &i in &nu.0 {
            mult[i] += 1;
        }
        RootVector(mult)
    }

    /// Every `nu` in `I^beta`, in lexicographic order of label indices.
    pub fn sequences_of(&self, beta: &RootVector) -> Vec<WeightSeq> {
        let mut remaining = beta.0.clone();
        let mut current = Vec::with_capacity(beta.height());
        let mut out = Vec::new();
        fn rec(remaining: &mut [u64], current: &mut Vec<usize>, n: usize, out: &mut Vec<WeightSeq>) {
            if current.len() == n {
                out.push(WeightSeq(current.clone()));
                return;
            }
            for i in 0..remaining.len() {
                if remaining[i] > 0 {
                    remaining[i] -= 1;
                    current.push(i);
                    rec(remaining, current, n, out);
                    current.pop();
                    remaining[i] += 1;
                }
            }
        }
        rec(&mut remaining, &mut current, beta.height(), &mut out);
        out
    }

    /// `|I^beta|` as a multinomial coefficient, saturating at `usize::MAX`.
    pub fn count_sequences(&self, beta: &RootVector) -> usize {
        let mut total: u128 = 1;
        let mut placed: u128 = 0;
        for &m in &beta.0 {
            for k in 1..=u128::from(m) {
                placed += 1;
                total = total.saturating_mul(placed) / k;
            }
        }
        usize::try_from(total).unwrap_or(usize::MAX)
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn check_cartan(labels: &[String], a: &[Vec<i64>]) -> Result<()> {
    let n = labels.len();
    for i in 0..n {
        if a[i][i] != 2 {
            return Err(Error::NotCartan(format!("a[{0}][{0}] = {1}, expected 2", labels[i], a[i][i])));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(Error::NotCartan(format!(
                    "a[{}][{}] = {} is positive",
                    labels[i], labels[j], a[i][j]
                )));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(Error::NotCartan(format!(
                    "a[{0}][{1}] = {2} but a[{1}][{0}] = {3}",
                    labels[i], labels[j], a[i][j], a[j][i]
                )));
            }
        }
    }
    Ok(())
}

fn check_symmetrizer(labels: &[String], a: &[Vec<i64>], d: &[u32]) -> Result<()> {
    let n = labels.len();
    if d.len() != n {
        return Err(Error::MalformedDatum(format!("expected {n} symmetrizer entries, got {}", d.len())));
    }
    if let Some(i) = d.iter().position(|&x| x == 0) {
        return Err(Error::NotSymmetrizable(format!("d[{}] must be positive", labels[i])));
    }
    for i in 0..n {
        for j in 0..n {
            if i64::from(d[i]) * a[i][j] != i64::from(d[j]) * a[j][i] {
                return Err(Error::NotSymmetrizable(format!(
                    "d[{0}] a[{0}][{1}] != d[{1}] a[{1}][{0}]",
                    labels[i], labels[j]
                )));
            }
        }
    }
    Ok(())
}

/// Solve `d_i a_ij = d_j a_ji` over positive rationals per connected
/// component, then scale each component to the smallest positive integers.
fn solve_symmetrizer(labels: &[String], a: &[Vec<i64>]) -> Result<Vec<u32>> {
    let n = labels.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut out = vec![0u32; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut component = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].expect("visited");
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                let dj = di * Ratio::new(a[i][j], a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        component.push(j);
                        queue.push_back(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::NotSymmetrizable(format!(
                            "inconsistent ratios around label {}",
                            labels[j]
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = component
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(d[i].expect("visited").denom()));
        let ints: Vec<i64> = component
            .iter()
            .map(|&i| (d[i].expect("visited") * lcm).to_integer())
            .collect();
        let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &v) in component.iter().zip(&ints) {
            out[i] = u32::try_from(v / g)
                .map_err(|_| Error::NotSymmetrizable("symmetrizer entry too large".into()))?;
        }
    }
    Ok(out)
}

/// `Lambda in P^+`, stored as its pairings `lambda_i = <h_i, Lambda>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight(pub Vec<u64>);

impl DominantWeight {
    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }
}

/// Element of `Q^+` as multiplicities of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<u64>);

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    /// `|beta|`
    pub fn height(&self) -> usize {
        self.0.iter().sum::<u64>() as usize
    }

    /// Every simple root occurs at most once.
    pub fn is_multiplicity_free(&self) -> bool {
        self.0.iter().all(|&m| m <= 1)
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A label sequence `nu = (nu_1, ..., nu_n)`, stored as label indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeightSeq(pub Vec<usize>);

impl WeightSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Whether `other` is a rearrangement of `self`.
    pub fn same_content(&self, other: &WeightSeq) -> bool {
        let mut a = self.0.clone();
        let mut b = other.0.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    pub fn has_distinct_entries(&self) -> bool {
        let mut a = self.0.clone();
        a.sort_unstable();
        a.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for WeightSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree {
    pub z: i64,
    pub parity: Parity,
}

/// Degrees of `x_1..x_n` and `tau_1..tau_{n-1}` on a fixed idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTable {
    pub x: Vec<Degree>,
    pub tau: Vec<Degree>,
}
