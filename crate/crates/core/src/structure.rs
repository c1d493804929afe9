//! The idempotent graph of `R^Lambda(beta)` and the indecomposability
//! diagnostic built on it.

use std::collections::VecDeque;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cartan::{CartanSuperdatum, DominantWeight, RootVector, WeightSeq};
use crate::dimension::DimensionQuery;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Default bound on `|I^beta|`.
pub const DEFAULT_SEQUENCE_CAP: usize = 5000;

/// Vertices are the `nu` with `e(nu) != 0`; `{mu, nu}` is an edge when
/// `e(mu) R e(nu) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentGraph {
    pub beta: RootVector,
    pub vertices: Vec<WeightSeq>,
    /// Index pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

impl IdempotentGraph {
    pub fn is_distinct_root(&self) -> bool {
        self.beta.is_multiplicity_free()
    }
}

pub fn build_graph(datum: &CartanSuperdatum, weight: &DominantWeight, beta: &RootVector) -> Result<IdempotentGraph> {
    build_graph_with(datum, weight, beta, DEFAULT_SEQUENCE_CAP, Execution::default())
}

pub fn build_graph_with(
    datum: &CartanSuperdatum,
    weight: &DominantWeight,
    beta: &RootVector,
    cap: usize,
    exec: Execution,
) -> Result<IdempotentGraph> {
    if beta.0.len() != datum.rank() {
        return Err(Error::RankMismatch(beta.0.len(), datum.rank()));
    }
    let size = datum.count_sequences(beta);
    if size > cap {
        return Err(Error::CapExceeded {
            what: "I^beta",
            size,
            cap,
        });
    }
    let all = datum.sequences_of(beta);
    let alive = exec::try_map_collect(exec, &all, |nu| {
        let q = DimensionQuery::diagonal(datum, weight, nu)?;
        let dim = q.ungraded_dim_with(Execution::Sequential);
        if dim.is_negative() {
            return Err(Error::Internal(format!("negative dimension for {nu}")));
        }
        Ok(!dim.is_zero())
    })?;
    let vertices: Vec<WeightSeq> = all.into_iter().zip(alive).filter_map(|(nu, ok)| ok.then_some(nu)).collect();
    let m = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
    let linked = exec::try_map_collect(exec, &pairs, |&(a, b)| {
        let q = DimensionQuery::new(datum, weight, &vertices[a], &vertices[b])?;
        Ok::<bool, Error>(!q.ungraded_dim_with(Execution::Sequential).is_zero())
    })?;
    let edges = pairs.into_iter().zip(linked).filter_map(|(p, ok)| ok.then_some(p)).collect();
    Ok(IdempotentGraph {
        beta: beta.clone(),
        vertices,
        edges,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No nonzero idempotent.
    ZeroAlgebra,
    /// Multiplicity-free `beta` and a connected graph.
    IndecomposableCertified,
    /// Each component gives a nontrivial central idempotent.
    Decomposable,
    /// Connected, but `beta` has repeated simple roots.
    ConnectedDiagnosticOnly,
}

impl Verdict {
    pub fn code(self) -> &'static str {
        match self {
            Verdict::ZeroAlgebra => "zero",
            Verdict::IndecomposableCertified => "indecomposable",
            Verdict::Decomposable => "decomposable",
            Verdict::ConnectedDiagnosticOnly => "diagnostic-only",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ZeroAlgebra => "zero algebra",
            Verdict::IndecomposableCertified => "indecomposable (certified)",
            Verdict::Decomposable => "decomposable (idempotent graph is disconnected)",
            Verdict::ConnectedDiagnosticOnly => {
                "connected (diagnostic only: connectivity is not proven sufficient for repeated roots)"
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    /// Vertex indices per component, each sorted, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    pub verdict: Verdict,
}

pub fn connectivity_report(graph: &IdempotentGraph) -> ConnectivityReport {
    let m = graph.vertices.len();
    let mut adj = vec![Vec::new(); m];
    for &(a, b) in &graph.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push_back(u);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    let verdict = match components.len() {
        0 => Verdict::ZeroAlgebra,
        1 if graph.is_distinct_root() => Verdict::IndecomposableCertified,
        1 => Verdict::ConnectedDiagnosticOnly,
        _ => Verdict::Decomposable,
    };
    ConnectivityReport { components, verdict }
}
