//! Exact dimension formulas, monomial bases and connectivity diagnostics for
//! cyclotomic quiver Hecke superalgebras, plus a concrete cyclotomic odd
//! nilHecke algebra with normal forms.

pub mod basis;
pub mod cartan;
pub mod dimension;
pub mod error;
pub mod exec;
pub mod onh;
pub mod oracle;
pub mod perm;
pub mod qpi;
pub mod structure;

pub use cartan::{CartanConfig, CartanSuperdatum, DominantWeight, RootVector, ValidationReport, WeightSeq};
pub use dimension::{idempotent_nonzero, tilde_dims, DimensionQuery, TildeDims};
pub use error::{Error, ErrorCategory, Result};
pub use exec::Execution;
pub use perm::{Composition, Permutation};
pub use qpi::{quantum_bracket, LaurentPolynomial, Parity, QPiPolynomial};
pub use structure::{build_graph, connectivity_report, ConnectivityReport, IdempotentGraph, Verdict};
