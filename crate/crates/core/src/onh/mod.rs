//! The odd nilHecke algebra `ONH_n` and its cyclotomic quotient `ONH_n^ell`.
//!
//! Generators `x_1..x_n` (degree 2) and `tau_1..tau_{n-1}` (degree -2) are
//! all odd, subject to
//!
//! ```text
//! x_i x_j + x_j x_i = 0            (i != j)
//! tau_i^2 = 0,  tau_i tau_j + tau_j tau_i = 0   (|i - j| > 1)
//! tau_i tau_{i+1} tau_i = tau_{i+1} tau_i tau_{i+1}
//! x_i tau_j + tau_j x_i = 0        (i != j, j + 1)
//! x_i tau_i + tau_i x_{i+1} = 1,   tau_i x_i + x_{i+1} tau_i = 1
//! ```
//!
//! Elements are kept in PBW normal form `sum c x^a tau_w`, with `tau_w` taken
//! along the lexicographically smallest reduced word of `w`. Ranks up to
//! [`MAX_RANK`] are supported.

mod cyclotomic;
mod element;
mod parse;
mod skew;
mod tau;

pub use cyclotomic::{annihilators, Annihilators, CyclotomicOnh, Scalars, StructureTable};
pub use element::{OnhAlgebra, OnhElement};
pub use parse::parse_element;
pub use skew::{product_sign, SkewPolynomial};
pub use tau::{tau_table, tau_word_reduce, TauTable, MAX_RANK};
