//! Rank of noncommutative quadratic forms.
//!
//! Quadratic forms live in the degree-2 part of the skew polynomial ring
//! `S = k<z1..zn> / (zj zi - mu_ij zi zj)`. This crate classifies forms on
//! three and four generators by their mu-rank (0, 1, 2, or at least 3) using
//! closed-form mu-minors and mu-determinants, and builds explicit
//! factorizations `Q = L^2` and `Q = L1 L2`, each checked by re-expansion.
//!
//! ```
//! use murank::prelude::*;
//!
//! let mu = MuParams::<QuadExt>::from_upper(4, |_, _| QuadExt::from_i64(2)).unwrap();
//! let q = parse_form::<QuadExt>(
//!     "z1^2 + 2z2^2 + 2z3^2 + 2z4^2 + 4z1*z2 + 4z1*z3 + 4z1*z4 + 6z2*z3 + 6z2*z4 + 6z3*z4",
//!     4,
//!     &mu,
//! )
//! .unwrap();
//! let report = murank4(&q, &mu).unwrap();
//! assert_eq!(report.rank, MuRank::Two);
//! ```

pub mod factor;
pub mod musym;
pub mod oracle;
pub mod parser;
pub mod rankcore;
pub mod scalar;
pub mod skewring;

use thiserror::Error;

pub use scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires n = {expected}, got n = {found}")]
    WrongN { expected: usize, found: usize },
    #[error("mu invariant violated: {0}")]
    MuInvariant(String),
    #[error("matrix is not mu-symmetric at ({i}, {j})")]
    NotMuSymmetric { i: usize, j: usize },
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("grid search needs {candidates} candidates, above the cap of {cap}")]
    GridTooLarge { candidates: u128, cap: u128 },
    #[error(transparent)]
    Parse(#[from] parser::ParseError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub mod prelude {
    pub use crate::factor::{
        factor_product, factor_product_a11nonzero, factor_product_a11zero, factor_square,
        factorize, verify_factorization, Factorization, FactorKind,
    };
    pub use crate::musym::{form_from_matrix, matrix_from_form, MuSymMatrix};
    pub use crate::parser::{parse_form, parse_linear, parse_mu};
    pub use crate::rankcore::{murank, murank3, murank4, MuRank, RankReport, SignChoice};
    pub use crate::scalar::{ComplexF, QuadExt, Rational, Scalar};
    pub use crate::skewring::{multiply_linear, LinearForm, MuParams, QuadraticForm};
}
