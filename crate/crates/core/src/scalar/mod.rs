//! Field-like scalars with two backends.
//!
//! * [`QuadExt`]: exact rationals with lazily adjoined square roots. Every
//!   value is an element of a multiquadratic field `Q(sqrt(-1), sqrt(2), ...)`,
//!   so zero tests are exact.
//! * [`ComplexF`]: double-precision complex numbers compared with a
//!   scale-relative tolerance.
//!
//! All values are immutable and `Send + Sync`.

mod complex;
mod quadext;
mod rational;

pub use complex::{ComplexF, DEFAULT_TOL};
pub use quadext::{Monomial, QuadExt};
pub use rational::Rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("symbol sqrt({0}) is not adjoined in this element")]
    UnknownSymbol(String),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// Arithmetic every algebraic routine in the crate is generic over.
///
/// Addition and multiplication are exact for the exact backend; `is_zero` is
/// the only place where the float backend applies its tolerance.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    /// Both square roots `{r, -r}`, or `{0}` for zero. Empty when the backend
    /// has no root to offer (non-rational extension elements).
    fn sqrt_candidates(&self) -> Vec<Self>;

    fn try_inv(&self) -> Result<Self, ScalarError>;

    /// Exact rational value, when the element is one.
    fn as_rational(&self) -> Option<Rational>;

    /// Numeric value as a complex double, used for cross-backend comparison.
    fn to_complex(&self) -> ComplexF;

    /// Embed a complex double, when the backend can represent it.
    fn from_complex(_z: ComplexF) -> Option<Self> {
        None
    }

    /// Attach a comparison tolerance. No-op for exact backends.
    fn with_tol(self, _tol: f64) -> Self {
        self
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other.try_inv()?)
    }
}

/// `a*b` on references, cloning both sides.
pub(crate) fn mul<S: Scalar>(a: &S, b: &S) -> S {
    a.clone() * b.clone()
}

/// The constant `v` in backend `S`.
pub fn c<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

/// `1/2`, used by the form/matrix correspondence.
pub fn half<S: Scalar>() -> S {
    S::from_rational(&Rational::new(1, 2))
}
