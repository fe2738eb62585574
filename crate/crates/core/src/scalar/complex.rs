use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Scalar, ScalarError};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Double-precision complex number with a running magnitude bound.
///
/// `scale` bounds the largest monomial that went into the value (sums take
/// the max of their operands, products multiply). `is_zero` accepts
/// `|v| <= tol * max(1, scale)`. A `tol` of zero means "not set" and falls
/// back to [`DEFAULT_TOL`]; binary operations keep the larger tolerance.
#[derive(Clone, Copy, Debug)]
pub struct ComplexF {
    value: Complex64,
    scale: f64,
    tol: f64,
}

impl ComplexF {
    pub fn new(re: f64, im: f64) -> Self {
        let value = Complex64::new(re, im);
        debug_assert!(value.is_finite(), "non-finite complex value");
        ComplexF {
            value,
            scale: value.norm(),
            tol: 0.0,
        }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        let v = Complex64::from_polar(r, theta);
        ComplexF::new(v.re, v.im)
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn tol(&self) -> f64 {
        if self.tol > 0.0 {
            self.tol
        } else {
            DEFAULT_TOL
        }
    }

    fn combine(value: Complex64, scale: f64, a: &ComplexF, b: &ComplexF) -> ComplexF {
        debug_assert!(value.is_finite(), "complex arithmetic left the finite range");
        ComplexF {
            value,
            scale: scale.max(value.norm()),
            tol: a.tol.max(b.tol),
        }
    }
}

impl PartialEq for ComplexF {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Add for ComplexF {
    type Output = ComplexF;
    fn add(self, rhs: ComplexF) -> ComplexF {
        ComplexF::combine(self.value + rhs.value, self.scale.max(rhs.scale), &self, &rhs)
    }
}

impl Sub for ComplexF {
    type Output = ComplexF;
    fn sub(self, rhs: ComplexF) -> ComplexF {
        ComplexF::combine(self.value - rhs.value, self.scale.max(rhs.scale), &self, &rhs)
    }
}

impl Mul for ComplexF {
    type Output = ComplexF;
    fn mul(self, rhs: ComplexF) -> ComplexF {
        ComplexF::combine(self.value * rhs.value, self.scale * rhs.scale, &self, &rhs)
    }
}

impl Neg for ComplexF {
    type Output = ComplexF;
    fn neg(self) -> ComplexF {
        ComplexF {
            value: -self.value,
            ..self
        }
    }
}

impl fmt::Display for ComplexF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.im == 0.0 {
            write!(f, "{}", self.value.re)
        } else if self.value.im < 0.0 {
            write!(f, "{}-{}i", self.value.re, -self.value.im)
        } else {
            write!(f, "{}+{}i", self.value.re, self.value.im)
        }
    }
}

impl Scalar for ComplexF {
    fn zero() -> Self {
        ComplexF::new(0.0, 0.0)
    }

    fn one() -> Self {
        ComplexF::new(1.0, 0.0)
    }

    fn from_rational(r: &Rational) -> Self {
        ComplexF::new(r.to_f64(), 0.0)
    }

    fn is_zero(&self) -> bool {
        self.value.norm() <= self.tol() * self.scale.max(1.0)
    }

    fn sqrt_candidates(&self) -> Vec<Self> {
        if self.is_zero() {
            return vec![ComplexF {
                value: Complex64::new(0.0, 0.0),
                scale: self.scale.sqrt(),
                tol: self.tol,
            }];
        }
        let root = ComplexF {
            value: self.value.sqrt(),
            scale: self.scale.sqrt(),
            tol: self.tol,
        };
        vec![root, -root]
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        let n = self.value.norm();
        if n == 0.0 || self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let value = self.value.inv();
        Ok(ComplexF {
            value,
            scale: (self.scale / (n * n)).max(value.norm()),
            tol: self.tol,
        })
    }

    fn as_rational(&self) -> Option<Rational> {
        None
    }

    fn to_complex(&self) -> ComplexF {
        *self
    }

    fn from_complex(z: ComplexF) -> Option<Self> {
        Some(z)
    }

    fn with_tol(self, tol: f64) -> Self {
        ComplexF { tol, ..self }
    }
}

impl Serialize for ComplexF {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.value.re, self.value.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexF {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::Array(a) if a.len() == 2 => {
                let re = a[0].as_f64().ok_or_else(|| D::Error::custom("re must be a number"))?;
                let im = a[1].as_f64().ok_or_else(|| D::Error::custom("im must be a number"))?;
                Ok(ComplexF::new(re, im))
            }
            serde_json::Value::Number(n) => Ok(ComplexF::new(n.as_f64().unwrap_or(f64::NAN), 0.0)),
            serde_json::Value::String(s) => s
                .parse::<Rational>()
                .map(|r| ComplexF::from_rational(&r))
                .map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected [re, im], got {other}"))),
        }
    }
}
