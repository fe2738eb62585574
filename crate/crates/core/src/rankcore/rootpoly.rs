use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{mul, Scalar};

/// Number of formal root symbols (X, Y, Z).
pub const SYMBOLS: usize = 3;

/// Multilinear polynomial in three formal square roots over `S`.
///
/// `coords[mask]` is the coefficient of the monomial whose symbols are the
/// set bits of `mask` (X = bit 0, Y = bit 1, Z = bit 2). Products reduce
/// `X^2` to `squares[0]` and so on. Keeping the roots formal means flipping
/// the sign of X never touches Y even when `X^2` and `Y^2` share a square
/// class.
#[derive(Clone, Debug)]
pub struct RootPoly<S> {
    coords: [S; 8],
    squares: [S; SYMBOLS],
}

impl<S: Scalar> RootPoly<S> {
    pub fn constant(c: S, squares: &[S; SYMBOLS]) -> Self {
        let mut coords: [S; 8] = std::array::from_fn(|_| S::zero());
        coords[0] = c;
        RootPoly {
            coords,
            squares: squares.clone(),
        }
    }

    /// The formal root number `k` with `root^2 = squares[k]`.
    pub fn symbol(k: usize, squares: &[S; SYMBOLS]) -> Self {
        let mut p = Self::constant(S::zero(), squares);
        p.coords[1 << k] = S::one();
        p
    }

    pub fn coord(&self, mask: usize) -> &S {
        &self.coords[mask]
    }

    /// Negate every monomial containing symbol `k`.
    pub fn sign_flip(&self, k: usize) -> Self {
        let mut out = self.clone();
        for (mask, c) in out.coords.iter_mut().enumerate() {
            if mask & (1 << k) != 0 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Substitute concrete values for the symbols.
    pub fn specialize(&self, roots: &[S; SYMBOLS]) -> S {
        let mut total = S::zero();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (k, r) in roots.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    term = term * r.clone();
                }
            }
            total = total + term;
        }
        total
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

impl<S: Scalar> Add for RootPoly<S> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a = a.clone() + b;
        }
        self
    }
}

impl<S: Scalar> Neg for RootPoly<S> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.coords.iter_mut() {
            *a = -a.clone();
        }
        self
    }
}

impl<S: Scalar> Sub for RootPoly<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Mul for RootPoly<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out: [S; 8] = std::array::from_fn(|_| S::zero());
        for (ma, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (mb, b) in rhs.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut term = mul(a, b);
                let common = ma & mb;
                for k in 0..SYMBOLS {
                    if common & (1 << k) != 0 {
                        term = term * self.squares[k].clone();
                    }
                }
                let slot = &mut out[ma ^ mb];
                *slot = slot.clone() + term;
            }
        }
        RootPoly {
            coords: out,
            squares: self.squares,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadExt, Rational};

    fn sq() -> [QuadExt; 3] {
        [QuadExt::from_i64(2), QuadExt::from_i64(8), QuadExt::from_i64(-1)]
    }

    #[test]
    fn symbols_square_to_their_values() {
        let s = sq();
        for k in 0..3 {
            let r = RootPoly::symbol(k, &s);
            let p = r.clone() * r;
            assert_eq!(p.specialize(&[QuadExt::zero(), QuadExt::zero(), QuadExt::zero()]), s[k]);
        }
    }

    #[test]
    fn flips_are_independent_in_a_shared_square_class() {
        let s = sq();
        let x = RootPoly::symbol(0, &s);
        let y = RootPoly::symbol(1, &s);
        let p = x.clone() + y.clone();
        let flipped = p.sign_flip(0);
        let roots = [
            QuadExt::sqrt_rational(&Rational::from(2)),
            QuadExt::sqrt_rational(&Rational::from(8)),
            QuadExt::sqrt_rational(&Rational::from(-1)),
        ];
        // -sqrt(2) + 2 sqrt(2) = sqrt(2)
        assert_eq!(flipped.specialize(&roots), roots[0]);
        assert!((x * y).sign_flip(1).sign_flip(1).specialize(&roots) == QuadExt::from_i64(4));
    }
}
