//! Closed-form mu-minors and mu-determinants.
//!
//! Formulas are written once over any commutative ring `T` so the same code
//! evaluates them on backend scalars and on [`RootPoly`] values with formal
//! roots. Pair arguments are two-digit 1-based codes: `12` means `a_12`.

use std::ops::{Add, Mul, Sub};

use super::rootpoly::{RootPoly, SYMBOLS};
use super::SignChoice;
use crate::musym::MuSymMatrix;
use crate::scalar::{mul, Scalar, ScalarError};
use crate::{Error, Result};

pub(crate) trait Ring: Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {}
impl<T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>> Ring for T {}

pub(crate) struct Entries<T> {
    n: usize,
    a: Vec<T>,
    mu: Vec<T>,
    one: T,
}

fn ix(code: usize) -> (usize, usize) {
    (code / 10 - 1, code % 10 - 1)
}

impl<T: Ring> Entries<T> {
    pub(crate) fn lift<S: Scalar>(m: &MuSymMatrix<S>, f: impl Fn(&S) -> T) -> Self {
        let n = m.n();
        let mut a = Vec::with_capacity(n * n);
        let mut mu = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                a.push(f(&m.a(i + 1, j + 1)));
                mu.push(f(m.mu().get(i, j)));
            }
        }
        Entries {
            n,
            a,
            mu,
            one: f(&S::one()),
        }
    }

    fn a(&self, code: usize) -> T {
        let (i, j) = ix(code);
        self.a[i * self.n + j].clone()
    }

    fn mu(&self, code: usize) -> T {
        let (i, j) = ix(code);
        self.mu[i * self.n + j].clone()
    }

    /// `1 + mu_ij`.
    fn p(&self, code: usize) -> T {
        self.one.clone() + self.mu(code)
    }

    /// `4 a_ij^2 - (1 + mu_ij)^2 a_ii a_jj`.
    fn square_minor(&self, code: usize) -> T {
        let (i, j) = ix(code);
        let ii = (i + 1) * 11;
        let jj = (j + 1) * 11;
        let a = self.a(code);
        let four_a2 = dbl(dbl(a.clone() * a));
        let p = self.p(code);
        four_a2 - p.clone() * p * self.a(ii) * self.a(jj)
    }

    /// `2 (1 + mu_p) a_x a_y - (1 + mu_q1)(1 + mu_q2) a_u a_v`.
    #[allow(clippy::too_many_arguments)]
    fn mixed_minor(&self, p: usize, x: usize, y: usize, q1: usize, q2: usize, u: usize, v: usize) -> T {
        dbl(self.p(p) * self.a(x) * self.a(y)) - self.p(q1) * self.p(q2) * self.a(u) * self.a(v)
    }

    /// `(1 + mu_p1)(1 + mu_p2) a_x a_y - (1 + mu_q1)(1 + mu_q2) a_u a_v`.
    #[allow(clippy::too_many_arguments)]
    fn cross_minor(
        &self,
        p1: usize,
        p2: usize,
        x: usize,
        y: usize,
        q1: usize,
        q2: usize,
        u: usize,
        v: usize,
    ) -> T {
        self.p(p1) * self.p(p2) * self.a(x) * self.a(y) - self.p(q1) * self.p(q2) * self.a(u) * self.a(v)
    }

    /// The two bracket factors of the product-form determinant on the
    /// generator pair `(j, k)`, `1 < j < k`:
    ///
    /// `mu_jk a_kk a_1j^2 - 2 a_jk a_1j a_1k + a_jj a_1k^2` and
    /// `mu_1k mu_j1 a_kk a_1j^2 - 2 a_jk a_1j a_1k + mu_jk mu_1j mu_k1 a_jj a_1k^2`.
    fn brackets(&self, j: usize, k: usize) -> (T, T) {
        let (c1j, c1k, cjk) = (10 + j, 10 + k, 10 * j + k);
        let (cjj, ckk, cj1, ck1) = (11 * j, 11 * k, 10 * j + 1, 10 * k + 1);
        let a1j2 = self.a(c1j) * self.a(c1j);
        let a1k2 = self.a(c1k) * self.a(c1k);
        let mid = dbl(self.a(cjk) * self.a(c1j) * self.a(c1k));
        let first = self.mu(cjk) * self.a(ckk) * a1j2.clone() - mid.clone() + self.a(cjj) * a1k2.clone();
        let second = self.mu(c1k) * self.mu(cj1) * self.a(ckk) * a1j2 - mid
            + self.mu(cjk) * self.mu(c1j) * self.mu(ck1) * self.a(cjj) * a1k2;
        (first, second)
    }

    /// `mu_j1 (a_1j + R_j)(a_1k - R_k) + mu_jk mu_k1 (a_1k + R_k)(a_1j - R_j) - 2 a_jk a_11`.
    fn root_det(&self, j: usize, k: usize, rj: T, rk: T) -> T {
        let (c1j, c1k, cjk) = (10 + j, 10 + k, 10 * j + k);
        let (cj1, ck1) = (10 * j + 1, 10 * k + 1);
        self.mu(cj1) * (self.a(c1j) + rj.clone()) * (self.a(c1k) - rk.clone())
            + self.mu(cjk) * self.mu(ck1) * (self.a(c1k) + rk) * (self.a(c1j) - rj)
            - dbl(self.a(cjk) * self.a(11))
    }
}

fn dbl<T: Ring>(x: T) -> T {
    x.clone() + x
}

fn require_n<S: Scalar>(m: &MuSymMatrix<S>, n: usize) -> Result<()> {
    if m.n() == n {
        Ok(())
    } else {
        Err(Error::WrongN {
            expected: n,
            found: m.n(),
        })
    }
}

/// `D1..D6` for three generators.
pub fn minors3<S: Scalar>(m: &MuSymMatrix<S>) -> Result<[S; 6]> {
    require_n(m, 3)?;
    let e = Entries::lift(m, S::clone);
    Ok([
        e.square_minor(12),
        e.square_minor(13),
        e.square_minor(23),
        e.mixed_minor(23, 12, 13, 12, 13, 11, 23),
        e.mixed_minor(12, 13, 23, 13, 23, 33, 12),
        e.mixed_minor(13, 12, 23, 12, 23, 22, 13),
    ])
}

/// `D7` (the product of the two brackets) for three generators.
pub fn det7<S: Scalar>(m: &MuSymMatrix<S>) -> Result<S> {
    require_n(m, 3)?;
    let (f, s) = Entries::lift(m, S::clone).brackets(2, 3);
    Ok(f * s)
}

/// `D7` and `D8` for three generators, with the square roots `X`, `Y` of
/// `d^2 - mu12 ab` and `e^2 - mu13 ac` signed by `sign`.
pub fn dets3<S: Scalar>(m: &MuSymMatrix<S>, sign: SignChoice) -> Result<[S; 2]> {
    let d7 = det7(m)?;
    let roots = sign.apply(&principal_roots(m)?);
    let d8 = Entries::lift(m, S::clone).root_det(2, 3, roots[0].clone(), roots[1].clone());
    Ok([d7, d8])
}

/// `D1..D21` for four generators.
pub fn minors4<S: Scalar>(m: &MuSymMatrix<S>) -> Result<Vec<S>> {
    require_n(m, 4)?;
    let e = Entries::lift(m, S::clone);
    let mut out: Vec<S> = [12, 13, 14, 23, 24, 34].iter().map(|&c| e.square_minor(c)).collect();
    let mixed = [
        [23, 12, 13, 12, 13, 11, 23],
        [24, 12, 14, 12, 14, 11, 24],
        [13, 12, 23, 12, 23, 13, 22],
        [14, 12, 24, 12, 24, 14, 22],
        [34, 13, 14, 13, 14, 11, 34],
        [12, 13, 23, 13, 23, 33, 12],
        [14, 13, 34, 13, 34, 33, 14],
        [12, 14, 24, 14, 24, 12, 44],
        [13, 14, 34, 14, 34, 13, 44],
        [34, 23, 24, 23, 24, 22, 34],
        [24, 23, 34, 23, 34, 33, 24],
        [23, 24, 34, 24, 34, 23, 44],
    ];
    out.extend(
        mixed
            .iter()
            .map(|r| e.mixed_minor(r[0], r[1], r[2], r[3], r[4], r[5], r[6])),
    );
    let cross = [
        [13, 24, 12, 34, 12, 34, 13, 24],
        [14, 23, 13, 24, 13, 24, 14, 23],
        [12, 34, 14, 23, 14, 23, 12, 34],
    ];
    out.extend(
        cross
            .iter()
            .map(|r| e.cross_minor(r[0], r[1], r[2], r[3], r[4], r[5], r[6], r[7])),
    );
    Ok(out)
}

/// `D22..D24` with their bracket factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Dets4Zero<S> {
    pub values: [S; 3],
    /// `brackets[t] = (first, second)` for `D_{22+t}`; the first bracket
    /// vanishes for products with `z1` in the left factor, the second for
    /// products with `z1` in the right factor.
    pub brackets: [(S, S); 3],
}

impl<S: Scalar> Dets4Zero<S> {
    pub fn all_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn first_brackets_vanish(&self) -> bool {
        self.brackets.iter().all(|(f, _)| f.is_zero())
    }

    pub fn second_brackets_vanish(&self) -> bool {
        self.brackets.iter().all(|(_, s)| s.is_zero())
    }
}

/// Generator pairs `(j, k)` behind `D22`, `D23`, `D24` and `D25`, `D26`, `D27`.
const DET_PAIRS: [(usize, usize); 3] = [(2, 3), (2, 4), (3, 4)];

pub fn dets4_a11zero<S: Scalar>(m: &MuSymMatrix<S>) -> Result<Dets4Zero<S>> {
    require_n(m, 4)?;
    let e = Entries::lift(m, S::clone);
    let brackets = DET_PAIRS.map(|(j, k)| e.brackets(j, k));
    let values = std::array::from_fn(|t| mul(&brackets[t].0, &brackets[t].1));
    Ok(Dets4Zero { values, brackets })
}

/// `D25..D27` for the principal roots signed by `sign`.
pub fn dets4_a11nonzero<S: Scalar>(m: &MuSymMatrix<S>, sign: SignChoice) -> Result<[S; 3]> {
    require_n(m, 4)?;
    let roots = sign.apply(&principal_roots(m)?);
    dets4_a11nonzero_with_roots(m, &roots)
}

/// `D25..D27` for caller-chosen roots `X`, `Y`, `Z` (not checked against
/// the discriminants).
pub fn dets4_a11nonzero_with_roots<S: Scalar>(m: &MuSymMatrix<S>, roots: &[S; 3]) -> Result<[S; 3]> {
    require_n(m, 4)?;
    let e = Entries::lift(m, S::clone);
    Ok(DET_PAIRS.map(|(j, k)| e.root_det(j, k, roots[j - 2].clone(), roots[k - 2].clone())))
}

/// `a_1j^2 - mu_1j a_11 a_jj` for `j = 2..=n` (zero-padded to three slots).
pub fn discriminants<S: Scalar>(m: &MuSymMatrix<S>) -> [S; SYMBOLS] {
    std::array::from_fn(|t| {
        let j = t + 2;
        if j > m.n() {
            return S::zero();
        }
        let a1j = m.a(1, j);
        mul(&a1j, &a1j) - m.mu().mu(1, j) * m.a(1, 1) * m.a(j, j)
    })
}

/// One fixed square root of each discriminant (the first candidate the
/// backend offers).
pub fn principal_roots<S: Scalar>(m: &MuSymMatrix<S>) -> Result<[S; SYMBOLS]> {
    let disc = discriminants(m);
    let mut out: [S; SYMBOLS] = std::array::from_fn(|_| S::zero());
    for (slot, d) in out.iter_mut().zip(&disc) {
        *slot = d
            .sqrt_candidates()
            .into_iter()
            .next()
            .ok_or_else(|| ScalarError::Unsupported(format!("no square root of {d} in this backend")))?;
    }
    Ok(out)
}

/// The root-dependent determinants as formal polynomials in X, Y, Z:
/// `[D8]` for three generators, `[D25, D26, D27]` for four.
pub(crate) fn root_dets_formal<S: Scalar>(m: &MuSymMatrix<S>) -> Result<Vec<RootPoly<S>>> {
    let squares = discriminants(m);
    let e = Entries::lift(m, |s: &S| RootPoly::constant(s.clone(), &squares));
    let sym = |k: usize| RootPoly::symbol(k, &squares);
    match m.n() {
        3 => Ok(vec![e.root_det(2, 3, sym(0), sym(1))]),
        4 => Ok(DET_PAIRS
            .iter()
            .map(|&(j, k)| e.root_det(j, k, sym(j - 2), sym(k - 2)))
            .collect()),
        n => Err(Error::WrongN { expected: 4, found: n }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::musym::matrix_from_form;
    use crate::scalar::QuadExt;
    use crate::skewring::{MuParams, QuadraticForm};

    fn q(v: i64) -> QuadExt {
        QuadExt::from_i64(v)
    }

    fn worked_matrix() -> MuSymMatrix<QuadExt> {
        let mu = MuParams::from_upper(4, |_, _| q(2)).unwrap();
        let f = QuadraticForm::from_fn(4, |i, j| match (i, j) {
            (0, 0) => q(1),
            (i, j) if i == j => q(2),
            (0, _) => q(4),
            _ => q(6),
        });
        matrix_from_form(&f, &mu).unwrap()
    }

    #[test]
    fn worked_example_values() {
        let m = worked_matrix();
        let d = minors4(&m).unwrap();
        assert_eq!(d.len(), 21);
        assert_eq!(d[0], q(-2));
        assert!(discriminants(&m).iter().all(Scalar::is_zero));
        let d25 = dets4_a11nonzero(&m, SignChoice::PLUS).unwrap();
        assert!(d25.iter().all(Scalar::is_zero));
    }

    #[test]
    fn single_cross_term() {
        let mu = MuParams::from_upper(4, |i, j| q((i + j + 2) as i64)).unwrap();
        let mut f = QuadraticForm::zero(4);
        *f.coeff_mut(0, 1) = q(2);
        let m = matrix_from_form(&f, &mu).unwrap();
        assert!(dets4_a11zero(&m).unwrap().all_zero());
        assert_eq!(minors4(&m).unwrap()[0], q(4));
    }

    #[test]
    fn wrong_dimension() {
        let m = worked_matrix();
        assert!(matches!(minors3(&m), Err(Error::WrongN { expected: 3, found: 4 })));
    }

    #[test]
    fn formal_matches_direct() {
        let m = worked_matrix();
        let formal = root_dets_formal(&m).unwrap();
        let roots = principal_roots(&m).unwrap();
        let direct = dets4_a11nonzero_with_roots(&m, &roots).unwrap();
        for (f, d) in formal.iter().zip(&direct) {
            assert_eq!(&f.specialize(&roots), d);
        }
    }
}
