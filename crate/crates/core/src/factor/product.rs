//! Candidate constructions for `Q = L1 L2`.
//!
//! Every function here only *builds* candidates; the caller verifies.

use super::{Factorization, FactorKind};
use crate::musym::{matrix_from_form, MuSymMatrix};
use crate::rankcore::{principal_roots, SignChoice};
use crate::scalar::{c, mul, Scalar};
use crate::skewring::{LinearForm, MuParams, QuadraticForm};
use crate::Result;

fn product<S: Scalar>(
    prefactor: S,
    l1: LinearForm<S>,
    l2: LinearForm<S>,
    provenance: String,
    signs: Option<SignChoice>,
) -> Factorization<S> {
    Factorization {
        kind: FactorKind::Product,
        prefactor,
        factors: vec![l1, l2],
        provenance,
        signs,
        verified: false,
    }
}

/// Sign vectors for `k` roots, `+...+` first, the first root most
/// significant.
fn sign_vectors(k: usize) -> Vec<Vec<i8>> {
    (0..1usize << k)
        .map(|bits| {
            (0..k)
                .map(|t| if bits & (1 << (k - 1 - t)) != 0 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

fn sign_choice(signs: &[i8]) -> SignChoice {
    let get = |t: usize| signs.get(t).copied().unwrap_or(1);
    SignChoice {
        x: get(0),
        y: get(1),
        z: get(2),
    }
}

/// Leading coefficient nonzero: for each sign choice of the roots
/// `R_j^2 = a_1j^2 - mu_1j a_11 a_jj`,
/// `Q = a11^-1 [a11 z1 + sum mu_j1 (a1j + R_j) zj] [a11 z1 + sum (a1j - R_j) zj]`.
pub(crate) fn leading_root_candidates<S: Scalar>(
    m: &MuSymMatrix<S>,
    mu: &MuParams<S>,
) -> Result<Vec<Factorization<S>>> {
    let n = m.n();
    let a11 = m.a(1, 1);
    let inv = a11.try_inv()?;
    let roots = principal_roots(m)?;
    let mut out = Vec::new();
    for signs in sign_vectors(n - 1) {
        let r = |j: usize| {
            let root = roots[j - 2].clone();
            if signs[j - 2] < 0 {
                -root
            } else {
                root
            }
        };
        let mut l1 = vec![a11.clone()];
        let mut l2 = vec![a11.clone()];
        for j in 2..=n {
            l1.push(mu.mu(j, 1) * (m.a(1, j) + r(j)));
            l2.push(m.a(1, j) - r(j));
        }
        out.push(product(
            inv.clone(),
            LinearForm::new(l1),
            LinearForm::new(l2),
            "leading_nonzero/roots".into(),
            Some(sign_choice(&signs)),
        ));
    }
    Ok(out)
}

/// Name of the vanishing pattern of `a12, ..., a1n`.
fn cross_pattern<S: Scalar>(m: &MuSymMatrix<S>) -> &'static str {
    let nonzero = (2..=m.n()).filter(|&j| !m.a(1, j).is_zero()).count();
    match (nonzero, m.n() - 1 - nonzero) {
        (_, 0) => "all_cross_nonzero",
        (_, 1) => "one_cross_zero",
        (1, _) => "one_cross_nonzero",
        _ => "some_cross_zero",
    }
}

/// Leading coefficient zero with some `a1k != 0`: the product has `z1` in
/// exactly one factor.
///
/// Left: `(z1 + sum u_j zj)(sum v_j zj)` with `v_j = 2 a1j`, `u_j = a_jj / v_j`.
/// Right: `(sum v_j zj)(z1 + sum u_j zj)` with `v_j = 2 mu_j1 a1j`,
/// `u_j = a_jj / v_j`. When `a1j = 0`, `u_j` is read off the cross term with
/// the first `k` having `a1k != 0`.
pub(crate) fn leading_zero_candidates<S: Scalar>(
    m: &MuSymMatrix<S>,
    mu: &MuParams<S>,
) -> Result<Vec<Factorization<S>>> {
    let n = m.n();
    let two = c::<S>(2);
    let Some(k) = (2..=n).find(|&j| !m.a(1, j).is_zero()) else {
        return Ok(Vec::new());
    };
    let pattern = cross_pattern(m);
    let mut out = Vec::new();
    for left in [true, false] {
        let v: Vec<S> = (2..=n)
            .map(|j| {
                let v = mul(&two, &m.a(1, j));
                if left {
                    v
                } else {
                    mu.mu(j, 1) * v
                }
            })
            .collect();
        let vk = &v[k - 2];
        let mut u = Vec::with_capacity(n - 1);
        for j in 2..=n {
            let vj = &v[j - 2];
            let uj = if !m.a(1, j).is_zero() {
                m.a(j, j).div(vj)?
            } else {
                // Cross term of z_min(j,k) z_max(j,k) is 2 a_jk.
                let twice = mul(&two, &m.a(j, k));
                let base = twice.div(vk)?;
                match (left, j < k) {
                    (true, true) => base,
                    (true, false) => mu.mu(j, k) * base,
                    (false, true) => mu.mu(k, j) * base,
                    (false, false) => base,
                }
            };
            u.push(uj);
        }
        let mut with_z1 = vec![S::one()];
        with_z1.extend(u);
        let mut without = vec![S::zero()];
        without.extend(v);
        let (l1, l2, side) = if left {
            (with_z1, without, "left")
        } else {
            (without, with_z1, "right")
        };
        out.push(product(
            S::one(),
            LinearForm::new(l1),
            LinearForm::new(l2),
            format!("leading_zero/{pattern}/{side}"),
            None,
        ));
    }
    Ok(out)
}

/// Prepend `z1` with coefficient zero to every factor.
fn lift_past_first<S: Scalar>(f: Factorization<S>) -> Factorization<S> {
    let factors = f
        .factors
        .into_iter()
        .map(|l| {
            let mut coeffs = vec![S::zero()];
            coeffs.extend(l.coeffs);
            LinearForm::new(coeffs)
        })
        .collect();
    Factorization {
        factors,
        provenance: format!("leading_zero/no_cross/drop_z1/{}", f.provenance),
        ..f
    }
}

/// Every candidate the constructions produce for `q`, in trial order.
/// Forms on `z2..zn` alone are factored on those generators and lifted.
pub(crate) fn product_candidates<S: Scalar>(
    q: &QuadraticForm<S>,
    mu: &MuParams<S>,
) -> Result<Vec<Factorization<S>>> {
    let n = q.n();
    if q.is_zero() {
        return Ok(vec![product(
            S::one(),
            LinearForm::zero(n),
            LinearForm::zero(n),
            "zero_form".into(),
            None,
        )]);
    }
    let m = matrix_from_form(q, mu)?;
    if !m.a(1, 1).is_zero() {
        return leading_root_candidates(&m, mu);
    }
    if (2..=n).any(|j| !m.a(1, j).is_zero()) {
        return leading_zero_candidates(&m, mu);
    }
    let rest: Vec<usize> = (1..n).collect();
    let sub = product_candidates(&q.restrict(&rest), &mu.restrict(&rest))?;
    Ok(sub.into_iter().map(lift_past_first).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_vector_order() {
        assert_eq!(
            sign_vectors(2),
            vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]]
        );
        assert_eq!(sign_vectors(3)[1], vec![1, 1, -1]);
        assert_eq!(sign_vectors(0), vec![Vec::<i8>::new()]);
    }
}
