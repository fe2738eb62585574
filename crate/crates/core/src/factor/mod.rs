//! Explicit factorizations `Q = L^2` and `Q = c L1 L2`.
//!
//! Constructions only propose candidates. Nothing is returned unless
//! re-expanding it reproduces `Q`.

mod product;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::musym::matrix_from_form;
use crate::rankcore::{murank, MuRank, RankReport, SignChoice};
use crate::scalar::Scalar;
use crate::skewring::{multiply_linear, LinearForm, MuParams, QuadraticForm};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Square,
    Product,
}

/// `prefactor * L^2` or `prefactor * L1 * L2`.
///
/// `provenance` names the construction that produced the factors;
/// `signs` records the root signs for root-based constructions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct Factorization<S> {
    pub kind: FactorKind,
    pub prefactor: S,
    pub factors: Vec<LinearForm<S>>,
    pub provenance: String,
    pub signs: Option<SignChoice>,
    #[serde(default, skip_serializing)]
    pub verified: bool,
}

impl<S: Scalar> Factorization<S> {
    /// `prefactor * (product of factors)` in normal order.
    pub fn expand(&self, mu: &MuParams<S>) -> Result<QuadraticForm<S>> {
        let (l1, l2) = match (self.kind, &self.factors[..]) {
            (FactorKind::Square, [l]) => (l, l),
            (FactorKind::Product, [l1, l2]) => (l1, l2),
            _ => {
                return Err(Error::Precondition(format!(
                    "{:?} factorization with {} factors",
                    self.kind,
                    self.factors.len()
                )))
            }
        };
        Ok(multiply_linear(l1, l2, mu)?.scale(&self.prefactor))
    }
}

impl<S: Scalar> fmt::Display for Factorization<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefactor.is_one() {
            match self.prefactor.as_rational() {
                Some(r) => write!(f, "{r} * ")?,
                None => write!(f, "({}) * ", self.prefactor)?,
            }
        }
        match self.kind {
            FactorKind::Square => write!(f, "({})^2", self.factors[0]),
            FactorKind::Product => write!(f, "({}) * ({})", self.factors[0], self.factors[1]),
        }
    }
}

/// True iff the factorization expands to `q`.
pub fn verify_factorization<S: Scalar>(q: &QuadraticForm<S>, f: &Factorization<S>, mu: &MuParams<S>) -> bool {
    if f.factors.iter().any(|l| l.n() != q.n()) || q.n() != mu.n() {
        return false;
    }
    match f.expand(mu) {
        Ok(e) => e.eq(q).unwrap_or(false),
        Err(_) => false,
    }
}

fn first_verified<S: Scalar>(
    q: &QuadraticForm<S>,
    mu: &MuParams<S>,
    candidates: Vec<Factorization<S>>,
) -> Option<Factorization<S>> {
    candidates.into_iter().find_map(|mut f| {
        if verify_factorization(q, &f, mu) {
            f.verified = true;
            Some(f)
        } else {
            None
        }
    })
}

fn check_dims<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<()> {
    if q.n() != mu.n() {
        return Err(Error::DimensionMismatch {
            expected: mu.n(),
            found: q.n(),
        });
    }
    if !(1..=4).contains(&q.n()) {
        return Err(Error::WrongN {
            expected: 4,
            found: q.n(),
        });
    }
    Ok(())
}

/// `L` with `Q = L^2`, if one exists.
///
/// Any such `L` has `alpha_i^2 = a_ii`, so trying every sign pattern over
/// the square roots of the diagonal is exhaustive.
pub fn factor_square<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<Option<Factorization<S>>> {
    check_dims(q, mu)?;
    let n = q.n();
    let mut roots = Vec::with_capacity(n);
    for i in 0..n {
        let cands = q.coeff(i, i).sqrt_candidates();
        if cands.is_empty() {
            return Err(crate::ScalarError::Unsupported(format!(
                "no square root of {} in this backend",
                q.coeff(i, i)
            ))
            .into());
        }
        roots.push(cands);
    }
    let mut candidates = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let coeffs = (0..n).map(|i| roots[i][idx[i]].clone()).collect();
        candidates.push(Factorization {
            kind: FactorKind::Square,
            prefactor: S::one(),
            factors: vec![LinearForm::new(coeffs)],
            provenance: "square/diagonal_roots".into(),
            signs: None,
            verified: false,
        });
        let mut t = n;
        loop {
            if t == 0 {
                return Ok(first_verified(q, mu, candidates));
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < roots[t].len() {
                break;
            }
            idx[t] = 0;
        }
    }
}

/// `Q = L1 L2` for four generators with `a11 = 0`.
pub fn factor_product_a11zero<S: Scalar>(
    q: &QuadraticForm<S>,
    mu: &MuParams<S>,
) -> Result<Option<Factorization<S>>> {
    check_four(q, mu)?;
    if !q.coeff(0, 0).is_zero() {
        return Err(Error::Precondition("a11 must be zero".into()));
    }
    Ok(first_verified(q, mu, product::product_candidates(q, mu)?))
}

/// `Q = a11^-1 L1 L2` for four generators with `a11 != 0`.
pub fn factor_product_a11nonzero<S: Scalar>(
    q: &QuadraticForm<S>,
    mu: &MuParams<S>,
) -> Result<Option<Factorization<S>>> {
    check_four(q, mu)?;
    if q.coeff(0, 0).is_zero() {
        return Err(Error::Precondition("a11 must be nonzero".into()));
    }
    let m = matrix_from_form(q, mu)?;
    Ok(first_verified(q, mu, product::leading_root_candidates(&m, mu)?))
}

fn check_four<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<()> {
    check_dims(q, mu)?;
    if q.n() != 4 {
        return Err(Error::WrongN {
            expected: 4,
            found: q.n(),
        });
    }
    Ok(())
}

/// `Q = c L1 L2` for one to four generators, dispatching on `a11`.
pub fn factor_product<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<Option<Factorization<S>>> {
    check_dims(q, mu)?;
    Ok(first_verified(q, mu, product::product_candidates(q, mu)?))
}

/// A square if there is one, otherwise a product.
pub fn factorize<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<Option<Factorization<S>>> {
    match factor_square(q, mu)? {
        Some(f) => Ok(Some(f)),
        None => factor_product(q, mu),
    }
}

/// Classifier verdict next to the factor search, with any disagreement.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Serialize"))]
pub struct CrossCheck<S> {
    pub report: RankReport<S>,
    pub factorization: Option<Factorization<S>>,
    /// Set when the classifier and the constructions disagree.
    pub inconsistency: Option<String>,
}

/// Classify `q` and independently search for a factorization.
///
/// Rank 1 must come with a square, rank 2 with a product and no square,
/// rank >= 3 with neither. Anything else is reported as an inconsistency.
pub fn classify_and_factor<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<CrossCheck<S>> {
    let report = murank(q, mu)?;
    let square = factor_square(q, mu)?;
    let product = if square.is_none() { factor_product(q, mu)? } else { None };
    let inconsistency = match (report.rank, &square, &product) {
        (MuRank::Zero, _, _) if q.is_zero() => None,
        (MuRank::One, Some(_), _) => None,
        (MuRank::Two, None, Some(_)) => None,
        (MuRank::Three | MuRank::AtLeast3, None, None) => None,
        (rank, s, p) => Some(format!(
            "classifier reports rank {rank} but square search {} and product search {}",
            if s.is_some() { "succeeded" } else { "failed" },
            if p.is_some() {
                "succeeded"
            } else if s.is_some() {
                "was skipped"
            } else {
                "failed"
            },
        )),
    };
    Ok(CrossCheck {
        report,
        factorization: square.or(product),
        inconsistency,
    })
}
