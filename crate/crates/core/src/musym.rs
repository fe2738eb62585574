//! mu-symmetric matrices (`M_ij = mu_ij M_ji`) and their correspondence with
//! quadratic forms via `Q = z^T M z`.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{half, mul, Scalar};
use crate::skewring::{parse_pair_key, MuParams, QuadraticForm};
use crate::{Error, Result};

/// A mu-symmetric matrix together with the multipliers it is symmetric for.
///
/// The full `n x n` matrix is stored so the symmetry invariant can be checked
/// entrywise.
#[derive(Clone, Debug, PartialEq)]
pub struct MuSymMatrix<S> {
    mu: MuParams<S>,
    entries: Vec<S>,
}

impl<S: Scalar> MuSymMatrix<S> {
    /// Validate a full matrix against `mu`.
    pub fn new(rows: Vec<Vec<S>>, mu: MuParams<S>) -> Result<Self> {
        let n = mu.n();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let m = MuSymMatrix {
            mu,
            entries: rows.into_iter().flatten().collect(),
        };
        m.check_symmetry()?;
        Ok(m)
    }

    /// Build from representatives `a(i, j)`, `i <= j` (0-based arguments to
    /// `f`); the lower triangle is filled as `M_ji = mu_ji M_ij`.
    pub fn from_upper(mu: MuParams<S>, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let n = mu.n();
        let mut entries = vec![S::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                if i != j {
                    entries[j * n + i] = mul(mu.get(j, i), &v);
                }
                entries[i * n + j] = v;
            }
        }
        MuSymMatrix { mu, entries }
    }

    fn check_symmetry(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.get(i, j).clone();
                let rhs = mul(self.mu.get(i, j), self.get(j, i));
                if !(lhs - rhs).is_zero() {
                    return Err(Error::NotMuSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.mu.n()
    }

    pub fn mu(&self) -> &MuParams<S> {
        &self.mu
    }

    /// Entry `M_ij`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n() + j]
    }

    /// Representative entry `a_ij` with 1-based indices; `a(j, i)` returns
    /// `a(i, j)`.
    pub fn a(&self, i: usize, j: usize) -> S {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        self.get(i - 1, j - 1).clone()
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        let n = self.n();
        self.entries.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn scale(&self, k: &S) -> Self {
        MuSymMatrix {
            mu: self.mu.clone(),
            entries: self.entries.iter().map(|e| mul(e, k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}

/// `M_ii = c_ii`; for `i < j`, `M_ij = c_ij / 2` and `M_ji = mu_ji c_ij / 2`.
pub fn matrix_from_form<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<MuSymMatrix<S>> {
    if q.n() != mu.n() {
        return Err(Error::DimensionMismatch {
            expected: mu.n(),
            found: q.n(),
        });
    }
    let h = half::<S>();
    Ok(MuSymMatrix::from_upper(mu.clone(), |i, j| {
        if i == j {
            q.coeff(i, i).clone()
        } else {
            mul(q.coeff(i, j), &h)
        }
    }))
}

/// Expand `z^T M z` in normal order: `c_ii = M_ii`, `c_ij = M_ij + mu_ij M_ji`.
pub fn form_from_matrix<S: Scalar>(m: &MuSymMatrix<S>, mu: &MuParams<S>) -> Result<QuadraticForm<S>> {
    if m.n() != mu.n() {
        return Err(Error::DimensionMismatch {
            expected: mu.n(),
            found: m.n(),
        });
    }
    let checked = MuSymMatrix {
        mu: mu.clone(),
        entries: m.entries.clone(),
    };
    checked.check_symmetry()?;
    Ok(QuadraticForm::from_fn(mu.n(), |i, j| {
        if i == j {
            m.get(i, i).clone()
        } else {
            m.get(i, j).clone() + mul(mu.get(i, j), m.get(j, i))
        }
    }))
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<S> {
    n: usize,
    mu: Vec<Vec<S>>,
    a: BTreeMap<String, S>,
}

impl<S: Scalar + Serialize> Serialize for MuSymMatrix<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        let n = self.n();
        let mut a = BTreeMap::new();
        for i in 1..=n {
            for j in i..=n {
                a.insert(format!("{i}{j}"), self.a(i, j));
            }
        }
        MatrixRepr {
            n,
            mu: self.mu.rows(),
            a,
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar + DeserializeOwned> Deserialize<'de> for MuSymMatrix<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::<S>::deserialize(d)?;
        let mu = MuParams::new(repr.mu).map_err(D::Error::custom)?;
        if mu.n() != repr.n {
            return Err(D::Error::custom("n does not match mu"));
        }
        let mut upper = vec![S::zero(); repr.n * repr.n];
        for (k, v) in repr.a {
            let (i, j) = parse_pair_key(&k, repr.n).map_err(D::Error::custom)?;
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            upper[i * repr.n + j] = v;
        }
        let n = repr.n;
        Ok(MuSymMatrix::from_upper(mu, |i, j| upper[i * n + j].clone()))
    }
}
