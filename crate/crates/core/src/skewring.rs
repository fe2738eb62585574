//! Degree <= 2 arithmetic in the skew polynomial ring
//! `S = T(V) / (zj zi - mu_ij zi zj)`.
//!
//! Normal order is ascending generator index. At degree 2 the single
//! rewriting rule `zj zi -> mu_ij zi zj` (j > i) is confluent, so a quadratic
//! form is stored as its normal-form coefficients `c_ii` and `c_ij` (i < j).
//! Indices are 0-based unless a method says otherwise.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{mul, Scalar};
use crate::{Error, Result};

/// The multipliers `mu_ij` defining `S`.
///
/// Invariants: `mu_ii = 1`, `mu_ij * mu_ji = 1`, every entry nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct MuParams<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> MuParams<S> {
    /// Validate a full matrix.
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::MuInvariant("mu must be a square matrix".into()));
        }
        let mp = MuParams {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        mp.validate()?;
        Ok(mp)
    }

    /// Build from the strict upper triangle; the lower triangle is filled
    /// with reciprocals and the diagonal with ones.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut entries = vec![S::one(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                let inv = v.try_inv().map_err(|_| {
                    Error::MuInvariant(format!("mu{}{} must be nonzero", i + 1, j + 1))
                })?;
                entries[i * n + j] = v;
                entries[j * n + i] = inv;
            }
        }
        Ok(MuParams { n, entries })
    }

    /// All multipliers equal to one: the commutative polynomial ring.
    pub fn commutative(n: usize) -> Self {
        MuParams {
            n,
            entries: vec![S::one(); n * n],
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.get(i, i).is_one() {
                return Err(Error::MuInvariant(format!("mu{}{} must be 1", i + 1, i + 1)));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if self.get(i, j).is_zero() {
                    return Err(Error::MuInvariant(format!("mu{}{} is zero", i + 1, j + 1)));
                }
                if !mul(self.get(i, j), self.get(j, i)).is_one() {
                    return Err(Error::MuInvariant(format!(
                        "mu{a}{b} * mu{b}{a} != 1",
                        a = i + 1,
                        b = j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `mu_ij`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    /// `mu_ij` with 1-based indices, matching the usual notation.
    pub fn mu(&self, i: usize, j: usize) -> S {
        self.get(i - 1, j - 1).clone()
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Multipliers among the listed generators, in the listed order.
    pub fn restrict(&self, gens: &[usize]) -> MuParams<S> {
        let k = gens.len();
        let mut entries = Vec::with_capacity(k * k);
        for &a in gens {
            for &b in gens {
                entries.push(self.get(a, b).clone());
            }
        }
        MuParams { n: k, entries }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MuParams<T> {
        MuParams {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar + Serialize> Serialize for MuParams<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        self.rows().serialize(s)
    }
}

impl<'de, S: Scalar + DeserializeOwned> Deserialize<'de> for MuParams<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<S>> = Vec::deserialize(d)?;
        MuParams::new(rows).map_err(serde::de::Error::custom)
    }
}

/// An element `a1 z1 + ... + an zn` of `S_1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> LinearForm<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        LinearForm {
            coeffs: vec![S::zero(); n],
        }
    }

    /// The generator `z_{i+1}`.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut l = Self::zero(n);
        l.coeffs[i] = S::one();
        l
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn scale(&self, k: &S) -> Self {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| mul(c, k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n(), other.n())?;
        Ok(LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LinearForm<T> {
        LinearForm {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for LinearForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (c, format!("z{}", i + 1)));
        write_terms(f, terms)
    }
}

/// An element of `S_2`, stored in normal order.
///
/// `diag[i]` is the coefficient of `z_i^2`; `upper` holds the coefficient of
/// `z_i z_j` for `i < j` in lexicographic pair order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<S> {
    n: usize,
    diag: Vec<S>,
    upper: Vec<S>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

impl<S: Scalar> QuadraticForm<S> {
    pub fn zero(n: usize) -> Self {
        QuadraticForm {
            n,
            diag: vec![S::zero(); n],
            upper: vec![S::zero(); n * n.saturating_sub(1) / 2],
        }
    }

    /// Build from normal-form coefficients `f(i, j)` for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut q = Self::zero(n);
        for i in 0..n {
            for j in i..n {
                *q.coeff_mut(i, j) = f(i, j);
            }
        }
        q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Normal-form coefficient of `z_i z_j`; the pair is sorted first.
    pub fn coeff(&self, i: usize, j: usize) -> &S {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if i == j {
            &self.diag[i]
        } else {
            &self.upper[pair_index(self.n, i, j)]
        }
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize) -> &mut S {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if i == j {
            &mut self.diag[i]
        } else {
            let k = pair_index(self.n, i, j);
            &mut self.upper[k]
        }
    }

    /// Add `c * z_i z_j` for an arbitrary (not necessarily ordered) word,
    /// normal-ordering with `mu` when `i > j`.
    pub fn add_word(&mut self, i: usize, j: usize, c: S, mu: &MuParams<S>) {
        let c = if i > j { c * mu.get(j, i).clone() } else { c };
        let slot = self.coeff_mut(i, j);
        *slot = slot.clone() + c;
    }

    /// Coefficients in canonical order: `(i, j)` with `i <= j`, row by row.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        (0..self.n).flat_map(move |i| (i..self.n).map(move |j| ((i, j), self.coeff(i, j))))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|c| mul(c, k))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        QuadraticForm {
            n: self.n,
            diag: self.diag.iter().zip(&other.diag).map(|(a, b)| f(a, b)).collect(),
            upper: self.upper.iter().zip(&other.upper).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.diag.iter().chain(&self.upper).all(Scalar::is_zero)
    }

    /// Equality through the backend zero test on coefficient differences.
    pub fn eq(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// The sub-form on the listed generators (renumbered in listed order,
    /// which must be increasing). Terms involving other generators are dropped.
    pub fn restrict(&self, gens: &[usize]) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0] < w[1]));
        Self::from_fn(gens.len(), |a, b| self.coeff(gens[a], gens[b]).clone())
    }

    /// True when every term involves only the listed generators.
    pub fn supported_on(&self, gens: &[usize]) -> bool {
        self.iter()
            .all(|((i, j), c)| c.is_zero() || (gens.contains(&i) && gens.contains(&j)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QuadraticForm<T> {
        QuadraticForm {
            n: self.n,
            diag: self.diag.iter().map(&f).collect(),
            upper: self.upper.iter().map(&f).collect(),
        }
    }

    /// Largest coefficient magnitude, for diagnostics.
    pub fn max_abs(&self) -> f64 {
        self.diag
            .iter()
            .chain(&self.upper)
            .map(|c| c.to_complex().norm())
            .fold(0.0, f64::max)
    }
}

/// Render `c * monomial` terms as `c1*m1 + c2*m2 - ...`, dropping zeros and
/// unit coefficients.
fn write_terms<'a, S: Scalar>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a S, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, coeff) = match c.as_rational() {
            Some(r) => {
                let mag = r.abs();
                let text = if mag.is_one() { String::new() } else { format!("{mag}*") };
                (r.is_negative(), text)
            }
            None => (false, format!("({c})*")),
        };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        write!(f, "{coeff}{mono}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for QuadraticForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.iter().map(|((i, j), c)| {
            let mono = if i == j {
                format!("z{}^2", i + 1)
            } else {
                format!("z{}*z{}", i + 1, j + 1)
            };
            (c, mono)
        });
        write_terms(f, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr<S> {
    n: usize,
    coeffs: BTreeMap<String, S>,
}

impl<S: Scalar + Serialize> Serialize for QuadraticForm<S> {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        let coeffs = self
            .iter()
            .map(|((i, j), c)| (format!("{}{}", i + 1, j + 1), c.clone()))
            .collect();
        FormRepr { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de, S: Scalar + DeserializeOwned> Deserialize<'de> for QuadraticForm<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = FormRepr::<S>::deserialize(d)?;
        let mut q = QuadraticForm::zero(repr.n);
        for (k, v) in repr.coeffs {
            let (i, j) = parse_pair_key(&k, repr.n).map_err(D::Error::custom)?;
            *q.coeff_mut(i, j) = v;
        }
        Ok(q)
    }
}

/// `"12"` -> `(0, 1)`; single-digit indices only (n <= 9).
pub(crate) fn parse_pair_key(k: &str, n: usize) -> std::result::Result<(usize, usize), String> {
    let digits: Vec<usize> = k
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| format!("bad index key {k:?}"))?;
    match digits[..] {
        [i, j] if (1..=n).contains(&i) && (1..=n).contains(&j) => Ok((i - 1, j - 1)),
        _ => Err(format!("bad index key {k:?} for n = {n}")),
    }
}

/// `l1 * l2` in normal order: `c_ii = a_i b_i`, `c_ij = a_i b_j + mu_ij a_j b_i`.
pub fn multiply_linear<S: Scalar>(
    l1: &LinearForm<S>,
    l2: &LinearForm<S>,
    mu: &MuParams<S>,
) -> Result<QuadraticForm<S>> {
    let n = mu.n();
    check_n(n, l1.n())?;
    check_n(n, l2.n())?;
    let a = &l1.coeffs;
    let b = &l2.coeffs;
    Ok(QuadraticForm::from_fn(n, |i, j| {
        if i == j {
            mul(&a[i], &b[i])
        } else {
            mul(&a[i], &b[j]) + mu.get(i, j).clone() * mul(&a[j], &b[i])
        }
    }))
}
