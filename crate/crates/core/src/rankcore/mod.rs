//! mu-rank classification for three and four generators.

mod minors;
mod rootpoly;

pub use minors::{
    det7, dets3, dets4_a11nonzero, dets4_a11nonzero_with_roots, dets4_a11zero, discriminants,
    minors3, minors4, principal_roots, Dets4Zero,
};
pub use rootpoly::RootPoly;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::musym::{matrix_from_form, MuSymMatrix};
use crate::scalar::Scalar;
use crate::skewring::{MuParams, QuadraticForm};
use crate::{Error, Result};

/// Signs applied to the principal roots `X`, `Y`, `Z`. `z` is ignored for
/// three generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignChoice {
    pub x: i8,
    pub y: i8,
    pub z: i8,
}

impl SignChoice {
    pub const PLUS: SignChoice = SignChoice { x: 1, y: 1, z: 1 };

    /// All choices in search order: `+++` first, then counting with `X` as
    /// the most significant sign (`++-`, `+-+`, ...). Four choices for three
    /// generators, eight for four.
    pub fn all(n: usize) -> Vec<SignChoice> {
        let bits = if n == 3 { 2 } else { 3 };
        (0..1u8 << bits)
            .map(|k| {
                let s = |b: u8| if k & (1 << b) != 0 { -1 } else { 1 };
                if bits == 2 {
                    SignChoice { x: s(1), y: s(0), z: 1 }
                } else {
                    SignChoice { x: s(2), y: s(1), z: s(0) }
                }
            })
            .collect()
    }

    pub fn as_array(&self) -> [i8; 3] {
        [self.x, self.y, self.z]
    }

    pub fn apply<S: Scalar>(&self, roots: &[S; 3]) -> [S; 3] {
        let signs = self.as_array();
        std::array::from_fn(|k| {
            if signs[k] < 0 {
                -roots[k].clone()
            } else {
                roots[k].clone()
            }
        })
    }
}

impl fmt::Display for SignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.as_array() {
            write!(f, "{}", if s < 0 { '-' } else { '+' })?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SignChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let signs: Vec<i8> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(format!("bad sign character {c:?}")),
            })
            .collect::<std::result::Result<_, _>>()?;
        match signs[..] {
            [x, y] => Ok(SignChoice { x, y, z: 1 }),
            [x, y, z] => Ok(SignChoice { x, y, z }),
            _ => Err(format!("expected 2 or 3 signs, got {s:?}")),
        }
    }
}

impl Serialize for SignChoice {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignChoice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The classifier's verdict. `Three` is only produced for three generators;
/// for four generators ranks 3 and 4 are not separated and reported as
/// `AtLeast3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MuRank {
    Zero,
    One,
    Two,
    Three,
    AtLeast3,
}

impl MuRank {
    pub fn at_most_two(self) -> bool {
        matches!(self, MuRank::Zero | MuRank::One | MuRank::Two)
    }

    /// Equality that treats `Three` and `AtLeast3` as the same class.
    pub fn agrees_with(self, other: MuRank) -> bool {
        self == other || (!self.at_most_two() && !other.at_most_two())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MuRank::Zero => "0",
            MuRank::One => "1",
            MuRank::Two => "2",
            MuRank::Three => "3",
            MuRank::AtLeast3 => "at_least_3",
        }
    }
}

impl fmt::Display for MuRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MuRank::AtLeast3 => write!(f, ">=3"),
            r => write!(f, "{}", r.as_str()),
        }
    }
}

impl Serialize for MuRank {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for MuRank {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(match s.as_str() {
            "0" => MuRank::Zero,
            "1" => MuRank::One,
            "2" => MuRank::Two,
            "3" => MuRank::Three,
            "at_least_3" => MuRank::AtLeast3,
            other => return Err(serde::de::Error::custom(format!("unknown rank {other:?}"))),
        })
    }
}

/// Classifier output.
///
/// `d_values` holds every D evaluated on the way to the verdict, computed on
/// the normalized form (`a11` scaled to 1 when it was nonzero). Root-dependent
/// values are reported for `witness_signs` when present, else for `+++`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>"))]
pub struct RankReport<S> {
    pub n: usize,
    pub rank: MuRank,
    pub d_values: BTreeMap<usize, S>,
    pub witness_signs: Option<SignChoice>,
    pub normalized: bool,
}

/// Which root-dependent family to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootFamily {
    /// `D8`, three generators.
    D8,
    /// `D25`, `D26`, `D27`, four generators.
    D25To27,
}

impl RootFamily {
    fn n(self) -> usize {
        match self {
            RootFamily::D8 => 3,
            RootFamily::D25To27 => 4,
        }
    }
}

/// First sign choice (in [`SignChoice::all`] order) making every determinant
/// of the family vanish, with the determinant values for that choice.
///
/// The family is evaluated once with formal roots; each choice is obtained by
/// sign flips of that single evaluation.
pub fn exists_sign_vanishing<S: Scalar>(
    m: &MuSymMatrix<S>,
    family: RootFamily,
) -> Result<Option<(SignChoice, Vec<S>)>> {
    check_family(m, family)?;
    let formal = minors::root_dets_formal(m)?;
    let roots = principal_roots(m)?;
    for sign in SignChoice::all(m.n()) {
        let values: Vec<S> = formal
            .iter()
            .map(|p| {
                let mut p = p.clone();
                for (k, s) in sign.as_array().into_iter().enumerate() {
                    if s < 0 {
                        p = p.sign_flip(k);
                    }
                }
                p.specialize(&roots)
            })
            .collect();
        if values.iter().all(Scalar::is_zero) {
            return Ok(Some((sign, values)));
        }
    }
    Ok(None)
}

/// Same contract as [`exists_sign_vanishing`], evaluating the closed forms
/// afresh for every sign choice.
pub fn exists_sign_vanishing_direct<S: Scalar>(
    m: &MuSymMatrix<S>,
    family: RootFamily,
) -> Result<Option<(SignChoice, Vec<S>)>> {
    check_family(m, family)?;
    for sign in SignChoice::all(m.n()) {
        let values = match family {
            RootFamily::D8 => vec![dets3(m, sign)?[1].clone()],
            RootFamily::D25To27 => dets4_a11nonzero(m, sign)?.to_vec(),
        };
        if values.iter().all(Scalar::is_zero) {
            return Ok(Some((sign, values)));
        }
    }
    Ok(None)
}

fn check_family<S: Scalar>(m: &MuSymMatrix<S>, family: RootFamily) -> Result<()> {
    if m.n() != family.n() {
        return Err(Error::WrongN {
            expected: family.n(),
            found: m.n(),
        });
    }
    Ok(())
}

/// Scale `q` so that `c11 = a11` is 0 or 1. Returns the scaled form and
/// whether a rescaling happened.
pub fn normalize<S: Scalar>(q: &QuadraticForm<S>) -> Result<(QuadraticForm<S>, bool)> {
    let a11 = q.coeff(0, 0);
    if a11.is_zero() || a11.is_one() {
        Ok((q.clone(), false))
    } else {
        Ok((q.scale(&a11.try_inv()?), true))
    }
}

fn require_n(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::WrongN { expected, found })
    }
}

fn insert_all<S: Clone>(map: &mut BTreeMap<usize, S>, first: usize, values: &[S]) {
    for (k, v) in values.iter().enumerate() {
        map.insert(first + k, v.clone());
    }
}

/// mu-rank of a form on three generators: 0, 1, 2 or 3.
pub fn murank3<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<RankReport<S>> {
    require_n(mu.n(), 3)?;
    require_n(q.n(), 3)?;
    let (qn, normalized) = normalize(q)?;
    let m = matrix_from_form(&qn, mu)?;
    let mut d_values = BTreeMap::new();
    let minors = minors3(&m)?;
    insert_all(&mut d_values, 1, &minors);
    let mut report = RankReport {
        n: 3,
        rank: MuRank::Zero,
        d_values,
        witness_signs: None,
        normalized,
    };
    if qn.is_zero() {
        return Ok(report);
    }
    if minors.iter().all(Scalar::is_zero) {
        report.rank = MuRank::One;
        return Ok(report);
    }
    let rank_two = if m.a(1, 1).is_zero() {
        let d7 = det7(&m)?;
        let zero = d7.is_zero();
        report.d_values.insert(7, d7);
        zero
    } else {
        match exists_sign_vanishing(&m, RootFamily::D8)? {
            Some((sign, values)) => {
                report.d_values.insert(8, values[0].clone());
                report.witness_signs = Some(sign);
                true
            }
            None => {
                report.d_values.insert(8, dets3(&m, SignChoice::PLUS)?[1].clone());
                false
            }
        }
    };
    report.rank = if rank_two { MuRank::Two } else { MuRank::Three };
    Ok(report)
}

/// mu-rank of a form on four generators: 0, 1, 2 or at least 3.
pub fn murank4<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<RankReport<S>> {
    require_n(mu.n(), 4)?;
    require_n(q.n(), 4)?;
    let (qn, normalized) = normalize(q)?;
    let m = matrix_from_form(&qn, mu)?;
    let mut d_values = BTreeMap::new();
    let minors = minors4(&m)?;
    insert_all(&mut d_values, 1, &minors);
    let mut report = RankReport {
        n: 4,
        rank: MuRank::Zero,
        d_values,
        witness_signs: None,
        normalized,
    };
    if qn.is_zero() {
        return Ok(report);
    }
    if minors.iter().all(Scalar::is_zero) {
        report.rank = MuRank::One;
        return Ok(report);
    }
    let rank_two = if m.a(1, 1).is_zero() {
        let dets = dets4_a11zero(&m)?;
        insert_all(&mut report.d_values, 22, &dets.values);
        dets.all_zero()
    } else {
        match exists_sign_vanishing(&m, RootFamily::D25To27)? {
            Some((sign, values)) => {
                insert_all(&mut report.d_values, 25, &values);
                report.witness_signs = Some(sign);
                true
            }
            None => {
                let values = dets4_a11nonzero(&m, SignChoice::PLUS)?;
                insert_all(&mut report.d_values, 25, &values);
                false
            }
        }
    };
    report.rank = if rank_two { MuRank::Two } else { MuRank::AtLeast3 };
    Ok(report)
}

/// Dispatch on the number of generators.
pub fn murank<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<RankReport<S>> {
    match mu.n() {
        3 => murank3(q, mu),
        4 => murank4(q, mu),
        n => Err(Error::WrongN { expected: 4, found: n }),
    }
}

/// Every D of the generator count, root-dependent ones at `+++`, keyed by
/// index. Evaluated on the form as given (no normalization).
pub fn all_d_values<S: Scalar>(q: &QuadraticForm<S>, mu: &MuParams<S>) -> Result<BTreeMap<usize, S>> {
    let m = matrix_from_form(q, mu)?;
    let mut out = BTreeMap::new();
    match m.n() {
        3 => {
            insert_all(&mut out, 1, &minors3(&m)?);
            insert_all(&mut out, 7, &dets3(&m, SignChoice::PLUS)?);
        }
        4 => {
            insert_all(&mut out, 1, &minors4(&m)?);
            insert_all(&mut out, 22, &dets4_a11zero(&m)?.values);
            insert_all(&mut out, 25, &dets4_a11nonzero(&m, SignChoice::PLUS)?);
        }
        n => return Err(Error::WrongN { expected: 4, found: n }),
    }
    Ok(out)
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// Rename generators `z_i -> z_{perm[i-1]}` (1-based images).
///
/// The multipliers move with the generators, `mu'_{p(i) p(j)} = mu_ij`, so the
/// renaming is a ring isomorphism; a coefficient whose pair lands in
/// decreasing order is normal-ordered with the transported multiplier.
pub fn relabel<S: Scalar>(
    q: &QuadraticForm<S>,
    mu: &MuParams<S>,
    perm: &[usize],
) -> Result<(QuadraticForm<S>, MuParams<S>)> {
    let n = mu.n();
    if q.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: q.n() });
    }
    check_perm(perm, n)?;
    let p: Vec<usize> = perm.iter().map(|x| x - 1).collect();
    let mut rows = vec![vec![S::one(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[p[i]][p[j]] = mu.get(i, j).clone();
        }
    }
    let mu2 = MuParams::new(rows)?;
    let mut q2 = QuadraticForm::zero(n);
    for ((i, j), c) in q.iter() {
        q2.add_word(p[i], p[j], c.clone(), &mu2);
    }
    Ok((q2, mu2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QuadExt;

    fn q(v: i64) -> QuadExt {
        QuadExt::from_i64(v)
    }

    #[test]
    fn sign_order() {
        let all: Vec<String> = SignChoice::all(4).iter().map(|s| s.to_string()).collect();
        assert_eq!(all, ["+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---"]);
        let three: Vec<String> = SignChoice::all(3).iter().map(|s| s.to_string()).collect();
        assert_eq!(three, ["+++", "+-+", "-++", "--+"]);
        assert_eq!("+-".parse::<SignChoice>().unwrap(), SignChoice { x: 1, y: -1, z: 1 });
    }

    #[test]
    fn small_ranks() {
        let mu3 = MuParams::from_upper(3, |_, _| q(3)).unwrap();
        assert_eq!(murank3(&QuadraticForm::zero(3), &mu3).unwrap().rank, MuRank::Zero);
        let mut sq = QuadraticForm::zero(3);
        *sq.coeff_mut(0, 0) = q(1);
        assert_eq!(murank3(&sq, &mu3).unwrap().rank, MuRank::One);
        let mut cross = QuadraticForm::zero(3);
        *cross.coeff_mut(0, 1) = q(2);
        let r = murank3(&cross, &mu3).unwrap();
        assert_eq!(r.rank, MuRank::Two);
        assert_eq!(r.d_values[&1], q(4));
        assert_eq!(r.d_values[&7], q(0));

        let mu4 = MuParams::from_upper(4, |_, _| q(-2)).unwrap();
        let mut sq4 = QuadraticForm::zero(4);
        *sq4.coeff_mut(0, 0) = q(5);
        let r = murank4(&sq4, &mu4).unwrap();
        assert_eq!(r.rank, MuRank::One);
        assert!(r.normalized);
    }

    #[test]
    fn relabel_moves_cross_term() {
        let mu = MuParams::from_upper(4, |i, j| q((1 + i + 3 * j) as i64)).unwrap();
        let mut f = QuadraticForm::zero(4);
        *f.coeff_mut(0, 3) = q(2);
        let (g, mu2) = relabel(&f, &mu, &[1, 4, 3, 2]).unwrap();
        assert_eq!(g.to_string(), "2*z1*z2");
        assert_eq!(mu2.mu(1, 2), mu.mu(1, 4));
        let (h, mu3) = relabel(&f, &mu, &[1, 2, 3, 4]).unwrap();
        assert_eq!((h, mu3), (f.clone(), mu.clone()));
        assert!(matches!(
            relabel(&f, &mu, &[1, 1, 3, 4]),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn relabel_reverses_order() {
        let mu = MuParams::from_upper(2, |_, _| q(3)).unwrap();
        let mut f = QuadraticForm::zero(2);
        *f.coeff_mut(0, 1) = q(1);
        let (g, mu2) = relabel(&f, &mu, &[2, 1]).unwrap();
        // z1 z2 becomes z2 z1 = mu'_12 z1 z2 with mu'_12 = mu_21 = 1/3.
        assert_eq!(mu2.mu(1, 2), mu.mu(2, 1));
        assert_eq!(*g.coeff(0, 1), mu.mu(2, 1));
    }
}
