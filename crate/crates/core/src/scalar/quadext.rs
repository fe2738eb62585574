use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::rational_from_json;
use super::{ComplexF, Rational, Scalar, ScalarError};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Square-free product of adjoined square roots, stored as the sorted list of
/// radicands (`-1`, primes, or an unfactored cofactor).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<BigInt>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn symbol(radicand: BigInt) -> Self {
        Monomial(vec![radicand])
    }

    pub fn radicands(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, radicand: &BigInt) -> bool {
        self.0.binary_search(radicand).is_ok()
    }

    /// `self * other`, reduced with `sqrt(p)^2 = p`. Returns the rational
    /// factor produced by the reduction and the remaining monomial.
    fn mul(&self, other: &Monomial) -> (BigInt, Monomial) {
        let mut factor = BigInt::one();
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factor *= &self.0[i];
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        (factor, Monomial(out))
    }

    fn parse(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut rads = Vec::new();
        for part in s.split('*') {
            let inner = part
                .trim()
                .strip_prefix("sqrt(")
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| ScalarError::Parse(format!("bad monomial {s:?}")))?;
            rads.push(
                inner
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| ScalarError::Parse(format!("bad radicand {inner:?}")))?,
            );
        }
        rads.sort();
        rads.dedup();
        Ok(Monomial(rads))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|r| format!("sqrt({r})")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of `Q(sqrt(r1), sqrt(r2), ...)` in the monomial basis.
///
/// Radicands are kept multiplicatively independent (square-free, split into
/// primes), so the algebra is a field and an element is zero iff every
/// coordinate is zero. `squares` records every symbol adjoined along the way,
/// including ones whose coordinates later cancelled.
#[derive(Clone, Debug, Default)]
pub struct QuadExt {
    squares: BTreeSet<BigInt>,
    coords: BTreeMap<Monomial, Rational>,
}

impl QuadExt {
    pub fn rational(r: Rational) -> Self {
        let mut coords = BTreeMap::new();
        if !r.is_zero() {
            coords.insert(Monomial::one(), r);
        }
        QuadExt {
            squares: BTreeSet::new(),
            coords,
        }
    }

    /// `coeff * sqrt(radicand)` for a radicand that is `-1` or square-free.
    pub fn symbol_term(coeff: Rational, radicand: BigInt) -> Self {
        let mut squares = BTreeSet::new();
        squares.insert(radicand.clone());
        let mut coords = BTreeMap::new();
        if !coeff.is_zero() {
            coords.insert(Monomial::symbol(radicand), coeff);
        }
        QuadExt { squares, coords }
    }

    /// Defining values (radicands) of every adjoined symbol.
    pub fn squares(&self) -> impl Iterator<Item = &BigInt> {
        self.squares.iter()
    }

    pub fn coords(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.coords.iter()
    }

    pub fn coord(&self, m: &Monomial) -> Rational {
        self.coords.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.keys().all(Monomial::is_one)
    }

    /// Negate every coordinate whose monomial contains `sqrt(radicand)`.
    /// This is the field automorphism fixing all other adjoined roots.
    pub fn sign_flip(&self, radicand: &BigInt) -> Result<Self, ScalarError> {
        if !self.squares.contains(radicand) {
            return Err(ScalarError::UnknownSymbol(radicand.to_string()));
        }
        let coords = self
            .coords
            .iter()
            .map(|(m, c)| {
                if m.contains(radicand) {
                    (m.clone(), -c.clone())
                } else {
                    (m.clone(), c.clone())
                }
            })
            .collect();
        Ok(QuadExt {
            squares: self.squares.clone(),
            coords,
        })
    }

    /// One square root of a rational, adjoining symbols as needed. The other
    /// root is its negation.
    pub fn sqrt_rational(r: &Rational) -> QuadExt {
        if let Some(s) = r.exact_sqrt() {
            return QuadExt::rational(s);
        }
        // r = n/d = (n*d)/d^2, so sqrt(r) = sqrt(n*d)/d.
        let nd = r.numer() * r.denom();
        let (outer, radicands) = square_free_split(&nd.abs());
        let mut rads = radicands;
        if nd.is_negative() {
            rads.push(BigInt::from(-1));
        }
        rads.sort();
        let coeff = Rational::from_bigints(outer, r.denom().clone());
        let squares = rads.iter().cloned().collect();
        let mut coords = BTreeMap::new();
        coords.insert(Monomial(rads), coeff);
        QuadExt { squares, coords }
    }

    fn merged_squares(&self, other: &QuadExt) -> BTreeSet<BigInt> {
        if other.squares.is_empty() {
            self.squares.clone()
        } else if self.squares.is_empty() {
            other.squares.clone()
        } else {
            self.squares.union(&other.squares).cloned().collect()
        }
    }
}

/// `m = outer^2 * prod(radicands)` with square-free radicands.
fn square_free_split(m: &BigInt) -> (BigInt, Vec<BigInt>) {
    let mut rest = m.clone();
    let mut outer = BigInt::one();
    let mut rads = Vec::new();
    let mut p: u64 = 2;
    while p <= TRIAL_DIVISION_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            outer *= bp.pow(e / 2);
            if e % 2 == 1 {
                rads.push(bp);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            outer *= s;
        } else {
            rads.push(rest);
        }
    }
    (outer, rads)
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let squares = self.merged_squares(&rhs);
        let mut coords = self.coords;
        for (m, c) in rhs.coords {
            let entry = coords.entry(m).or_insert_with(Rational::zero);
            *entry = &*entry + &c;
        }
        coords.retain(|_, c| !c.is_zero());
        QuadExt { squares, coords }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            squares: self.squares,
            coords: self.coords.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        self + (-rhs)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let squares = self.merged_squares(&rhs);
        let mut coords: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.coords {
            for (m2, c2) in &rhs.coords {
                let (factor, m) = m1.mul(m2);
                let term = &(c1 * c2) * &Rational::from(factor);
                let entry = coords.entry(m).or_insert_with(Rational::zero);
                *entry = &*entry + &term;
            }
        }
        coords.retain(|_, c| !c.is_zero());
        QuadExt { squares, coords }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coords.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::default()
    }

    fn one() -> Self {
        QuadExt::rational(Rational::one())
    }

    fn from_rational(r: &Rational) -> Self {
        QuadExt::rational(r.clone())
    }

    fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn sqrt_candidates(&self) -> Vec<Self> {
        let Some(r) = self.as_rational() else {
            return Vec::new();
        };
        if r.is_zero() {
            return vec![QuadExt::zero()];
        }
        let root = QuadExt::sqrt_rational(&r);
        vec![root.clone(), -root]
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        match self.as_rational() {
            Some(r) => Ok(QuadExt::rational(r.inv()?)),
            None => Err(ScalarError::Unsupported(format!(
                "inverse of non-rational extension element {self}"
            ))),
        }
    }

    fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coord(&Monomial::one()))
        } else {
            None
        }
    }

    fn to_complex(&self) -> ComplexF {
        let mut acc = ComplexF::zero();
        for (m, c) in &self.coords {
            let mut term = ComplexF::new(c.to_f64(), 0.0);
            for r in m.radicands() {
                let v = if r.is_negative() {
                    ComplexF::new(0.0, 1.0)
                } else {
                    ComplexF::new(Rational::from(r.clone()).to_f64().sqrt(), 0.0)
                };
                term = term * v;
            }
            acc = acc + term;
        }
        acc
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.is_rational() {
            return self.coord(&Monomial::one()).serialize(s);
        }
        let squares: BTreeMap<String, String> = self
            .squares
            .iter()
            .map(|r| (Monomial::symbol(r.clone()).to_string(), r.to_string()))
            .collect();
        let coords: BTreeMap<String, String> = self
            .coords
            .iter()
            .map(|(m, c)| (m.to_string(), c.to_string()))
            .collect();
        serde_json::json!({ "squares": squares, "coords": coords }).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = serde_json::Value::deserialize(d)?;
        let obj = match &v {
            serde_json::Value::Object(o) => o,
            other => return rational_from_json(other).map(QuadExt::rational).map_err(D::Error::custom),
        };
        let mut out = QuadExt::zero();
        if let Some(serde_json::Value::Object(sq)) = obj.get("squares") {
            for val in sq.values() {
                let r = rational_from_json(val).map_err(D::Error::custom)?;
                out.squares.insert(r.numer().clone());
            }
        }
        let coords = obj
            .get("coords")
            .and_then(|c| c.as_object())
            .ok_or_else(|| D::Error::custom("extension element needs a \"coords\" object"))?;
        for (k, val) in coords {
            let m = Monomial::parse(k).map_err(D::Error::custom)?;
            let c = rational_from_json(val).map_err(D::Error::custom)?;
            for r in m.radicands() {
                out.squares.insert(r.clone());
            }
            out = out
                + QuadExt {
                    squares: BTreeSet::new(),
                    coords: std::iter::once((m, c)).filter(|(_, c)| !c.is_zero()).collect(),
                };
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> QuadExt {
        QuadExt::rational(Rational::new(n, d))
    }

    #[test]
    fn perfect_square_roots() {
        let roots = q(4, 1).sqrt_candidates();
        assert_eq!(roots, vec![q(2, 1), q(-2, 1)]);
        assert_eq!(q(0, 1).sqrt_candidates(), vec![q(0, 1)]);
    }

    #[test]
    fn adjoined_root_satisfies_relation() {
        let roots = q(2, 1).sqrt_candidates();
        assert_eq!(roots.len(), 2);
        for x in roots {
            assert!(!x.is_rational());
            assert!((x.clone() * x - q(2, 1)).is_zero());
        }
    }

    #[test]
    fn roots_are_canonicalised() {
        // sqrt(8) = 2 sqrt(2), sqrt(-3/4) = 1/2 sqrt(-1) sqrt(3)
        let s8 = QuadExt::sqrt_rational(&Rational::from(8));
        let s2 = QuadExt::sqrt_rational(&Rational::from(2));
        assert!((s8.clone() - q(2, 1) * s2).is_zero());
        let r = QuadExt::sqrt_rational(&Rational::new(-3, 4));
        assert!((r.clone() * r.clone() + q(3, 4)).is_zero());
        assert_eq!(r.to_string(), "1/2*sqrt(-1)*sqrt(3)");
    }

    #[test]
    fn difference_of_squares() {
        let x = QuadExt::sqrt_rational(&Rational::from(5));
        let a = q(3, 2);
        let prod = (a.clone() + x.clone()) * (a.clone() - x);
        assert_eq!(prod, a.clone() * a - q(5, 1));
    }

    #[test]
    fn inversion() {
        assert_eq!(q(2, 1).try_inv().unwrap(), q(1, 2));
        assert_eq!(q(0, 1).try_inv(), Err(ScalarError::DivisionByZero));
        let x = QuadExt::sqrt_rational(&Rational::from(3));
        assert!(matches!(x.try_inv(), Err(ScalarError::Unsupported(_))));
    }

    #[test]
    fn flip_negates_symbol_terms() {
        let x = QuadExt::sqrt_rational(&Rational::from(2));
        let e = q(1, 1) + q(3, 1) * x.clone();
        let f = e.sign_flip(&BigInt::from(2)).unwrap();
        assert_eq!(f, q(1, 1) - q(3, 1) * x);
        assert!(matches!(e.sign_flip(&BigInt::from(3)), Err(ScalarError::UnknownSymbol(_))));
        // still adjoined after cancellation
        let c = e.clone() - e;
        assert!(c.sign_flip(&BigInt::from(2)).is_ok());
    }

    #[test]
    fn json_shapes() {
        assert_eq!(serde_json::to_string(&q(3, 4)).unwrap(), "\"3/4\"");
        let x = q(1, 2) + QuadExt::sqrt_rational(&Rational::from(-2));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"coords":{"1":"1/2","sqrt(-1)*sqrt(2)":"1"},"squares":{"sqrt(-1)":"-1","sqrt(2)":"2"}}"#
        );
        let back: QuadExt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn numeric_value() {
        let x = QuadExt::sqrt_rational(&Rational::from(-4)) + q(1, 1);
        let c = x.to_complex();
        assert!((c.re() - 1.0).abs() < 1e-12 && (c.im() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn large_prime_cofactor_kept_whole() {
        let p = Rational::from(1_000_003i64 * 1_000_033);
        let r = QuadExt::sqrt_rational(&p);
        assert!((r.clone() * r - QuadExt::rational(p)).is_zero());
    }
}
