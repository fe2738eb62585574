//! Text input for quadratic forms and multipliers.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! form     := ['+' | '-'] term (('+' | '-') term)*
//! term     := [rational ['*']] monomial | rational
//! monomial := 'z' idx ('^2' | ['*' 'z' idx])
//! rational := digits ['/' digits]
//! ```
//!
//! A word `zj*zi` with `j > i` is normal-ordered through `mu_ij`. The only
//! constant accepted is zero, so `"0"` parses to the zero form.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use thiserror::Error as ThisError;

use crate::scalar::{Rational, Scalar};
use crate::skewring::{LinearForm, MuParams, QuadraticForm};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("term at position {pos} has degree {degree}, expected 2")]
    Degree { pos: usize, degree: usize },
    #[error("generator z{index} at position {pos} is out of range 1..={n}")]
    IndexOutOfRange { pos: usize, index: usize, n: usize },
    #[error("invalid mu specification: {0}")]
    Mu(String),
}

/// One parsed term: signed coefficient times a word in the generators
/// (1-based indices, in the order written).
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub pos: usize,
    pub coeff: Rational,
    pub word: Vec<usize>,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> std::result::Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn rational(&mut self) -> std::result::Result<Rational, ParseError> {
        let start = self.pos;
        let num = self.digits()?;
        let text = if self.eat(b'/') {
            format!("{num}/{}", self.digits()?)
        } else {
            num
        };
        text.parse().map_err(|e| ParseError::Syntax {
            pos: start,
            msg: format!("{e}"),
        })
    }

    fn generator(&mut self) -> std::result::Result<usize, ParseError> {
        if !self.eat(b'z') {
            return self.err("expected generator 'z<index>'");
        }
        let pos = self.pos;
        self.digits()?.parse().map_err(|_| ParseError::Syntax {
            pos,
            msg: "generator index too large".into(),
        })
    }

    fn monomial(&mut self) -> std::result::Result<Vec<usize>, ParseError> {
        let first = self.generator()?;
        if self.eat(b'^') {
            let pos = self.pos;
            let e = self.digits()?;
            return match e.as_str() {
                "2" => Ok(vec![first, first]),
                "1" => Ok(vec![first]),
                _ => Err(ParseError::Degree {
                    pos,
                    degree: e.parse().unwrap_or(usize::MAX),
                }),
            };
        }
        if self.peek() == Some(b'*') {
            self.pos += 1;
            let second = self.generator()?;
            return Ok(vec![first, second]);
        }
        Ok(vec![first])
    }

    fn term(&mut self, sign: bool) -> std::result::Result<Term, ParseError> {
        self.skip_ws();
        let pos = self.pos;
        let mut coeff = Rational::one();
        let mut word = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.rational()?;
                let had_star = self.eat(b'*');
                if self.peek() == Some(b'z') {
                    word = self.monomial()?;
                } else if had_star {
                    return self.err("expected monomial after '*'");
                }
            }
            Some(b'z') => word = self.monomial()?,
            Some(c) => return self.err(format!("unexpected character {:?}", c as char)),
            None => return self.err("unexpected end of input"),
        }
        if sign {
            coeff = -coeff;
        }
        Ok(Term { pos, coeff, word })
    }
}

/// Tokenize and parse into terms without validating degrees or indices.
pub fn parse_terms(text: &str) -> std::result::Result<Vec<Term>, ParseError> {
    let mut lx = Lexer::new(text);
    let mut terms = Vec::new();
    let mut neg = if lx.eat(b'-') {
        true
    } else {
        lx.eat(b'+');
        false
    };
    loop {
        terms.push(lx.term(neg)?);
        match lx.peek() {
            None => break,
            Some(b'+') => neg = false,
            Some(b'-') => neg = true,
            Some(c) => return lx.err(format!("expected '+' or '-', found {:?}", c as char)),
        }
        lx.pos += 1;
    }
    Ok(terms)
}

/// Parse a quadratic form on `n` generators, normal-ordering with `mu`.
pub fn parse_form<S: Scalar>(text: &str, n: usize, mu: &MuParams<S>) -> Result<QuadraticForm<S>> {
    if mu.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mu.n(),
        });
    }
    let mut q = QuadraticForm::zero(n);
    for t in parse_terms(text)? {
        if let Some(&index) = t.word.iter().find(|&&i| i == 0 || i > n) {
            return Err(ParseError::IndexOutOfRange { pos: t.pos, index, n }.into());
        }
        match t.word[..] {
            [i, j] => q.add_word(i - 1, j - 1, S::from_rational(&t.coeff), mu),
            [] if t.coeff.is_zero() => {}
            _ => {
                return Err(ParseError::Degree {
                    pos: t.pos,
                    degree: t.word.len(),
                }
                .into())
            }
        }
    }
    Ok(q)
}

/// Parse a linear form such as `z1 + 2z2 - 1/2*z4` on `n` generators.
pub fn parse_linear<S: Scalar>(text: &str, n: usize) -> Result<LinearForm<S>> {
    let mut l = LinearForm::<S>::zero(n);
    for t in parse_terms(text)? {
        if let Some(&index) = t.word.iter().find(|&&i| i == 0 || i > n) {
            return Err(ParseError::IndexOutOfRange { pos: t.pos, index, n }.into());
        }
        match t.word[..] {
            [i] => l.coeffs[i - 1] = l.coeffs[i - 1].clone() + S::from_rational(&t.coeff),
            [] if t.coeff.is_zero() => {}
            _ => {
                return Err(ParseError::Degree {
                    pos: t.pos,
                    degree: t.word.len(),
                }
                .into())
            }
        }
    }
    Ok(l)
}

/// Parse multipliers for `n` generators.
///
/// Accepts either a JSON matrix (`[[1, "2"], ["1/2", 1]]`, validated) or a
/// list of entries such as `"mu12=2, mu13=1/3"`. Listed entries may be in
/// either triangle; the opposite entry is filled with the reciprocal and
/// unlisted pairs default to 1.
pub fn parse_mu<S: Scalar + DeserializeOwned>(text: &str, n: usize) -> Result<MuParams<S>> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<S>> =
            serde_json::from_str(trimmed).map_err(|e| ParseError::Mu(e.to_string()))?;
        let mu = MuParams::new(rows)?;
        if mu.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mu.n(),
            });
        }
        return Ok(mu);
    }
    let mut upper: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for item in trimmed.split([',', ';']).map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| ParseError::Mu(format!("expected muIJ=value, got {item:?}")))?;
        let key = key.trim();
        let idx = key
            .strip_prefix("mu")
            .filter(|d| d.len() == 2 && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| ParseError::Mu(format!("bad key {key:?}")))?;
        let i = (idx.as_bytes()[0] - b'0') as usize;
        let j = (idx.as_bytes()[1] - b'0') as usize;
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(ParseError::Mu(format!("{key} is not an off-diagonal entry for n = {n}")).into());
        }
        let v: Rational = value
            .trim()
            .parse()
            .map_err(|e| ParseError::Mu(format!("{key}: {e}")))?;
        if v.is_zero() {
            return Err(Error::MuInvariant(format!("{key} is zero")));
        }
        let (pair, v) = if i < j { ((i, j), v) } else { ((j, i), v.inv()?) };
        if let Some(prev) = upper.insert(pair, v.clone()) {
            if prev != v {
                return Err(Error::MuInvariant(format!(
                    "mu{}{} given inconsistently",
                    pair.0, pair.1
                )));
            }
        }
    }
    MuParams::from_upper(n, |i, j| {
        upper
            .get(&(i + 1, j + 1))
            .map(S::from_rational)
            .unwrap_or_else(S::one)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QuadExt;

    const WORKED: &str =
        "z1^2 + 2z2^2 + 2z3^2 + 2z4^2 + 4z1*z2 + 4z1*z3 + 4z1*z4 + 6z2*z3 + 6z2*z4 + 6z3*z4";

    #[test]
    fn linear_forms() {
        let l: LinearForm<QuadExt> = parse_linear("z1 + 2z3 - 1/2*z1", 3).unwrap();
        assert_eq!(l.to_string(), "1/2*z1 + 2*z3");
        assert!(matches!(
            parse_linear::<QuadExt>("z1^2", 3),
            Err(Error::Parse(ParseError::Degree { degree: 2, .. }))
        ));
    }

    #[test]
    fn worked_example() {
        let mu: MuParams<QuadExt> = parse_mu("mu12=2,mu13=2,mu14=2,mu23=2,mu24=2,mu34=2", 4).unwrap();
        assert_eq!(mu.mu(2, 1), QuadExt::from_rational(&Rational::new(1, 2)));
        let q = parse_form(WORKED, 4, &mu).unwrap();
        assert_eq!(
            q.to_string(),
            "z1^2 + 4*z1*z2 + 4*z1*z3 + 4*z1*z4 + 2*z2^2 + 6*z2*z3 + 6*z2*z4 + 2*z3^2 + 6*z3*z4 + 2*z4^2"
        );
    }

    #[test]
    fn reversed_word() {
        let mu: MuParams<QuadExt> = parse_mu("mu12=5", 2).unwrap();
        let q = parse_form("z2*z1", 2, &mu).unwrap();
        assert_eq!(*q.coeff(0, 1), QuadExt::from_i64(5));
        let q = parse_form("-1/2 * z2 * z1 + z1*z1", 2, &mu).unwrap();
        assert_eq!(q.to_string(), "z1^2 - 5/2*z1*z2");
    }

    #[test]
    fn degree_errors() {
        let mu = MuParams::<QuadExt>::commutative(3);
        assert!(matches!(
            parse_form("z1 + z2", 3, &mu),
            Err(Error::Parse(ParseError::Degree { pos: 0, degree: 1 }))
        ));
        assert!(matches!(
            parse_form("z1^2 + 3", 3, &mu),
            Err(Error::Parse(ParseError::Degree { degree: 0, .. }))
        ));
        assert!(matches!(
            parse_form("z1^3", 3, &mu),
            Err(Error::Parse(ParseError::Degree { degree: 3, .. }))
        ));
        assert!(parse_form("0", 3, &mu).unwrap().is_zero());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let mu = MuParams::<QuadExt>::commutative(3);
        assert_eq!(
            parse_form("z1^2 + * z2^2", 3, &mu),
            Err(Error::Parse(ParseError::Syntax {
                pos: 7,
                msg: "unexpected character '*'".into()
            }))
        );
        assert!(matches!(
            parse_form("z1^2 z2^2", 3, &mu),
            Err(Error::Parse(ParseError::Syntax { pos: 5, .. }))
        ));
        assert!(matches!(
            parse_form("z4^2", 3, &mu),
            Err(Error::Parse(ParseError::IndexOutOfRange { index: 4, .. }))
        ));
        assert!(parse_form("", 3, &mu).is_err());
        assert!(parse_form("z1^2 +", 3, &mu).is_err());
    }

    #[test]
    fn mu_inputs() {
        let mu: MuParams<QuadExt> = parse_mu("", 3).unwrap();
        assert_eq!(mu, MuParams::commutative(3));
        let mu: MuParams<QuadExt> = parse_mu("mu21 = 1/3", 2).unwrap();
        assert_eq!(mu.mu(1, 2), QuadExt::from_i64(3));
        assert!(matches!(parse_mu::<QuadExt>("mu12=0", 2), Err(Error::MuInvariant(_))));
        assert!(matches!(
            parse_mu::<QuadExt>("[[1, 2], [3, 1]]", 2),
            Err(Error::MuInvariant(_))
        ));
        let full: MuParams<QuadExt> = parse_mu(r#"[[1, 2], ["1/2", 1]]"#, 2).unwrap();
        assert_eq!(full.mu(1, 2), QuadExt::from_i64(2));
        assert!(parse_mu::<QuadExt>("mu12=2,mu21=2", 2).is_err());
        assert!(parse_mu::<QuadExt>("mu13=2", 2).is_err());
    }
}
