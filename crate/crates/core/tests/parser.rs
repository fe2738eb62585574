use murank::parser::{parse_terms, ParseError};
use murank::prelude::*;
use murank::Error;
use proptest::prelude::*;

fn parse_err(text: &str, n: usize) -> ParseError {
    let mu = MuParams::<QuadExt>::commutative(n);
    match parse_form(text, n, &mu) {
        Err(Error::Parse(e)) => e,
        other => panic!("expected a parse error for {text:?}, got {other:?}"),
    }
}

#[test]
fn reversed_words_are_normal_ordered() {
    let mu: MuParams<QuadExt> = parse_mu("mu12=5", 2).unwrap();
    let q = parse_form("z2*z1", 2, &mu).unwrap();
    assert_eq!(q.coeff(0, 1), &QuadExt::from_i64(5));
}

#[test]
fn errors_carry_positions() {
    assert!(matches!(parse_err("z1 + z2", 2), ParseError::Degree { degree: 1, .. }));
    assert!(matches!(parse_err("z1^3", 2), ParseError::Degree { degree: 3, .. }));
    assert!(matches!(parse_err("z1^2 + z5^2", 4), ParseError::IndexOutOfRange { pos: 7, index: 5, n: 4 }));
    assert!(matches!(parse_err("z0*z1", 2), ParseError::IndexOutOfRange { index: 0, .. }));
    assert!(matches!(parse_err("z1^2 +", 2), ParseError::Syntax { pos: 6, .. }));
    assert!(matches!(parse_err("z1*z2*z1", 2), ParseError::Syntax { .. }));
    assert!(matches!(parse_err("3/0 z1^2", 2), ParseError::Syntax { .. }));
}

#[test]
fn constants_and_signs() {
    let mu = MuParams::<QuadExt>::commutative(2);
    assert!(parse_form("0", 2, &mu).unwrap().is_zero());
    assert!(matches!(parse_err("1", 2), ParseError::Degree { degree: 0, .. }));
    let q = parse_form("- z1^2 - 2/4*z1*z2", 2, &mu).unwrap();
    assert_eq!(q.to_string(), "-z1^2 - 1/2*z1*z2");
}

#[test]
fn multiplier_specifications() {
    let listed: MuParams<QuadExt> = parse_mu("mu12=2; mu31=3", 3).unwrap();
    assert_eq!(listed.mu(2, 1), QuadExt::rational(Rational::new(1, 2)));
    assert_eq!(listed.mu(1, 3), QuadExt::rational(Rational::new(1, 3)));
    assert_eq!(listed.mu(2, 3), QuadExt::from_i64(1));
    let json: MuParams<QuadExt> = parse_mu(r#"[[1, "2", 1], ["1/2", 1, 1], [1, 1, 1]]"#, 3).unwrap();
    assert_eq!(json.mu(1, 2), QuadExt::from_i64(2));
    assert_eq!(parse_mu::<QuadExt>("", 3).unwrap(), MuParams::commutative(3));
    assert!(matches!(parse_mu::<QuadExt>("mu12=0", 2), Err(Error::MuInvariant(_))));
    assert!(matches!(parse_mu::<QuadExt>("mu12=2, mu21=2", 2), Err(Error::MuInvariant(_))));
    assert!(parse_mu::<QuadExt>(r#"[[1, 2], [2, 1]]"#, 2).is_err());
    assert!(parse_mu::<QuadExt>("mu13=2", 2).is_err());
    assert!(parse_mu::<QuadExt>("nu12=2", 2).is_err());
}

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Rational::new(p, q))
}

const TOKENS: &[&str] = &["z1", "z2", "z3", "z9", "^2", "^", "*", "+", "-", "/", "3", "1/2", " ", "x", "0", "z"];

proptest! {
    #[test]
    fn display_parses_back(coeffs in prop::collection::vec(rat(), 10), mu_vals in prop::collection::vec(1i64..4, 6)) {
        let mut it = mu_vals.into_iter();
        let mu = MuParams::from_upper(4, |_, _| QuadExt::from_i64(it.next().unwrap())).unwrap();
        let mut c = coeffs.into_iter();
        let q = QuadraticForm::from_fn(4, |_, _| QuadExt::rational(c.next().unwrap()));
        prop_assert_eq!(parse_form(&q.to_string(), 4, &mu).unwrap(), q);
    }

    #[test]
    fn token_soup_never_panics(tokens in prop::collection::vec(prop::sample::select(TOKENS), 0..16)) {
        let text: String = tokens.concat();
        let _ = parse_terms(&text);
        let mu = MuParams::<QuadExt>::commutative(3);
        let _ = parse_form(&text, 3, &mu);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,40}") {
        let mu = MuParams::<QuadExt>::commutative(2);
        let _ = parse_form(&text, 2, &mu);
        let _ = parse_mu::<QuadExt>(&text, 2);
    }
}
