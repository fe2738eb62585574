use std::collections::BTreeMap;

use murank::prelude::*;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| Rational::new(p, q))
}

fn nonzero_rat() -> impl Strategy<Value = Rational> {
    prop_oneof![(1i64..=4, 1i64..=3), (-4i64..=-1, 1i64..=3)].prop_map(|(p, q)| Rational::new(p, q))
}

fn mu_strategy(n: usize) -> impl Strategy<Value = MuParams<QuadExt>> {
    prop::collection::vec(nonzero_rat(), n * (n - 1) / 2).prop_map(move |vals| {
        let mut it = vals.into_iter();
        MuParams::from_upper(n, |_, _| QuadExt::rational(it.next().unwrap())).unwrap()
    })
}

fn linear(n: usize) -> impl Strategy<Value = LinearForm<QuadExt>> {
    prop::collection::vec(rat(), n).prop_map(|v| LinearForm::new(v.into_iter().map(QuadExt::rational).collect()))
}

/// Expand `l1 * l2` word by word and bubble-sort each word into ascending
/// order, multiplying by `mu_ij` for every swap `z_j z_i -> mu_ij z_i z_j`.
fn naive_product(l1: &LinearForm<QuadExt>, l2: &LinearForm<QuadExt>, mu: &MuParams<QuadExt>) -> BTreeMap<(usize, usize), QuadExt> {
    let n = l1.n();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let mut word = [a, b];
            let mut c = l1.coeffs[a].clone() * l2.coeffs[b].clone();
            let mut swapped = true;
            while swapped {
                swapped = false;
                for k in 0..word.len() - 1 {
                    if word[k] > word[k + 1] {
                        c = c * mu.get(word[k + 1], word[k]).clone();
                        word.swap(k, k + 1);
                        swapped = true;
                    }
                }
            }
            let e = out.entry((word[0], word[1])).or_insert_with(QuadExt::zero);
            *e = e.clone() + c;
        }
    }
    out
}

proptest! {
    #[test]
    fn product_matches_word_rewriting(
        (mu, l1, l2) in (2usize..=4).prop_flat_map(|n| (mu_strategy(n), linear(n), linear(n)))
    ) {
        let q = multiply_linear(&l1, &l2, &mu).unwrap();
        let naive = naive_product(&l1, &l2, &mu);
        for i in 0..q.n() {
            for j in i..q.n() {
                let want = naive.get(&(i, j)).cloned().unwrap_or_else(QuadExt::zero);
                prop_assert_eq!(q.coeff(i, j), &want);
            }
        }
    }

    #[test]
    fn product_is_bilinear(
        (mu, a, b, c) in mu_strategy(4).prop_flat_map(|mu| (Just(mu), linear(4), linear(4), linear(4))),
        k in rat(),
    ) {
        let k = QuadExt::rational(k);
        let left = multiply_linear(&a.add(&b).unwrap(), &c, &mu).unwrap();
        let split = multiply_linear(&a, &c, &mu).unwrap().add(&multiply_linear(&b, &c, &mu).unwrap()).unwrap();
        prop_assert_eq!(left, split);
        let right = multiply_linear(&c, &a.scale(&k), &mu).unwrap();
        prop_assert_eq!(right, multiply_linear(&c, &a, &mu).unwrap().scale(&k));
    }

    #[test]
    fn commutative_product_is_symmetric(a in linear(4), b in linear(4)) {
        let mu = MuParams::commutative(4);
        let ab = multiply_linear(&a, &b, &mu).unwrap();
        prop_assert_eq!(&ab, &multiply_linear(&b, &a, &mu).unwrap());
        for i in 0..4 {
            for j in (i + 1)..4 {
                let want = a.coeffs[i].clone() * b.coeffs[j].clone() + a.coeffs[j].clone() * b.coeffs[i].clone();
                prop_assert_eq!(ab.coeff(i, j), &want);
            }
        }
    }

    #[test]
    fn json_round_trip(mu in mu_strategy(3), a in linear(3), b in linear(3)) {
        let q = multiply_linear(&a, &b, &mu).unwrap();
        let back: QuadraticForm<QuadExt> = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        prop_assert_eq!(back, q);
        let mu_back: MuParams<QuadExt> = serde_json::from_str(&serde_json::to_string(&mu).unwrap()).unwrap();
        prop_assert_eq!(mu_back, mu);
    }
}

#[test]
fn reversed_word_picks_up_multiplier() {
    let mu = MuParams::from_upper(2, |_, _| QuadExt::from_i64(5)).unwrap();
    let mut q = QuadraticForm::zero(2);
    q.add_word(1, 0, QuadExt::from_i64(1), &mu);
    assert_eq!(q.coeff(0, 1), &QuadExt::from_i64(5));
    q.add_word(0, 1, QuadExt::from_i64(-5), &mu);
    assert!(q.is_zero());
}

#[test]
fn inconsistent_multipliers_are_rejected() {
    let r = |v: i64| QuadExt::from_i64(v);
    assert!(MuParams::new(vec![vec![r(1), r(2)], vec![r(2), r(1)]]).is_err());
    assert!(MuParams::new(vec![vec![r(1), r(0)], vec![r(0), r(1)]]).is_err());
    assert!(MuParams::new(vec![vec![r(2), r(1)], vec![r(1), r(1)]]).is_err());
}

#[test]
fn mismatched_dimensions_are_rejected() {
    let mu = MuParams::<QuadExt>::commutative(3);
    let l3 = LinearForm::generator(3, 0);
    let l4 = LinearForm::generator(4, 0);
    assert!(matches!(
        multiply_linear(&l3, &l4, &mu),
        Err(murank::Error::DimensionMismatch { .. })
    ));
}

#[test]
fn display_is_readable() {
    let mu = MuParams::<QuadExt>::commutative(3);
    let q = parse_form("z1^2 + 4 z1*z2 - 1/2 z3^2", 3, &mu).unwrap();
    assert_eq!(q.to_string(), "z1^2 + 4*z1*z2 - 1/2*z3^2");
    assert_eq!(QuadraticForm::<QuadExt>::zero(2).to_string(), "0");
}

#[test]
fn restriction_keeps_selected_generators() {
    let mu = MuParams::from_upper(4, |i, j| QuadExt::from_i64((i + 2 * j + 1) as i64)).unwrap();
    let q = parse_form("z1*z2 + 3 z2*z3 + z4^2", 4, &mu).unwrap();
    assert!(!q.supported_on(&[0, 1, 2]));
    let r = q.restrict(&[1, 2]);
    assert_eq!(r.to_string(), "3*z1*z2");
    assert_eq!(mu.restrict(&[1, 2]).mu(1, 2), mu.mu(2, 3));
}
