use murank::prelude::*;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

fn mu4() -> impl Strategy<Value = MuParams<QuadExt>> {
    prop::collection::vec(prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)], 6).prop_map(|v| {
        let mut it = v.into_iter();
        MuParams::from_upper(4, |_, _| QuadExt::from_i64(it.next().unwrap())).unwrap()
    })
}

fn form4() -> impl Strategy<Value = QuadraticForm<QuadExt>> {
    prop::collection::vec(rat(), 10).prop_map(|v| {
        let mut it = v.into_iter();
        QuadraticForm::from_fn(4, |_, _| QuadExt::rational(it.next().unwrap()))
    })
}

proptest! {
    #[test]
    fn form_matrix_round_trip(mu in mu4(), q in form4()) {
        let m = matrix_from_form(&q, &mu).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j {
                    q.coeff(i, i).clone()
                } else if i < j {
                    q.coeff(i, j).clone() * QuadExt::rational(Rational::new(1, 2))
                } else {
                    mu.get(i, j).clone() * m.get(j, i).clone()
                };
                prop_assert_eq!(m.get(i, j), &want);
            }
        }
        prop_assert_eq!(form_from_matrix(&m, &mu).unwrap(), q);
    }

    #[test]
    fn matrix_json_round_trip(mu in mu4(), q in form4()) {
        let m = matrix_from_form(&q, &mu).unwrap();
        let back: MuSymMatrix<QuadExt> = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }
}

#[test]
fn worked_example_matrix() {
    let mu: MuParams<QuadExt> = parse_mu("mu12=2,mu13=2,mu14=2,mu23=2,mu24=2,mu34=2", 4).unwrap();
    let q = parse_form(
        "z1^2 + 2z2^2 + 2z3^2 + 2z4^2 + 4z1*z2 + 4z1*z3 + 4z1*z4 + 6z2*z3 + 6z2*z4 + 6z3*z4",
        4,
        &mu,
    )
    .unwrap();
    let m = matrix_from_form(&q, &mu).unwrap();
    assert_eq!(m.a(1, 1), QuadExt::from_i64(1));
    assert_eq!(m.a(1, 2), QuadExt::from_i64(2));
    assert_eq!(m.a(2, 1), QuadExt::from_i64(2));
    assert_eq!(*m.get(1, 0), QuadExt::from_i64(1));
    assert_eq!(m.a(3, 4), QuadExt::from_i64(3));
}

#[test]
fn asymmetric_matrix_is_rejected() {
    let mu = MuParams::from_upper(2, |_, _| QuadExt::from_i64(2)).unwrap();
    let r = |v: i64| QuadExt::from_i64(v);
    assert!(MuSymMatrix::new(vec![vec![r(1), r(3)], vec![r(3), r(1)]], mu.clone()).is_err());
    let ok = MuSymMatrix::new(vec![vec![r(1), r(4)], vec![r(2), r(1)]], mu.clone()).unwrap();
    assert_eq!(form_from_matrix(&ok, &mu).unwrap().to_string(), "z1^2 + 8*z1*z2 + z2^2");
}
