use proptest::prelude::*;
use ybe_growth::series::{expand_rational, q, qr, BivariateSeries, Polynomial, RationalGf, TruncatedSeries};
use ybe_growth::Error;

fn ints(s: &TruncatedSeries) -> Vec<i64> {
    s.to_i64()
}

#[test]
fn expansions_of_small_closed_forms() {
    assert_eq!(ints(&RationalGf::integers().expand(4)), vec![1, 2, 2, 2, 2]);
    let cube = RationalGf::integers().pow(3).expand(6);
    assert_eq!(ints(&cube)[..4], [1, 6, 18, 38]);
    for n in 1..=6 {
        assert_eq!(ints(&cube)[n], 4 * (n as i64) * (n as i64) + 2);
    }
    let g3 = RationalGf::integers().mul_poly(&Polynomial::from_ints(&[1, 4, -2]));
    assert_eq!(ints(&g3.expand(5)), vec![1, 6, 8, 6, 6, 6]);
}

#[test]
fn expansion_needs_unit_constant_term() {
    let e = expand_rational(&Polynomial::one(), &Polynomial::from_ints(&[0, 1]), 3);
    assert!(matches!(e, Err(Error::NotExpandable)));
    assert!(RationalGf::from_ints(&[1], &[0, 1]).is_err());
}

#[test]
fn derivatives() {
    let s = TruncatedSeries::from_ints(&[1, 3, 2]);
    assert_eq!(ints(&s.derivative().unwrap()), vec![3, 4]);
    let c = TruncatedSeries::from_ints(&[5, 0, 0]);
    assert_eq!(ints(&c.derivative().unwrap()), vec![0, 0]);
    assert!(matches!(TruncatedSeries::from_ints(&[5]).derivative(), Err(Error::DerivativeUndefined)));
    let g3 = Polynomial::from_ints(&[1, 1]) * Polynomial::from_ints(&[1, 2]);
    assert_eq!(g3.derivative(), Polynomial::from_ints(&[3, 4]));
}

#[test]
fn binomial_columns() {
    let b = BivariateSeries::binomial(6, 3);
    assert_eq!(ints(&b.x_coefficient(0)), vec![1, 0, 0, 0, 0, 0, 0]);
    assert_eq!(ints(&b.x_coefficient(1)), vec![0, 0, 1, 0, 0, 0, 0]);
    let x2 = b.x_coefficient(2);
    assert_eq!(x2.coeff(3), qr(1, 2));
    assert_eq!(x2.coeff(4), qr(1, 2));
    assert_eq!(x2.coeff(2), q(0));
}

#[test]
fn exponentials() {
    let zero = BivariateSeries::zero(4, 4);
    assert_eq!(zero.exp().unwrap(), BivariateSeries::one(4, 4));
    let mut x = BivariateSeries::zero(0, 4);
    x.set(0, 1, q(1));
    assert_eq!(x.exp().unwrap().coeff(0, 3), qr(1, 6));
    assert!(matches!(BivariateSeries::one(2, 2).exp(), Err(Error::ExpUndefined)));

    // exp(x/(1−t)): the x^d column is (1/d!)·(1/(1−t))^d.
    let mut f = BivariateSeries::zero(6, 4);
    for i in 0..=6 {
        f.set(i, 1, q(1));
    }
    let e = f.exp().unwrap();
    for d in 0..=4u32 {
        let fact: i64 = (1..=d as i64).product();
        let expected = RationalGf::geometric().pow(d).expand(6).scale(&qr(1, fact));
        assert_eq!(e.x_coefficient(d as usize), expected);
    }
}

#[test]
fn rational_equality_is_cross_multiplication() {
    let a = RationalGf::from_ints(&[1, 1], &[1, -1]).unwrap();
    let b = RationalGf::from_ints(&[1, 2, 1], &[1, 0, -1]).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.reduced().den(), &Polynomial::from_ints(&[1, -1]));
    assert_ne!(a, RationalGf::geometric());
}

#[test]
fn json_shapes() {
    let s = TruncatedSeries::new(vec![q(1), qr(1, 2)]);
    let j = serde_json::to_value(&s).unwrap();
    assert_eq!(j, serde_json::json!({"order": 1, "coeffs": ["1", "1/2"]}));
    let g = serde_json::to_value(RationalGf::integers()).unwrap();
    assert_eq!(g, serde_json::json!({"num": ["1", "1"], "den": ["1", "-1"]}));
    let back: TruncatedSeries = serde_json::from_value(j).unwrap();
    assert_eq!(back, s);
}

#[test]
fn display() {
    assert_eq!(Polynomial::from_ints(&[1, -2, 0, 3]).to_string(), "1 - 2t + 3t^3");
    assert_eq!(Polynomial::zero().to_string(), "0");
}

fn small_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..5)
}

fn unit_den() -> impl Strategy<Value = Vec<i64>> {
    (prop_oneof![Just(1i64), Just(-1i64), Just(2i64)], prop::collection::vec(-3i64..=3, 0..3))
        .prop_map(|(c, rest)| std::iter::once(c).chain(rest).collect())
}

fn small_bivariate() -> impl Strategy<Value = BivariateSeries> {
    prop::collection::vec(-3i64..=3, 12).prop_map(|v| {
        let mut b = BivariateSeries::zero(3, 2);
        for (k, c) in v.into_iter().enumerate() {
            let (i, j) = (k / 3, k % 3);
            if i <= 3 && j <= 2 && (i, j) != (0, 0) {
                b.set(i, j, q(c));
            }
        }
        b
    })
}

proptest! {
    #[test]
    fn expansion_is_multiplicative(n1 in small_poly(), d1 in unit_den(), n2 in small_poly(), d2 in unit_den(), order in 0usize..8) {
        let a = RationalGf::from_ints(&n1, &d1).unwrap();
        let b = RationalGf::from_ints(&n2, &d2).unwrap();
        prop_assert_eq!((&a * &b).expand(order), &a.expand(order) * &b.expand(order));
        prop_assert_eq!((&a + &b).expand(order), &a.expand(order) + &b.expand(order));
    }

    #[test]
    fn expansion_inverts_division(n in small_poly(), d in unit_den(), order in 0usize..8) {
        let num = Polynomial::from_ints(&n);
        let den = Polynomial::from_ints(&d);
        let s = expand_rational(&num, &den, order).unwrap();
        prop_assert_eq!(&den.truncate(order) * &s, num.truncate(order));
    }

    #[test]
    fn exp_turns_sums_into_products(f in small_bivariate(), g in small_bivariate()) {
        let lhs = f.add(&g).exp().unwrap();
        let rhs = f.exp().unwrap().mul(&g.exp().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_of_product(a in small_poly(), b in small_poly()) {
        let (p, r) = (Polynomial::from_ints(&a), Polynomial::from_ints(&b));
        prop_assert_eq!((&p * &r).derivative(), &(&p.derivative() * &r) + &(&p * &r.derivative()));
    }
}
