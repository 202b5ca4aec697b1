use proptest::prelude::*;
use tlsym_core::{Poly, Scalar};

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..=20, 0..5).prop_map(|c| Poly::from_i64s(&c))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::one() } else { d };
        Scalar::new(n, d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(a in scalar()) {
        let text = a.to_string();
        let back: Scalar = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn canonical_form(a in scalar()) {
        prop_assert!(Scalar::is_canonical_pair(a.numer(), a.denom()));
    }

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), x in 1.1f64..3.0) {
        // skip points near a pole of either side
        if let (Ok(va), Ok(vb)) = (a.evaluate(x), b.evaluate(x)) {
            let scale = 1.0 + va.abs() + vb.abs();
            let sum = (&a + &b).evaluate(x).unwrap();
            let prod = (&a * &b).evaluate(x).unwrap();
            prop_assert!((sum - (va + vb)).abs() <= 1e-8 * scale);
            prop_assert!((prod - va * vb).abs() <= 1e-8 * scale * scale);
        }
    }

    #[test]
    fn gcd_divides_both(p in poly(), q in poly()) {
        let g = p.gcd(&q);
        if !g.is_zero() {
            prop_assert!(p.div_exact(&g).is_some());
            prop_assert!(q.div_exact(&g).is_some());
        }
    }
}

#[test]
fn zero_denominator_is_rejected() {
    assert!(Scalar::new(Poly::one(), Poly::zero()).is_err());
    assert!(Scalar::zero().recip().is_err());
}

#[test]
fn delta_powers() {
    let d = Scalar::delta();
    assert_eq!(Scalar::delta_pow(3), &(&d * &d) * &d);
    assert_eq!(&Scalar::delta_pow(-2) * &Scalar::delta_pow(2), Scalar::one());
    assert_eq!(Scalar::delta_pow(-1).evaluate(2.0).unwrap(), 0.5);
}
