use glt_core::scalars::{Field, GaloisField, Rational, Rationals, TruncSeries};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = GaloisField> {
    prop_oneof![Just((3, 2)), Just((5, 1)), Just((2, 3)), Just((7, 2))].prop_map(|(p, m)| GaloisField::new(p, m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field(), a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let e = f.elements().unwrap();
        let (x, y, z) = (&e[a % e.len()], &e[b % e.len()], &e[c % e.len()]);
        prop_assert_eq!(f.mul(x, &f.add(y, z)), f.add(&f.mul(x, y), &f.mul(x, z)));
        prop_assert_eq!(f.mul(&f.mul(x, y), z), f.mul(x, &f.mul(y, z)));
        prop_assert_eq!(f.add(x, &f.neg(x)), f.zero());
        if !f.is_zero(x) {
            prop_assert_eq!(f.mul(x, &f.inv(x).unwrap()), f.one());
        }
        prop_assert_eq!(f.pow(x, f.order()), x.clone());
    }

    #[test]
    fn series_inverse(c in prop::collection::vec(-5i64..=5, 1..6), order in 1usize..8) {
        let q = |k: i64| Rational::from_integer(k.into());
        let mut coeffs = vec![q(1)];
        coeffs.extend(c.iter().map(|&k| q(k)));
        let s = TruncSeries::new(&Rationals, coeffs, order);
        prop_assert!(s.mul(&s.inv().unwrap()).unwrap().is_one());
        prop_assert_eq!(s.reflect().reflect(), s);
    }

    #[test]
    fn shifts_compose(c in prop::collection::vec(-5i64..=5, 1..6), a in -3i64..=3, b in -3i64..=3) {
        let q = |k: i64| Rational::from_integer(k.into());
        let s = TruncSeries::new(&Rationals, c.iter().map(|&k| q(k)).collect(), 6);
        prop_assert_eq!(s.shift(&q(a)).shift(&q(b)), s.shift(&q(a + b)));
    }
}
