use glt_core::drinfeld::{
    drinfeld_from_weight, qp_normalize, ratio_to_drinfeld, satisfies_ratio, string_decompose, strings_to_poly,
    weight_from_drinfeld, weight_from_evaluation, DrinfeldDataCR, EvaluationData, HighestWeightCR,
};
use glt_core::partition::Bipartition;
use glt_core::scalars::{FactoredPoly, Field, GaloisField, Rational, Rationals};
use proptest::prelude::*;

fn q(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

fn qpoly(roots: &[(i64, bool)]) -> FactoredPoly<Rationals> {
    let r = roots
        .iter()
        .map(|&(a, half)| if half { Rational::new(a.into(), 2.into()) } else { q(a) })
        .collect();
    FactoredPoly::from_roots(&Rationals, r)
}

fn roots() -> impl Strategy<Value = Vec<(i64, bool)>> {
    prop::collection::vec((-4i64..=4, prop::bool::weighted(0.2)), 0..=3)
}

fn drinfeld_q() -> impl Strategy<Value = DrinfeldDataCR<Rationals>> {
    (prop::collection::vec(roots(), 0..=2), prop::collection::vec(roots(), 0..=2))
        .prop_map(|(b, c)| DrinfeldDataCR::new(b.iter().map(|r| qpoly(r)).collect(), c.iter().map(|r| qpoly(r)).collect()))
        .prop_filter("nontrivial", |d| !d.is_trivial())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weight_round_trip_over_q(p in drinfeld_q()) {
        let w = weight_from_drinfeld(&p).unwrap();
        prop_assert_eq!(drinfeld_from_weight(&w).unwrap(), p);
    }

    #[test]
    fn weight_round_trip_over_fp(
        b in prop::collection::vec(prop::collection::vec(0i64..7, 0..=4), 0..=2),
        c in prop::collection::vec(prop::collection::vec(0i64..7, 0..=4), 0..=2),
    ) {
        let f = GaloisField::prime(7).unwrap();
        let mk = |v: &Vec<i64>| FactoredPoly::from_roots(&f, v.iter().map(|&x| f.from_i64(x)).collect());
        let p = DrinfeldDataCR::new(b.iter().map(mk).collect(), c.iter().map(mk).collect());
        prop_assume!(!p.is_trivial());
        let w = weight_from_drinfeld(&p).unwrap();
        prop_assert_eq!(drinfeld_from_weight(&w).unwrap(), p.normalized());
    }

    #[test]
    fn weights_are_invariant_under_series_factors(p in drinfeld_q(), extra in roots()) {
        let w = weight_from_drinfeld(&p).unwrap();
        let g = qpoly(&extra);
        let scaled = HighestWeightCR {
            bullet: w.bullet.iter().map(|x| x.mul(&g)).collect(),
            circ: w.circ.iter().map(|x| x.mul(&g.reflect())).collect(),
            middle: w.middle.mul(&g),
        };
        prop_assert_eq!(drinfeld_from_weight(&scaled).unwrap(), p);
        prop_assert_eq!(scaled.canonical(), w.canonical());
    }

    #[test]
    fn strings_telescope(r in prop::collection::vec(-5i64..=5, 0..=6)) {
        let poly = FactoredPoly::from_roots(&Rationals, r.iter().map(|&x| q(x)).collect());
        let strings = string_decompose(&Rationals, poly.roots()).unwrap();
        prop_assert_eq!(strings_to_poly(&Rationals, &strings), poly.clone());
        // each string c..c+l-1 contributes (u - c + 1)/(u - c - l + 1) to P(u+1)/P(u)
        let (num, den): (Vec<_>, Vec<_>) = strings
            .iter()
            .map(|s| (q(-1) + &s.start, s.end(&Rationals)))
            .unzip();
        let num = FactoredPoly::from_roots(&Rationals, num);
        let den = FactoredPoly::from_roots(&Rationals, den);
        prop_assert!(satisfies_ratio(&poly, &num, &den));
        prop_assert_eq!(ratio_to_drinfeld(&num, &den).unwrap(), poly);
    }

    #[test]
    fn qp_normalization(r in prop::collection::vec(0i64..5, 0..=12), c in 0i64..5) {
        let f = GaloisField::prime(5).unwrap();
        let base = FactoredPoly::from_roots(&f, r.iter().map(|&x| f.from_i64(x)).collect());
        let period = FactoredPoly::from_roots(&f, (0..5).map(|k| f.from_i64(c + k)).collect());
        let n = qp_normalize(&base);
        prop_assert_eq!(&qp_normalize(&n), &n);
        prop_assert_eq!(&qp_normalize(&base.mul(&period)), &n);
        let up = |x: &FactoredPoly<GaloisField>| x.shift_argument(&f.one());
        prop_assert!(satisfies_ratio(&n, &up(&base), &base));
    }

    #[test]
    fn evaluation_weights_have_drinfeld_polynomials(
        etas in prop::collection::vec((prop::collection::vec(1u32..=3, 0..=2), prop::collection::vec(1u32..=3, 0..=2), -3i64..=3), 1..=3)
    ) {
        let factors: Vec<(Bipartition, Rational)> = etas
            .iter()
            .filter_map(|(b, c, k)| {
                let mut b = b.clone();
                let mut c = c.clone();
                b.sort_unstable_by(|x, y| y.cmp(x));
                c.sort_unstable_by(|x, y| y.cmp(x));
                let e = Bipartition::from_parts(&b, &c).unwrap();
                (!e.is_empty()).then(|| (e, q(*k)))
            })
            .collect();
        prop_assume!(!factors.is_empty());
        let data = EvaluationData::new(factors, false).unwrap();
        let w = weight_from_evaluation(&data, &Rationals).unwrap();
        let p = drinfeld_from_weight(&w).unwrap();
        if !p.is_trivial() {
            let back = weight_from_drinfeld(&p).unwrap();
            prop_assert_eq!(back.canonical(), w.canonical());
        }
    }
}

#[test]
fn polynomial_strings_in_characteristic_p() {
    let f = GaloisField::prime(7).unwrap();
    let r: Vec<_> = [5, 6, 0, 3].iter().map(|&x| f.from_i64(x)).collect();
    let s = string_decompose(&f, &r).unwrap();
    assert_eq!(s.len(), 2);
    assert_eq!(s.iter().map(|x| x.len).max(), Some(3));
}
