use glt_core::modular_weyl::gl2_irreducible_modp;
use glt_core::scalars::{Field, GaloisField, TruncSeries};
use glt_core::yangian::{qdet_action, EvalSpec, RMatrix, YangianModule};
use proptest::prelude::*;

fn ev(f: &GaloisField, a: i64, b: i64, c: i64) -> YangianModule<GaloisField> {
    let m = gl2_irreducible_modp(&f.from_i64(a), &f.from_i64(b), f).unwrap();
    YangianModule::evaluation(&EvalSpec::plain(m).with_character(f.from_i64(c))).unwrap()
}

fn factor() -> impl Strategy<Value = (i64, i64, i64)> {
    (0i64..5, 0i64..5, 0i64..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_products_satisfy_rtt(x in factor(), y in factor(), z in 0i64..5) {
        let f = GaloisField::prime(5).unwrap();
        let m = ev(&f, x.0, x.1, x.2).tensor(&ev(&f, y.0, y.1, y.2)).unwrap();
        prop_assert!(m.verify_rtt());
        prop_assert!(m.satisfies_gl_embedding());
        let s = m.shifted(&f.from_i64(z), 4);
        prop_assert!(s.verify_rtt());
    }

    #[test]
    fn twisting_preserves_rtt(x in factor(), a in 0i64..5, b in 0i64..5) {
        let f = GaloisField::prime(5).unwrap();
        let g = TruncSeries::new(&f, vec![f.one(), f.from_i64(a), f.from_i64(b)], 5);
        let m = ev(&f, x.0, x.1, x.2).twisted(&g).unwrap();
        prop_assert!(m.verify_rtt());
    }

    #[test]
    fn qdet_is_central(x in factor(), y in factor()) {
        let f = GaloisField::prime(5).unwrap();
        let m = ev(&f, x.0, x.1, x.2).tensor(&ev(&f, y.0, y.1, y.2)).unwrap();
        let r = qdet_action(&m, 4).unwrap();
        prop_assert!(r.central);
        // qdet is multiplicative: scalar on each factor, so scalar on the product
        let a = qdet_action(&ev(&f, x.0, x.1, x.2), 4).unwrap().scalar.unwrap();
        let b = qdet_action(&ev(&f, y.0, y.1, y.2), 4).unwrap().scalar.unwrap();
        prop_assert_eq!(r.scalar.unwrap(), a.mul(&b).unwrap());
    }
}

#[test]
fn opposite_sign_fails_on_nontrivial_modules() {
    let f = GaloisField::prime(7).unwrap();
    let m = ev(&f, 2, 0, 0);
    assert!(m.verify_rtt());
    assert!(!m.verify_rtt_with(RMatrix::FLIPPED));
    let triv = YangianModule::trivial(&f, 2);
    assert!(triv.verify_rtt_with(RMatrix::FLIPPED));
}
