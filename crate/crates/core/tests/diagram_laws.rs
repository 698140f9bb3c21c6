use glt_core::diagram::{enumerate_matchings, DiagramLC, Matching, ObjectWord};
use glt_core::gln_oracle::matching_to_tensor;
use glt_core::scalars::{Field, GaloisField, QPoly};
use proptest::prelude::*;

fn endo(obj: ObjectWord, k: usize) -> DiagramLC {
    let all = enumerate_matchings(obj, obj);
    DiagramLC::basis(all[k % all.len()].clone())
}

fn object() -> impl Strategy<Value = ObjectWord> {
    (0usize..=3, 0usize..=3)
        .prop_filter("at most three points", |(r, s)| r + s <= 3 && r + s > 0)
        .prop_map(|(r, s)| ObjectWord::new(r, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(obj in object(), a in 0usize..100, b in 0usize..100, c in 0usize..100) {
        let (x, y, z) = (endo(obj, a), endo(obj, b), endo(obj, c));
        let left = x.compose(&y).unwrap().compose(&z).unwrap();
        let right = x.compose(&y.compose(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_is_neutral(obj in object(), a in 0usize..100) {
        let x = endo(obj, a);
        let id = DiagramLC::identity(obj);
        prop_assert_eq!(&id.compose(&x).unwrap(), &x);
        prop_assert_eq!(&x.compose(&id).unwrap(), &x);
    }

    #[test]
    fn trace_is_cyclic(obj in object(), a in 0usize..100, b in 0usize..100) {
        let (x, y) = (endo(obj, a), endo(obj, b));
        prop_assert_eq!(
            x.compose(&y).unwrap().closure_trace().unwrap(),
            y.compose(&x).unwrap().closure_trace().unwrap()
        );
    }

    #[test]
    fn dual_is_involutive_and_reverses_composition(obj in object(), a in 0usize..100, b in 0usize..100) {
        let (x, y) = (endo(obj, a), endo(obj, b));
        prop_assert_eq!(&x.dual().dual(), &x);
        prop_assert_eq!(x.compose(&y).unwrap().dual(), y.dual().compose(&x.dual()).unwrap());
    }

    #[test]
    fn trace_is_multiplicative(o1 in object(), o2 in object(), a in 0usize..100, b in 0usize..100) {
        let (x, y) = (endo(o1, a), endo(o2, b));
        let t = x.tensor(&y).closure_trace().unwrap();
        prop_assert_eq!(t, &x.closure_trace().unwrap() * &y.closure_trace().unwrap());
    }

    #[test]
    fn interchange_law(o1 in object(), o2 in object(), a in 0usize..100, b in 0usize..100, c in 0usize..100, d in 0usize..100) {
        let (x, y, z, w) = (endo(o1, a), endo(o2, b), endo(o1, c), endo(o2, d));
        let left = x.tensor(&y).compose(&z.tensor(&w)).unwrap();
        let right = x.compose(&z).unwrap().tensor(&y.compose(&w).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn specialization_is_a_functor(obj in object(), a in 0usize..100, b in 0usize..100, n in 1usize..=3) {
        let f = GaloisField::prime(101).unwrap();
        let all = enumerate_matchings(obj, obj);
        let (x, y) = (&all[a % all.len()], &all[b % all.len()]);
        let (xy, loops) = x.compose_with(y).unwrap();
        let direct = matching_to_tensor(x, n, &f).unwrap().compose(&matching_to_tensor(y, n, &f).unwrap()).unwrap();
        let scaled = matching_to_tensor(&xy, n, &f).unwrap().scale(&f.pow(&f.from_i64(n as i64), loops as u64));
        prop_assert_eq!(direct.entries(), scaled.entries());
    }
}

#[test]
fn zigzag_identities() {
    let id_b = DiagramLC::identity(ObjectWord::new(1, 0));
    let id_w = DiagramLC::identity(ObjectWord::new(0, 1));
    let ev = DiagramLC::basis(Matching::evaluation());
    let coev = DiagramLC::basis(Matching::coevaluation());
    // (1 ⊗ ev)(coev ⊗ 1) on V* and (ev ⊗ 1)(1 ⊗ coev) on V
    let left = id_w.tensor(&ev).compose(&coev.tensor(&id_w)).unwrap();
    assert_eq!(left, id_w);
    let right = ev.tensor(&id_b).compose(&id_b.tensor(&coev)).unwrap();
    assert_eq!(right, id_b);
    assert_eq!(ev.compose(&coev).unwrap().closure_trace().unwrap(), QPoly::t_pow(1));
}
