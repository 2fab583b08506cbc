//! Property tests for ring tables and skew polynomial arithmetic.

mod common;

use std::sync::{Arc, LazyLock};

use proptest::prelude::*;

use common::skew_product;
use skewring::ring::{
    build_corner, build_full_matrix, build_gf4, build_product, build_quotient,
    build_trivial_extension, build_truncated_poly, build_upper_triangular, build_zn,
};
use skewring::skewpoly::{sadd, sneg};
use skewring::theorems::corpus_default;
use skewring::{prime_radical, smul, Elem, Endo, FiniteRing, SkewPoly, SkewRing};

static RINGS: LazyLock<Vec<Arc<FiniteRing>>> = LazyLock::new(build_rings);
static PAIRS: LazyLock<Vec<Endo>> =
    LazyLock::new(|| corpus_default().iter().map(|e| e.alpha.clone()).collect());

fn build_rings() -> Vec<Arc<FiniteRing>> {
    let z2 = build_zn(2).unwrap();
    let z4 = build_zn(4).unwrap();
    let m2 = build_full_matrix(&z2, 2).unwrap();
    let z8 = build_zn(8).unwrap();
    let rad = prime_radical(&z8).unwrap();
    let prod = build_product(&z2, &z4).unwrap();
    let e = prod.pair(1, 0).unwrap();
    vec![
        build_zn(6).unwrap(),
        build_gf4(),
        build_product(&z2, &z2).unwrap(),
        build_upper_triangular(&z4, 2).unwrap(),
        build_upper_triangular(&z2, 3).unwrap(),
        build_truncated_poly(&z4, 3).unwrap(),
        build_trivial_extension(&z4).unwrap(),
        build_quotient(&z8, &rad).unwrap().0,
        build_corner(&prod, e).unwrap(),
        build_full_matrix(&z2, 3).unwrap(),
        m2,
    ]
}

#[test]
fn every_construction_validates() {
    for r in RINGS.iter() {
        assert!(r.validate().is_ok(), "{}", r.provenance());
    }
    for alpha in PAIRS.iter() {
        assert!(
            alpha.ring().validate().is_ok(),
            "{}",
            alpha.ring().provenance()
        );
    }
}

fn poly(n: usize) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec(0..n as Elem, 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn ring_axioms_hold(k in 0usize..11, a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let r = &RINGS[k];
        let n = r.size() as u16;
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(r.add(a, b), c), r.add(r.mul(a, c), r.mul(b, c)));
        prop_assert_eq!(r.add(a, r.add(b, c)), r.add(r.add(a, b), c));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.mul(r.one(), a), a);
    }

    #[test]
    fn endomorphisms_respect_operations(k in 0usize..16, a in any::<u16>(), b in any::<u16>()) {
        let alpha = &PAIRS[k];
        let r = alpha.ring();
        let n = r.size() as u16;
        let (a, b) = (a % n, b % n);
        prop_assert_eq!(alpha.apply(r.add(a, b)), r.add(alpha.apply(a), alpha.apply(b)));
        prop_assert_eq!(alpha.apply(r.mul(a, b)), r.mul(alpha.apply(a), alpha.apply(b)));
        prop_assert_eq!(alpha.apply(r.one()), r.one());
    }

    #[test]
    fn smul_matches_schoolbook(k in 0usize..16, f in poly(64), g in poly(64)) {
        let alpha = &PAIRS[k];
        let n = alpha.ring().size() as Elem;
        let f: Vec<Elem> = f.iter().map(|&c| c % n).collect();
        let g: Vec<Elem> = g.iter().map(|&c| c % n).collect();
        let ctx = SkewRing::new(alpha);
        let p = smul(&SkewPoly::new(&ctx, f.clone()).unwrap(), &SkewPoly::new(&ctx, g.clone()).unwrap()).unwrap();
        let reference = skew_product(alpha, &f, &g);
        prop_assert!(p.coeffs().len() <= reference.len());
        for (k, &c) in reference.iter().enumerate() {
            prop_assert_eq!(p.coeff(k), c);
        }
    }

    #[test]
    fn skew_ring_axioms(k in 0usize..16, f in poly(64), g in poly(64), h in poly(64)) {
        let alpha = &PAIRS[k];
        let n = alpha.ring().size() as Elem;
        let ctx = SkewRing::new(alpha);
        let mk = |v: &Vec<Elem>| SkewPoly::new(&ctx, v.iter().map(|&c| c % n).collect()).unwrap();
        let (f, g, h) = (mk(&f), mk(&g), mk(&h));
        let fg = smul(&f, &g).unwrap();
        prop_assert_eq!(smul(&fg, &h).unwrap(), smul(&f, &smul(&g, &h).unwrap()).unwrap());
        prop_assert_eq!(
            smul(&f, &sadd(&g, &h).unwrap()).unwrap(),
            sadd(&fg, &smul(&f, &h).unwrap()).unwrap()
        );
        prop_assert!(sadd(&f, &sneg(&f)).unwrap().is_zero());
    }
}

#[test]
fn polynomials_from_different_rings_do_not_mix() {
    let a = SkewRing::new(&PAIRS[0]);
    let b = SkewRing::new(&PAIRS[1]);
    let f = SkewPoly::constant(&a, 1).unwrap();
    let g = SkewPoly::constant(&b, 1).unwrap();
    assert!(smul(&f, &g).is_err());
    assert!(sadd(&f, &g).is_err());
}
