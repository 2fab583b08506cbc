//! Structural facts checked across the default corpus.

use std::collections::HashSet;

use skewring::endo::{is_compatible, is_rigid, is_unital_endo, lift_endo_matrix};
use skewring::properties::check_reduced;
use skewring::ring::{
    build_corner, build_gf4, build_product, build_truncated_poly, build_upper_triangular, build_zn,
    idempotents, is_central, truncated_matrix_embedding,
};
use skewring::theorems::corpus_default;
use skewring::{endo_order, enumerate_endos, Elem};

#[test]
fn rigid_iff_reduced_and_compatible() {
    for e in corpus_default().iter() {
        let rigid = is_rigid(&e.alpha).as_bool().unwrap();
        let reduced = check_reduced(e.ring()).as_bool().unwrap();
        let compatible = is_compatible(&e.alpha).as_bool().unwrap();
        assert_eq!(rigid, reduced && compatible, "{e}");
    }
}

#[test]
fn enumerated_maps_are_unital_endomorphisms() {
    let mut seen = HashSet::new();
    for e in corpus_default().iter() {
        let r = e.ring();
        if r.size() > 16 || !seen.insert(r.provenance().to_string()) {
            continue;
        }
        let endos = enumerate_endos(r).unwrap();
        assert!(endos.iter().any(|a| a.is_identity()), "{}", r.provenance());
        for a in &endos {
            assert!(
                is_unital_endo(r, a.image()).unwrap(),
                "{} {}",
                r.provenance(),
                a.label()
            );
        }
        let images: Vec<&[Elem]> = endos.iter().map(|a| a.image()).collect();
        assert!(
            images.windows(2).all(|w| w[0] < w[1]),
            "{} not sorted",
            r.provenance()
        );
    }
}

#[test]
fn lifted_order_matches_for_bijective_endos() {
    for e in corpus_default().iter() {
        let alpha = &e.alpha;
        if !alpha.is_injective() || e.ring().size() > 16 {
            continue;
        }
        let u2 = build_upper_triangular(e.ring(), 2).unwrap();
        let lifted = lift_endo_matrix(alpha, &u2).unwrap();
        assert_eq!(endo_order(&lifted), endo_order(alpha), "{e}");
    }
}

#[test]
fn peirce_sizes_multiply() {
    let mut checked = 0;
    for e in corpus_default().iter() {
        let r = e.ring();
        if !r.is_commutative() {
            continue;
        }
        for idem in idempotents(r) {
            if idem == r.zero() || idem == r.one() || !is_central(r, idem) {
                continue;
            }
            let a = build_corner(r, idem).unwrap();
            let b = build_corner(r, r.sub(r.one(), idem)).unwrap();
            assert_eq!(a.size() * b.size(), r.size(), "{e}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn truncated_rings_embed_into_upper_triangular() {
    let z2 = build_zn(2).unwrap();
    let bases = [
        z2.clone(),
        build_zn(3).unwrap(),
        build_zn(4).unwrap(),
        build_product(&z2, &z2).unwrap(),
        build_gf4(),
    ];
    for base in &bases {
        for n in [2usize, 3] {
            if base.size().pow(n as u32) > 4096 {
                continue;
            }
            let t = build_truncated_poly(base, n).unwrap();
            let u = build_upper_triangular(base, n).unwrap();
            let map = truncated_matrix_embedding(&t, &u).unwrap();
            let phi = |a: Elem| map[a as usize];
            assert_eq!(phi(t.one()), u.one());
            assert_eq!(map.iter().collect::<HashSet<_>>().len(), t.size());
            for a in t.elements() {
                for b in t.elements() {
                    assert_eq!(phi(t.add(a, b)), u.add(phi(a), phi(b)));
                    assert_eq!(phi(t.mul(a, b)), u.mul(phi(a), phi(b)));
                }
            }
        }
    }
}

#[test]
fn upper_triangular_is_not_abelian() {
    let u2 = build_upper_triangular(&build_zn(2).unwrap(), 2).unwrap();
    assert!(!skewring::ring::is_abelian(&u2));
    assert_eq!(idempotents(&build_zn(4).unwrap()), vec![0, 1]);
}
