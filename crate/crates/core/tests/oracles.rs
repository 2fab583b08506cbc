//! Engine results against brute-force references on small rings.

mod common;

use std::sync::Arc;

use common::{alpha_pow, brute_radical, skew_product, tuples};
use skewring::endo::{is_compatible, is_half_compatible, is_rigid};
use skewring::properties::{check_reduced, check_reversible, check_semicommutative};
use skewring::ring::{
    build_corner, build_full_matrix, build_product, build_trivial_extension,
    build_upper_triangular, build_zn,
};
use skewring::theorems::corpus_default;
use skewring::{
    check_zero_product_property, enumerate_endos, prime_radical, CheckOptions, Elem, Endo,
    FiniteRing, Outcome, Target, Twist, Witness,
};

fn small_pairs(max: usize) -> Vec<Endo> {
    corpus_default()
        .iter()
        .filter(|e| e.ring().size() <= max)
        .map(|e| e.alpha.clone())
        .collect()
}

/// First violating `(f, g, i, j)` in lexicographic order, or `None`.
fn brute_zero_product(
    alpha: &Endo,
    twist: Twist,
    target: Target,
    d: usize,
) -> Option<(Vec<Elem>, Vec<Elem>, usize, usize, Elem)> {
    let r = alpha.ring();
    let rad = brute_radical(r);
    let all = tuples(r.size(), d + 1);
    for f in &all {
        for g in &all {
            if skew_product(alpha, f, g).iter().any(|&c| c != r.zero()) {
                continue;
            }
            for i in 0..=d {
                for j in 0..=d {
                    let b = match twist {
                        Twist::Plain => g[j],
                        Twist::Skew => alpha_pow(alpha, i, g[j]),
                    };
                    let p = r.mul(f[i], b);
                    let ok = match target {
                        Target::Zero => p == r.zero(),
                        Target::Radical => rad[p as usize],
                    };
                    if !ok {
                        return Some((f.clone(), g.clone(), i, j, p));
                    }
                }
            }
        }
    }
    None
}

#[test]
fn zero_product_verdicts_and_witnesses_match_brute_force() {
    let variants = [
        (Twist::Plain, Target::Zero),
        (Twist::Skew, Target::Zero),
        (Twist::Plain, Target::Radical),
        (Twist::Skew, Target::Radical),
    ];
    let mut compared = 0;
    for alpha in small_pairs(16) {
        let degrees: &[usize] = if alpha.ring().size() <= 4 {
            &[1, 2]
        } else {
            &[1]
        };
        for &d in degrees {
            for (twist, target) in variants {
                let v = check_zero_product_property(
                    &alpha,
                    twist,
                    target,
                    &CheckOptions::with_degree(d),
                )
                .unwrap();
                let expected = brute_zero_product(&alpha, twist, target, d);
                match (&v.outcome, expected) {
                    (Outcome::Holds, None) => {}
                    (
                        Outcome::Fails(Witness::Polynomials {
                            f,
                            g,
                            i,
                            j,
                            product,
                        }),
                        Some(w),
                    ) => {
                        assert_eq!(
                            (f.clone(), g.clone(), *i, *j, *product),
                            w,
                            "{} {twist:?} {target:?} d={d}",
                            alpha.label()
                        );
                    }
                    (got, want) => panic!(
                        "{} on {} {twist:?} {target:?} d={d}: engine {got:?}, brute force {want:?}",
                        alpha.label(),
                        alpha.ring().provenance()
                    ),
                }
                compared += 1;
            }
        }
    }
    assert!(compared > 50);
}

fn pairs(r: &FiniteRing) -> Vec<(Elem, Elem)> {
    r.elements()
        .flat_map(|a| r.elements().map(move |b| (a, b)))
        .collect()
}

#[test]
fn ring_level_properties_match_brute_force() {
    for alpha in small_pairs(64) {
        let r = alpha.ring();
        let z = r.zero();
        let ps = pairs(r);
        let reduced = r.elements().all(|a| a == z || !r.is_nilpotent(a));
        let reversible = ps
            .iter()
            .all(|&(a, b)| r.mul(a, b) != z || r.mul(b, a) == z);
        let semi = ps
            .iter()
            .all(|&(a, b)| r.mul(a, b) != z || r.elements().all(|c| r.mul(r.mul(a, c), b) == z));
        let compatible = ps
            .iter()
            .all(|&(a, b)| (r.mul(a, b) == z) == (r.mul(a, alpha.apply(b)) == z));
        let half = ps
            .iter()
            .all(|&(a, b)| r.mul(a, b) != z || r.mul(a, alpha.apply(b)) == z);
        let rigid = r
            .elements()
            .all(|a| a == z || r.mul(a, alpha.apply(a)) != z);
        let label = format!("({}, {})", r.provenance(), alpha.label());
        assert_eq!(check_reduced(r).as_bool(), Some(reduced), "{label}");
        assert_eq!(check_reversible(r).as_bool(), Some(reversible), "{label}");
        assert_eq!(check_semicommutative(r).as_bool(), Some(semi), "{label}");
        assert_eq!(is_compatible(&alpha).as_bool(), Some(compatible), "{label}");
        assert_eq!(is_half_compatible(&alpha).as_bool(), Some(half), "{label}");
        assert_eq!(is_rigid(&alpha).as_bool(), Some(rigid), "{label}");
    }
}

fn brute_endos(r: &FiniteRing) -> Vec<Vec<Elem>> {
    let n = r.size();
    let free: Vec<Elem> = r
        .elements()
        .filter(|&e| e != r.zero() && e != r.one())
        .collect();
    let mut out = Vec::new();
    for images in tuples(n, free.len()) {
        let mut map = vec![0 as Elem; n];
        map[r.zero() as usize] = r.zero();
        map[r.one() as usize] = r.one();
        for (&x, &y) in free.iter().zip(&images) {
            map[x as usize] = y;
        }
        let hom = pairs(r).iter().all(|&(a, b)| {
            map[r.add(a, b) as usize] == r.add(map[a as usize], map[b as usize])
                && map[r.mul(a, b) as usize] == r.mul(map[a as usize], map[b as usize])
        });
        if hom {
            out.push(map);
        }
    }
    out.sort();
    out
}

fn small_rings() -> Vec<Arc<FiniteRing>> {
    let z2 = build_zn(2).unwrap();
    let mut rings = vec![
        build_zn(3).unwrap(),
        build_zn(4).unwrap(),
        build_zn(6).unwrap(),
        build_zn(8).unwrap(),
    ];
    rings.push(build_product(&z2, &z2).unwrap());
    rings.push(skewring::ring::build_gf4());
    rings.push(build_upper_triangular(&z2, 2).unwrap());
    rings.push(build_trivial_extension(&z2).unwrap());
    rings.push(skewring::ring::build_truncated_poly(&z2, 3).unwrap());
    rings.push(z2);
    rings
}

#[test]
fn endomorphisms_match_brute_force() {
    for r in small_rings() {
        let got: Vec<Vec<Elem>> = enumerate_endos(&r)
            .unwrap()
            .iter()
            .map(|e| e.image().to_vec())
            .collect();
        assert_eq!(got, brute_endos(&r), "{}", r.provenance());
    }
}

#[test]
fn prime_radical_matches_strong_nilpotence() {
    let z2 = build_zn(2).unwrap();
    let mut rings = small_rings();
    rings.push(build_full_matrix(&z2, 2).unwrap());
    rings.push(build_upper_triangular(&build_zn(4).unwrap(), 2).unwrap());
    let u3 = build_upper_triangular(&z2, 3).unwrap();
    let prod = build_product(&u3, &z2).unwrap();
    let e = prod.pair(u3.one(), z2.zero()).unwrap();
    rings.push(build_corner(&prod, e).unwrap());
    rings.push(u3);
    for r in rings {
        let got = prime_radical(&r).unwrap();
        let brute = brute_radical(&r);
        for e in r.elements() {
            assert_eq!(
                got.contains(e),
                brute[e as usize],
                "{} element {}",
                r.provenance(),
                r.format_elem(e)
            );
        }
    }
}
