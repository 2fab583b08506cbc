//! Unital ring endomorphisms: verification, enumeration, powers, lifts to
//! derived rings, and the endomorphism-relative element predicates.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::radical::{additive_generators, IdealSet};
use crate::ring::{build_quotient, Elem, FiniteRing, Shape};
use crate::verdict::{Outcome, Params, Property, Subject, Verdict, Witness};

/// Rings larger than this are not searched for endomorphisms.
pub const ENDO_ENUMERATION_CAP: usize = 64;

/// A verified unital endomorphism, stored as its image array.
#[derive(Clone)]
pub struct Endo {
    ring: Arc<FiniteRing>,
    image: Arc<[Elem]>,
    label: String,
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Endo({} on {}: {:?})",
            self.label,
            self.ring.provenance(),
            &self.image[..]
        )
    }
}

impl PartialEq for Endo {
    fn eq(&self, other: &Self) -> bool {
        self.image == other.image && self.ring.same_tables(&other.ring)
    }
}

fn check_endo(ring: &FiniteRing, image: &[Elem]) -> Result<()> {
    if image.len() != ring.size() {
        return Err(Error::ContextMismatch(format!(
            "image has {} entries but the ring has {} elements",
            image.len(),
            ring.size()
        )));
    }
    if let Some(&bad) = image.iter().find(|&&e| e as usize >= ring.size()) {
        return Err(Error::NotHomomorphism(format!(
            "image entry {bad} is not an element"
        )));
    }
    let f = |a: Elem| image[a as usize];
    if f(ring.one()) != ring.one() {
        return Err(Error::NotUnital(f(ring.one())));
    }
    for a in ring.elements() {
        for b in ring.elements() {
            if f(ring.add(a, b)) != ring.add(f(a), f(b)) {
                return Err(Error::NotHomomorphism(format!(
                    "not additive at ({a}, {b})"
                )));
            }
            if f(ring.mul(a, b)) != ring.mul(f(a), f(b)) {
                return Err(Error::NotHomomorphism(format!(
                    "not multiplicative at ({a}, {b})"
                )));
            }
        }
    }
    Ok(())
}

/// Whether `image` is a unital ring endomorphism. Errors only on a length mismatch.
pub fn is_unital_endo(ring: &FiniteRing, image: &[Elem]) -> Result<bool> {
    match check_endo(ring, image) {
        Ok(()) => Ok(true),
        Err(Error::ContextMismatch(m)) => Err(Error::ContextMismatch(m)),
        Err(_) => Ok(false),
    }
}

impl Endo {
    pub fn new(ring: &Arc<FiniteRing>, image: Vec<Elem>, label: &str) -> Result<Endo> {
        check_endo(ring, &image)?;
        Ok(Endo {
            ring: ring.clone(),
            image: image.into(),
            label: label.to_string(),
        })
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> Endo {
        Endo {
            ring: ring.clone(),
            image: ring.elements().collect::<Vec<_>>().into(),
            label: "id".into(),
        }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn image(&self) -> &[Elem] {
        &self.image
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: &str) -> Endo {
        self.label = label.to_string();
        self
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &e)| i == e as usize)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.ring.size()];
        self.image
            .iter()
            .all(|&e| !std::mem::replace(&mut seen[e as usize], true))
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Endo) -> Endo {
        let image: Vec<Elem> = other.image.iter().map(|&e| self.apply(e)).collect();
        Endo {
            ring: self.ring.clone(),
            image: image.into(),
            label: format!("{}*{}", self.label, other.label),
        }
    }

    pub fn powers(&self) -> AlphaPowers {
        AlphaPowers::new(self)
    }
}

/// The eventually periodic sequence `alpha^0, alpha^1, ...`.
#[derive(Clone, Debug)]
pub struct AlphaPowers {
    n: usize,
    table: Vec<Elem>,
    start: usize,
    period: usize,
}

impl AlphaPowers {
    pub fn new(alpha: &Endo) -> AlphaPowers {
        let n = alpha.ring.size();
        let mut maps: Vec<Vec<Elem>> = vec![alpha.ring.elements().collect()];
        let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
        seen.insert(maps[0].clone(), 0);
        let (start, period) = loop {
            let next: Vec<Elem> = maps
                .last()
                .unwrap()
                .iter()
                .map(|&e| alpha.apply(e))
                .collect();
            if let Some(&j) = seen.get(&next) {
                break (j, maps.len() - j);
            }
            seen.insert(next.clone(), maps.len());
            maps.push(next);
        };
        AlphaPowers {
            n,
            table: maps.into_iter().flatten().collect(),
            start,
            period,
        }
    }

    fn slot(&self, k: usize) -> usize {
        if k < self.start + self.period {
            k
        } else {
            self.start + (k - self.start) % self.period
        }
    }

    /// The map `alpha^k`.
    pub fn get(&self, k: usize) -> &[Elem] {
        let s = self.slot(k);
        &self.table[s * self.n..(s + 1) * self.n]
    }

    #[inline]
    pub fn apply(&self, k: usize, a: Elem) -> Elem {
        self.table[self.slot(k) * self.n + a as usize]
    }

    /// First index of the cycle and its length.
    pub fn cycle(&self) -> (usize, usize) {
        (self.start, self.period)
    }
}

/// Least `t >= 1` with `alpha^t = id`, or `None` when `alpha` is not injective.
pub fn endo_order(alpha: &Endo) -> Option<usize> {
    if !alpha.is_injective() {
        return None;
    }
    let (start, period) = alpha.powers().cycle();
    debug_assert_eq!(start, 0);
    Some(period)
}

/// All unital endomorphisms, sorted by image array.
pub fn enumerate_endos(ring: &Arc<FiniteRing>) -> Result<Vec<Endo>> {
    enumerate_endos_capped(ring, ENDO_ENUMERATION_CAP)
}

pub fn enumerate_endos_capped(ring: &Arc<FiniteRing>, cap: usize) -> Result<Vec<Endo>> {
    if ring.size() > cap {
        return Err(Error::Capacity {
            what: format!("endomorphism enumeration of {}", ring.provenance()),
            needed: ring.size() as u128,
            cap: cap as u128,
        });
    }
    let gens = additive_generators(ring);
    let mut search = EndoSearch {
        ring,
        gens: &gens,
        map: vec![None; ring.size()],
        domain: vec![ring.zero()],
        found: Vec::new(),
    };
    search.map[ring.zero() as usize] = Some(ring.zero());
    search.descend(0);
    let mut images = search.found;
    images.sort();
    let mut out = Vec::with_capacity(images.len());
    let mut k = 0;
    for image in images {
        let label = if image.iter().enumerate().all(|(i, &e)| i == e as usize) {
            "id".to_string()
        } else {
            k += 1;
            format!("endo{k}")
        };
        out.push(Endo::new(ring, image, &label)?);
    }
    Ok(out)
}

struct EndoSearch<'a> {
    ring: &'a FiniteRing,
    gens: &'a [Elem],
    map: Vec<Option<Elem>>,
    domain: Vec<Elem>,
    found: Vec<Vec<Elem>>,
}

impl EndoSearch<'_> {
    fn descend(&mut self, level: usize) {
        if level == self.gens.len() {
            let image: Vec<Elem> = self
                .map
                .iter()
                .map(|m| m.expect("domain covers the ring"))
                .collect();
            if check_endo(self.ring, &image).is_ok() {
                self.found.push(image);
            }
            return;
        }
        let g = self.gens[level];
        for y in self.ring.elements() {
            let mark = self.domain.len();
            if self.extend(g, y) && self.multiplicative_from(mark) {
                self.descend(level + 1);
            }
            for &e in &self.domain[mark..] {
                self.map[e as usize] = None;
            }
            self.domain.truncate(mark);
        }
    }

    /// Extends the additive map to `domain + <g>` with `g -> y`.
    fn extend(&mut self, g: Elem, y: Elem) -> bool {
        let r = self.ring;
        let base = self.domain.len();
        let (mut shift, mut img) = (g, y);
        loop {
            if let Some(existing) = self.map[shift as usize] {
                return existing == img;
            }
            for k in 0..base {
                let h = self.domain[k];
                let e = r.add(h, shift);
                self.map[e as usize] = Some(r.add(self.map[h as usize].unwrap(), img));
                self.domain.push(e);
            }
            shift = r.add(shift, g);
            img = r.add(img, y);
        }
    }

    /// Multiplicativity on pairs that involve an element added after `mark`.
    fn multiplicative_from(&self, mark: usize) -> bool {
        let r = self.ring;
        if let Some(o) = self.map[r.one() as usize] {
            if o != r.one() {
                return false;
            }
        }
        let f = |a: Elem| self.map[a as usize];
        for (ai, &a) in self.domain.iter().enumerate() {
            let start = if ai >= mark { 0 } else { mark };
            for &b in &self.domain[start..] {
                for (x, y) in [(a, b), (b, a)] {
                    if let Some(p) = f(r.mul(x, y)) {
                        if p != r.mul(f(x).unwrap(), f(y).unwrap()) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Entrywise lift of `alpha` to a matrix, truncated polynomial or trivial
/// extension ring built over the ring of `alpha`.
pub fn lift_endo_matrix(alpha: &Endo, target: &Arc<FiniteRing>) -> Result<Endo> {
    let (base, _) = target.shape().digit_layout().ok_or_else(|| {
        Error::ContextMismatch(format!(
            "{} is not built entrywise over a base ring",
            target.provenance()
        ))
    })?;
    if !base.same_tables(alpha.ring()) {
        return Err(Error::ContextMismatch(format!(
            "{} is not built over {}",
            target.provenance(),
            alpha.ring().provenance()
        )));
    }
    let image: Vec<Elem> = target
        .elements()
        .map(|e| {
            let digits: Vec<Elem> = target
                .digits(e)
                .unwrap()
                .iter()
                .map(|&d| alpha.apply(d))
                .collect();
            target.from_digits(&digits).unwrap()
        })
        .collect();
    let label = if alpha.is_identity() {
        "id".to_string()
    } else {
        format!("lift({})", alpha.label())
    };
    Endo::new(target, image, &label)
        .map_err(|e| Error::Internal(format!("lifted map is not an endomorphism: {e}")))
}

/// `alpha(I)` is contained in `I`.
pub fn is_alpha_ideal(ideal: &IdealSet, alpha: &Endo) -> bool {
    ideal.elements().all(|x| ideal.contains(alpha.apply(x)))
}

/// Builds `R / I` and the induced map `a + I -> alpha(a) + I`.
pub fn lift_endo_quotient(alpha: &Endo, ideal: &IdealSet) -> Result<(Arc<FiniteRing>, Endo)> {
    if !is_alpha_ideal(ideal, alpha) {
        let x = ideal
            .elements()
            .find(|&x| !ideal.contains(alpha.apply(x)))
            .unwrap();
        return Err(Error::InvalidLift(format!(
            "alpha moves {} out of the ideal",
            alpha.ring().format_elem(x)
        )));
    }
    let (quotient, projection) = build_quotient(alpha.ring(), ideal)?;
    let reps = match quotient.shape() {
        Shape::Quotient {
            representatives, ..
        } => representatives.clone(),
        _ => unreachable!("quotient shape"),
    };
    let image: Vec<Elem> = reps
        .iter()
        .map(|&r| projection[alpha.apply(r) as usize])
        .collect();
    for a in alpha.ring().elements() {
        if projection[alpha.apply(a) as usize] != image[projection[a as usize] as usize] {
            return Err(Error::Internal("induced map is not well defined".into()));
        }
    }
    let label = if alpha.is_identity() {
        "id".to_string()
    } else {
        format!("quotient({})", alpha.label())
    };
    let endo = Endo::new(&quotient, image, &label)?;
    Ok((quotient, endo))
}

/// Restriction of `alpha` to a corner `eR` with `alpha(e) = e`.
pub fn restrict_to_corner(alpha: &Endo, corner: &Arc<FiniteRing>) -> Result<Endo> {
    let (parent, e, embedding) = match corner.shape() {
        Shape::Corner {
            parent,
            idempotent,
            embedding,
        } => (parent, *idempotent, embedding),
        _ => {
            return Err(Error::ContextMismatch(format!(
                "{} is not a corner ring",
                corner.provenance()
            )))
        }
    };
    if !parent.same_tables(alpha.ring()) {
        return Err(Error::ContextMismatch("corner of another ring".into()));
    }
    if alpha.apply(e) != e {
        return Err(Error::InvalidLift(format!(
            "alpha does not fix {}",
            parent.format_elem(e)
        )));
    }
    let image: Result<Vec<Elem>> = embedding
        .iter()
        .map(|&x| {
            let y = alpha.apply(x);
            embedding
                .binary_search(&y)
                .map(|k| k as Elem)
                .map_err(|_| Error::InvalidLift("image leaves the corner".into()))
        })
        .collect();
    let label = if alpha.is_identity() {
        "id".to_string()
    } else {
        alpha.label().to_string()
    };
    Endo::new(corner, image?, &label)
}

fn element_verdict(
    property: Property,
    alpha: &Endo,
    found: Option<(Vec<Elem>, String)>,
) -> Verdict {
    Verdict {
        property,
        subject: Subject {
            ring: alpha.ring().clone(),
            endo: Some(alpha.clone()),
        },
        params: Params::elementwise(),
        outcome: match found {
            None => Outcome::Holds,
            Some((elems, detail)) => Outcome::Fails(Witness::Elements { elems, detail }),
        },
        note: None,
    }
}

/// `ab = 0` iff `a alpha(b) = 0`, over all pairs.
pub fn is_compatible(alpha: &Endo) -> Verdict {
    let r = &**alpha.ring();
    let z = r.zero();
    let mut found = None;
    'scan: for a in r.elements() {
        for b in r.elements() {
            let plain = r.mul(a, b) == z;
            let twisted = r.mul(a, alpha.apply(b)) == z;
            if plain != twisted {
                let detail = if plain {
                    "ab = 0 but a alpha(b) != 0"
                } else {
                    "a alpha(b) = 0 but ab != 0"
                };
                found = Some((vec![a, b], detail.to_string()));
                break 'scan;
            }
        }
    }
    element_verdict(Property::Compatible, alpha, found)
}

/// `ab = 0` implies `a alpha(b) = 0`, over all pairs.
pub fn is_half_compatible(alpha: &Endo) -> Verdict {
    let r = &**alpha.ring();
    let z = r.zero();
    let found = r
        .elements()
        .flat_map(|a| r.elements().map(move |b| (a, b)))
        .find(|&(a, b)| r.mul(a, b) == z && r.mul(a, alpha.apply(b)) != z)
        .map(|(a, b)| (vec![a, b], "ab = 0 but a alpha(b) != 0".to_string()));
    element_verdict(Property::HalfCompatible, alpha, found)
}

/// `a alpha(a) = 0` forces `a = 0`.
pub fn is_rigid(alpha: &Endo) -> Verdict {
    let r = &**alpha.ring();
    let found = r
        .elements()
        .find(|&a| a != r.zero() && r.mul(a, alpha.apply(a)) == r.zero())
        .map(|a| (vec![a], "a != 0 but a alpha(a) = 0".to_string()));
    element_verdict(Property::Rigid, alpha, found)
}

/// `a alpha(a)` in the prime radical forces `a` into it.
pub fn is_alpha_star_rigid(alpha: &Endo, radical: &IdealSet) -> Verdict {
    let r = &**alpha.ring();
    let found = r
        .elements()
        .find(|&a| !radical.contains(a) && radical.contains(r.mul(a, alpha.apply(a))))
        .map(|a| (vec![a], "a alpha(a) in N* but a not in N*".to_string()));
    element_verdict(Property::StarRigid, alpha, found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radical::prime_radical;
    use crate::ring::{build_gf4, build_product, build_upper_triangular, build_zn};

    fn z2z2() -> Arc<FiniteRing> {
        let z2 = build_zn(2).unwrap();
        build_product(&z2, &z2).unwrap()
    }

    fn swap(r: &Arc<FiniteRing>) -> Endo {
        Endo::new(r, vec![0, 2, 1, 3], "swap").unwrap()
    }

    #[test]
    fn unital_checks() {
        let r = z2z2();
        assert!(is_unital_endo(&r, &[0, 1, 2, 3]).unwrap());
        assert!(is_unital_endo(&r, &[0, 2, 1, 3]).unwrap());
        let z4 = build_zn(4).unwrap();
        assert!(!is_unital_endo(&z4, &[0, 3, 2, 1]).unwrap());
        assert!(is_unital_endo(&z4, &[0, 1]).is_err());
        assert!(matches!(
            Endo::new(&z4, vec![0, 3, 2, 1], "x"),
            Err(Error::NotUnital(3))
        ));
    }

    #[test]
    fn enumeration() {
        let r = z2z2();
        let images: Vec<Vec<Elem>> = enumerate_endos(&r)
            .unwrap()
            .iter()
            .map(|e| e.image().to_vec())
            .collect();
        // (a,b) -> (b,b), id, swap, (a,b) -> (a,a) in image order
        assert_eq!(
            images,
            vec![
                vec![0, 0, 3, 3],
                vec![0, 1, 2, 3],
                vec![0, 2, 1, 3],
                vec![0, 3, 0, 3]
            ]
        );
        for n in [2, 3, 4, 6, 8, 12] {
            let z = build_zn(n).unwrap();
            let e = enumerate_endos(&z).unwrap();
            assert_eq!(e.len(), 1);
            assert!(e[0].is_identity());
        }
        assert_eq!(enumerate_endos(&build_gf4()).unwrap().len(), 2);
        let u3 = build_upper_triangular(&build_zn(2).unwrap(), 3).unwrap();
        assert!(enumerate_endos(&u3).is_ok());
        let big = build_zn(65).unwrap();
        assert!(matches!(enumerate_endos(&big), Err(Error::Capacity { .. })));
    }

    #[test]
    fn orders() {
        let r = z2z2();
        assert_eq!(endo_order(&swap(&r)), Some(2));
        assert_eq!(endo_order(&Endo::identity(&r)), Some(1));
        let collapse = Endo::new(&r, vec![0, 3, 0, 3], "x").unwrap();
        assert_eq!(endo_order(&collapse), None);
        let p = collapse.powers();
        assert_eq!(p.get(5), collapse.image());
    }

    #[test]
    fn lifts() {
        let r = z2z2();
        let u = build_upper_triangular(&r, 2).unwrap();
        let lifted = lift_endo_matrix(&swap(&r), &u).unwrap();
        assert_eq!(endo_order(&lifted), Some(2));
        let e = u.from_digits(&[2, 0, 0]).unwrap();
        assert_eq!(u.digits(lifted.apply(e)).unwrap(), vec![1, 0, 0]);
        let id = lift_endo_matrix(&Endo::identity(&r), &u).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn quotient_lifts() {
        let z4 = build_zn(4).unwrap();
        let i = crate::radical::ideal_generated_by(&z4, 2);
        let id = Endo::identity(&z4);
        assert!(is_alpha_ideal(&i, &id));
        let (q, e) = lift_endo_quotient(&id, &i).unwrap();
        assert_eq!(q.size(), 2);
        assert!(e.is_identity());
        let r = z2z2();
        let i = crate::radical::ideal_generated_by(&r, 2);
        assert!(!is_alpha_ideal(&i, &swap(&r)));
        assert!(matches!(
            lift_endo_quotient(&swap(&r), &i),
            Err(Error::InvalidLift(_))
        ));
        let (q, e) = lift_endo_quotient(&swap(&r), &IdealSet::zero(&r)).unwrap();
        assert_eq!(q.size(), 4);
        assert_eq!(e.image(), swap(&r).image());
    }

    #[test]
    fn predicates() {
        let r = z2z2();
        let s = swap(&r);
        // lex-first violation: a = b = (0,1)
        let v = is_compatible(&s);
        assert_eq!(
            v.witness(),
            Some(&Witness::Elements {
                elems: vec![1, 1],
                detail: "a alpha(b) = 0 but ab != 0".into()
            })
        );
        // the pair a = b = (1,0) also breaks it
        assert_eq!(r.mul(2, s.apply(2)), 0);
        assert_ne!(r.mul(2, 2), 0);
        assert!(is_compatible(&Endo::identity(&build_zn(4).unwrap())).holds());
        let z4 = build_zn(4).unwrap();
        assert!(
            matches!(is_rigid(&Endo::identity(&z4)).witness(), Some(Witness::Elements { elems, .. }) if elems == &vec![2])
        );
        assert!(is_rigid(&Endo::identity(&build_zn(3).unwrap())).holds());
        assert!(is_rigid(&s).fails());
        let rad = prime_radical(&z4).unwrap();
        assert!(is_alpha_star_rigid(&Endo::identity(&z4), &rad).holds());
        let rad = prime_radical(&r).unwrap();
        assert!(is_alpha_star_rigid(&s, &rad).fails());
    }
}
