//! Ideals, ideal nilpotency and the prime radical.
//!
//! Two independent routes to the prime radical are provided: the
//! element-wise test "the ideal generated by x is nilpotent", and the
//! intersection of all prime ideals found by enumerating every ideal.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::{upper_slots, Elem, FiniteRing, Shape};

/// Default cap on the number of ideals the prime-ideal oracle may enumerate.
pub const IDEAL_ENUMERATION_CAP: usize = 1_000_000;

/// Additive subgroup grown one generator at a time, by cosets.
pub struct AdditiveSpan<'r> {
    ring: &'r FiniteRing,
    members: FixedBitSet,
    elems: Vec<Elem>,
    generators: Vec<Elem>,
}

impl<'r> AdditiveSpan<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        let mut members = FixedBitSet::with_capacity(ring.size());
        members.insert(ring.zero() as usize);
        AdditiveSpan {
            ring,
            members,
            elems: vec![ring.zero()],
            generators: Vec::new(),
        }
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e as usize)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Adds `g` to the span. Returns false if it was already a member.
    pub fn insert(&mut self, g: Elem) -> bool {
        if self.contains(g) {
            return false;
        }
        self.generators.push(g);
        let base_len = self.elems.len();
        let mut shift = g;
        // H + g, H + 2g, ... until some multiple of g falls back into H
        while !self.contains(shift) {
            for k in 0..base_len {
                let e = self.ring.add(self.elems[k], shift);
                self.members.insert(e as usize);
                self.elems.push(e);
            }
            shift = self.ring.add(shift, g);
        }
        true
    }

    pub fn extend<I: IntoIterator<Item = Elem>>(&mut self, items: I) {
        for g in items {
            self.insert(g);
        }
    }

    fn into_parts(self) -> (FixedBitSet, Vec<Elem>) {
        (self.members, self.generators)
    }
}

/// Greedy generating sequence of the additive group, in carrier order.
pub fn additive_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut span = AdditiveSpan::new(ring);
    for e in ring.elements() {
        span.insert(e);
        if span.len() == ring.size() {
            break;
        }
    }
    span.generators().to_vec()
}

/// A two-sided ideal, stored as a membership mask plus additive generators.
#[derive(Clone)]
pub struct IdealSet {
    ring: Arc<FiniteRing>,
    members: FixedBitSet,
    generators: Vec<Elem>,
    label: Option<String>,
}

impl PartialEq for IdealSet {
    fn eq(&self, other: &Self) -> bool {
        self.ring.size() == other.ring.size() && self.members == other.members
    }
}

impl Eq for IdealSet {}

impl fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<Elem> = self.elements().collect();
        write!(f, "IdealSet({}, {:?})", self.ring.provenance(), elems)
    }
}

impl IdealSet {
    fn from_span(ring: &Arc<FiniteRing>, span: AdditiveSpan<'_>) -> IdealSet {
        let (members, generators) = span.into_parts();
        IdealSet {
            ring: ring.clone(),
            members,
            generators,
            label: None,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> IdealSet {
        IdealSet::from_span(ring, AdditiveSpan::new(ring))
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> IdealSet {
        let mut span = AdditiveSpan::new(ring);
        span.extend(additive_generators(ring));
        IdealSet::from_span(ring, span)
    }

    /// Smallest ideal containing every element of `seeds`.
    pub fn generated_by(ring: &Arc<FiniteRing>, seeds: &[Elem]) -> IdealSet {
        let gens = additive_generators(ring);
        let mut span = AdditiveSpan::new(ring);
        for &x in seeds {
            for &g in &gens {
                let gx = ring.mul(g, x);
                for &h in &gens {
                    span.insert(ring.mul(gx, h));
                }
            }
        }
        IdealSet::from_span(ring, span)
    }

    /// Wraps a membership mask, checking every ideal axiom.
    pub fn from_members(ring: &Arc<FiniteRing>, mask: &FixedBitSet) -> Result<IdealSet> {
        let mut span = AdditiveSpan::new(ring);
        span.extend(mask.ones().map(|e| e as Elem));
        let ideal = IdealSet::from_span(ring, span);
        if ideal.members != *mask {
            let stray = ideal.members.difference(mask).next().unwrap_or(0);
            return Err(Error::InvalidIdeal(format!(
                "not closed under addition: {} is a sum of members",
                ring.format_elem(stray as Elem)
            )));
        }
        ideal.verify()?;
        Ok(ideal)
    }

    pub fn with_label(mut self, label: &str) -> IdealSet {
        self.label = Some(label.to_string());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.len() == self.ring.size()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|e| e as Elem)
    }

    pub fn is_subset(&self, other: &IdealSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Checks zero, additive closure, negation and two-sided absorption.
    pub fn verify(&self) -> Result<()> {
        let r = &*self.ring;
        if !self.contains(r.zero()) {
            return Err(Error::InvalidIdeal("does not contain zero".into()));
        }
        let elems: Vec<Elem> = self.elements().collect();
        for &a in &elems {
            if !self.contains(r.neg(a)) {
                return Err(Error::InvalidIdeal(format!(
                    "missing the negative of {}",
                    r.format_elem(a)
                )));
            }
            for &b in &elems {
                if !self.contains(r.add(a, b)) {
                    return Err(Error::InvalidIdeal(format!(
                        "not closed under addition at ({}, {})",
                        r.format_elem(a),
                        r.format_elem(b)
                    )));
                }
            }
            for x in r.elements() {
                if !self.contains(r.mul(x, a)) || !self.contains(r.mul(a, x)) {
                    return Err(Error::InvalidIdeal(format!(
                        "does not absorb {} against {}",
                        r.format_elem(x),
                        r.format_elem(a)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Ideal sum `I + J`.
    pub fn sum(&self, other: &IdealSet) -> IdealSet {
        let mut span = AdditiveSpan::new(&self.ring);
        span.extend(self.generators.iter().copied());
        span.extend(other.generators.iter().copied());
        IdealSet::from_span(&self.ring, span)
    }

    /// Ideal product `I J`: additive closure of all products `ab`.
    pub fn product(&self, other: &IdealSet) -> IdealSet {
        let r = &*self.ring;
        let mut span = AdditiveSpan::new(r);
        for &a in &self.generators {
            for &b in &other.generators {
                span.insert(r.mul(a, b));
            }
        }
        IdealSet::from_span(&self.ring, span)
    }

    pub fn intersection(&self, other: &IdealSet) -> IdealSet {
        let mut mask = self.members.clone();
        mask.intersect_with(&other.members);
        let mut span = AdditiveSpan::new(&self.ring);
        span.extend(mask.ones().map(|e| e as Elem));
        IdealSet::from_span(&self.ring, span)
    }

    /// Formats the member list with the ring's element notation.
    pub fn describe(&self) -> String {
        let items: Vec<String> = self.elements().map(|e| self.ring.format_elem(e)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// Smallest ideal containing `a`.
pub fn ideal_generated_by(ring: &Arc<FiniteRing>, a: Elem) -> IdealSet {
    IdealSet::generated_by(ring, &[a])
}

/// Returns the nilpotency index `k` (with `I^k = 0`) or `None`.
pub fn nilpotency_index(ideal: &IdealSet) -> Option<usize> {
    let mut power = ideal.clone();
    let mut k = 1;
    loop {
        if power.is_zero() {
            return Some(k);
        }
        let next = power.product(ideal);
        if next.len() == power.len() {
            return None;
        }
        power = next;
        k += 1;
    }
}

pub fn is_nilpotent_ideal(ideal: &IdealSet) -> (bool, Option<usize>) {
    let k = nilpotency_index(ideal);
    (k.is_some(), k)
}

/// Nilpotent elements as a membership mask.
pub fn nil_elements(ring: &FiniteRing) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(ring.size());
    for a in ring.elements() {
        if ring.is_nilpotent(a) {
            mask.insert(a as usize);
        }
    }
    mask
}

/// The prime radical, as the set of `x` whose generated ideal is nilpotent.
pub fn prime_radical(ring: &Arc<FiniteRing>) -> Result<IdealSet> {
    let nil = nil_elements(ring);
    let gens = additive_generators(ring);
    let mut found = FixedBitSet::with_capacity(ring.size());
    for x in nil.ones() {
        if found.contains(x) {
            continue;
        }
        let x = x as Elem;
        let mut span = AdditiveSpan::new(ring);
        for &g in &gens {
            let gx = ring.mul(g, x);
            for &h in &gens {
                span.insert(ring.mul(gx, h));
            }
        }
        let ideal = IdealSet::from_span(ring, span);
        if nilpotency_index(&ideal).is_some() {
            // every member generates a sub-ideal of a nilpotent ideal
            found.union_with(&ideal.members);
        }
    }
    IdealSet::from_members(ring, &found)
        .map(|i| i.with_label("radical"))
        .map_err(|e| {
            Error::Internal(format!(
                "prime radical of {} is not an ideal: {e}",
                ring.provenance()
            ))
        })
}

/// Every two-sided ideal, as sums of principal ideals, in discovery order.
pub fn enumerate_ideals(ring: &Arc<FiniteRing>, cap: usize) -> Result<Vec<IdealSet>> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut principal: Vec<IdealSet> = Vec::new();
    let mut all: Vec<IdealSet> = Vec::new();
    let zero = IdealSet::zero(ring);
    seen.insert(zero.members.clone());
    all.push(zero);
    for x in ring.elements() {
        let p = ideal_generated_by(ring, x);
        if seen.insert(p.members.clone()) {
            principal.push(p.clone());
            all.push(p);
        }
    }
    let mut queue: VecDeque<usize> = (1..all.len()).collect();
    while let Some(idx) = queue.pop_front() {
        for p in &principal {
            if p.is_subset(&all[idx]) {
                continue;
            }
            let s = all[idx].sum(p);
            if seen.insert(s.members.clone()) {
                if all.len() >= cap {
                    return Err(Error::Capacity {
                        what: format!("ideal enumeration of {}", ring.provenance()),
                        needed: all.len() as u128 + 1,
                        cap: cap as u128,
                    });
                }
                queue.push_back(all.len());
                all.push(s);
            }
        }
    }
    Ok(all)
}

/// Proper ideal `I` such that `aRb` inside `I` forces `a` or `b` into `I`.
pub fn is_prime_ideal(ideal: &IdealSet) -> bool {
    if ideal.is_whole() {
        return false;
    }
    let r = &**ideal.ring();
    let gens = additive_generators(r);
    let outside: Vec<Elem> = r.elements().filter(|&e| !ideal.contains(e)).collect();
    outside.iter().all(|&a| {
        outside
            .iter()
            .all(|&b| gens.iter().any(|&g| !ideal.contains(r.mul(r.mul(a, g), b))))
    })
}

/// Intersection of all prime ideals; an independent oracle for [`prime_radical`].
pub fn prime_radical_via_primes(ring: &Arc<FiniteRing>, cap: usize) -> Result<IdealSet> {
    let ideals = enumerate_ideals(ring, cap)?;
    let mut acc = IdealSet::whole(ring);
    for ideal in ideals.iter().filter(|i| is_prime_ideal(i)) {
        acc = acc.intersection(ideal);
    }
    Ok(acc)
}

/// Upper triangular matrices whose diagonal entries lie in the prime radical
/// of the base ring.
pub fn un_radical_formula(un: &Arc<FiniteRing>) -> Result<IdealSet> {
    let (base, n) = match un.shape() {
        Shape::UpperTriangular { base, n } => (base, *n),
        _ => {
            return Err(Error::ContextMismatch(format!(
                "{} is not an upper triangular ring",
                un.provenance()
            )))
        }
    };
    let base_radical = prime_radical(base)?;
    let diagonal: Vec<usize> = upper_slots(n)
        .into_iter()
        .enumerate()
        .filter(|(_, (i, j))| i == j)
        .map(|(k, _)| k)
        .collect();
    let mut mask = FixedBitSet::with_capacity(un.size());
    for e in un.elements() {
        let digits = un.digits(e).expect("upper triangular digits");
        if diagonal.iter().all(|&k| base_radical.contains(digits[k])) {
            mask.insert(e as usize);
        }
    }
    IdealSet::from_members(un, &mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_full_matrix, build_product, build_upper_triangular, build_zn};

    fn list(i: &IdealSet) -> Vec<Elem> {
        i.elements().collect()
    }

    #[test]
    fn generated_ideals() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(list(&ideal_generated_by(&z4, 2)), vec![0, 2]);
        assert_eq!(list(&ideal_generated_by(&z4, 0)), vec![0]);
        let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
        let e11 = m2.matrix_unit(1, 1).unwrap();
        assert!(ideal_generated_by(&m2, e11).is_whole());
    }

    #[test]
    fn nilpotency_indices() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(
            is_nilpotent_ideal(&ideal_generated_by(&z4, 2)),
            (true, Some(2))
        );
        let u2 = build_upper_triangular(&build_zn(2).unwrap(), 2).unwrap();
        let e12 = u2.matrix_unit(1, 2).unwrap();
        assert_eq!(
            is_nilpotent_ideal(&ideal_generated_by(&u2, e12)),
            (true, Some(2))
        );
        let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
        assert_eq!(is_nilpotent_ideal(&IdealSet::whole(&m2)), (false, None));
    }

    #[test]
    fn radicals() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(list(&prime_radical(&z4).unwrap()), vec![0, 2]);
        let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
        assert!(prime_radical(&m2).unwrap().is_zero());
        let u2 = build_upper_triangular(&build_zn(2).unwrap(), 2).unwrap();
        assert_eq!(
            list(&prime_radical(&u2).unwrap()),
            vec![0, u2.matrix_unit(1, 2).unwrap()]
        );
        let z6 = build_zn(6).unwrap();
        assert!(prime_radical_via_primes(&z6, IDEAL_ENUMERATION_CAP)
            .unwrap()
            .is_zero());
        let primes: Vec<Vec<Elem>> = enumerate_ideals(&z6, 100)
            .unwrap()
            .iter()
            .filter(|i| is_prime_ideal(i))
            .map(list)
            .collect();
        assert_eq!(primes.len(), 2);
        assert!(primes.contains(&vec![0, 2, 4]) && primes.contains(&vec![0, 3]));
    }

    #[test]
    fn nil_sets() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(nil_elements(&z4).ones().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(nil_elements(&build_zn(6).unwrap()).count_ones(..), 1);
        let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
        let nil = nil_elements(&m2);
        assert!(nil.contains(m2.matrix_unit(1, 2).unwrap() as usize));
        assert!(nil.contains(m2.matrix_unit(2, 1).unwrap() as usize));
    }

    #[test]
    fn upper_triangular_formula() {
        let z2 = build_zn(2).unwrap();
        let u = build_upper_triangular(&z2, 2).unwrap();
        assert_eq!(list(&un_radical_formula(&u).unwrap()), vec![0, 2]);
        let u4 = build_upper_triangular(&build_zn(4).unwrap(), 2).unwrap();
        assert_eq!(un_radical_formula(&u4).unwrap().len(), 16);
        let p = build_product(&z2, &z2).unwrap();
        let up = build_upper_triangular(&p, 2).unwrap();
        assert_eq!(un_radical_formula(&up).unwrap().len(), 4);
    }

    #[test]
    fn span_generators_cover_group() {
        let z8 = build_zn(8).unwrap();
        assert_eq!(additive_generators(&z8), vec![1]);
        let p = build_product(&build_zn(2).unwrap(), &build_zn(2).unwrap()).unwrap();
        assert_eq!(additive_generators(&p), vec![1, 2]);
    }
}
