//! Bounded checks of zero-product properties over the infinite rings `R[x]`
//! and `R[x; alpha]`.
//!
//! A polynomial ring `S` over a finite `R` cannot be tabulated, so these
//! checks restrict both the inner degree (polynomials in `x`, the
//! coefficients) and the outer degree (the variable `y` of `S[y]` or
//! `S[y; alpha]`). A pass is evidence at those bounds and nothing more.

use std::collections::HashMap;

use crate::endo::{is_alpha_ideal, is_alpha_star_rigid, AlphaPowers, Endo};
use crate::error::{Error, Result};
use crate::radical::{prime_radical, IdealSet};
use crate::ring::{Elem, FiniteRing};
use crate::skewpoly::Tri;
use crate::verdict::Twist;

/// The coefficient ring `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inner {
    /// `R[x]`, with `x` central.
    Polynomial,
    /// `R[x; alpha]`.
    Skew,
}

/// How the outer variable `y` acts on `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outer {
    /// `y s = alpha(s) y`, with `alpha` applied to every coefficient of `s`.
    Twisted,
    /// `y` commutes with `S`.
    Central,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NestedSpec {
    pub inner: Inner,
    pub outer: Outer,
    /// Conclusion on `f_i g_j` (plain) or `f_i alpha^i(g_j)` (skew).
    pub twist: Twist,
}

impl NestedSpec {
    pub fn describe(&self) -> String {
        let s = match self.inner {
            Inner::Polynomial => "R[x]",
            Inner::Skew => "R[x;alpha]",
        };
        let outer = match self.outer {
            Outer::Twisted => format!("{s}[y;alpha]"),
            Outer::Central => format!("{s}[y]"),
        };
        let twist = match self.twist {
            Twist::Plain => "f_i g_j",
            Twist::Skew => "f_i alpha^i(g_j)",
        };
        format!("{outer}, {twist} in N*({s})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NestedBounds {
    pub inner_degree: usize,
    pub outer_degree: usize,
}

/// Largest bounds from a fixed ladder that keep the candidate set small.
pub fn choose_bounds(n: usize) -> NestedBounds {
    const LADDER: [(usize, usize); 3] = [(2, 2), (2, 1), (1, 1)];
    for (inner, outer) in LADDER {
        let c = (n as u128).pow(inner as u32 + 1);
        if c <= 256 && c.pow(outer as u32 + 1) <= 65_536 {
            return NestedBounds {
                inner_degree: inner,
                outer_degree: outer,
            };
        }
    }
    NestedBounds {
        inner_degree: 0,
        outer_degree: 1,
    }
}

/// Offending pair: outer coefficients are inner coefficient tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedWitness {
    pub f: Vec<Vec<Elem>>,
    pub g: Vec<Vec<Elem>>,
    pub i: usize,
    pub j: usize,
    pub product: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestedOutcome {
    Holds,
    Fails(NestedWitness),
    Unknown(String),
}

#[derive(Debug, Clone)]
pub struct NestedReport {
    pub spec: NestedSpec,
    pub bounds: NestedBounds,
    pub outcome: NestedOutcome,
    /// Zero products found with nonzero factors.
    pub annihilating: u64,
}

impl NestedReport {
    pub fn as_bool(&self) -> Option<bool> {
        match self.outcome {
            NestedOutcome::Holds => Some(true),
            NestedOutcome::Fails(_) => Some(false),
            NestedOutcome::Unknown(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        let b = format!(
            "inner degree <= {}, outer degree <= {}",
            self.bounds.inner_degree, self.bounds.outer_degree
        );
        match &self.outcome {
            NestedOutcome::Holds => format!("holds for {} ({b})", self.spec.describe()),
            NestedOutcome::Fails(w) => format!(
                "fails for {} ({b}): f = {:?}, g = {:?}, (i, j) = ({}, {}), product {:?}",
                self.spec.describe(),
                w.f,
                w.g,
                w.i,
                w.j,
                w.product
            ),
            NestedOutcome::Unknown(r) => format!("unknown for {} ({b}): {r}", self.spec.describe()),
        }
    }
}

/// Radical membership in `S`, judged coefficientwise.
struct Membership {
    radical: IdealSet,
    /// Coefficients in `N*(R)` imply membership.
    sufficient: bool,
    /// A coefficient outside `N*(R)` rules membership out.
    necessary: bool,
}

impl Membership {
    fn new(alpha: &Endo, inner: Inner) -> Result<Membership> {
        let radical = prime_radical(alpha.ring())?;
        Ok(match inner {
            // N*(R[x]) = N*(R)[x]
            Inner::Polynomial => Membership {
                radical,
                sufficient: true,
                necessary: true,
            },
            Inner::Skew => {
                let ideal = is_alpha_ideal(&radical, alpha);
                let star = is_alpha_star_rigid(alpha, &radical).holds();
                Membership {
                    // N*(R)[x; alpha] is then a nilpotent ideal
                    sufficient: ideal,
                    necessary: (star && ideal) || alpha.is_identity(),
                    radical,
                }
            }
        })
    }

    fn test(&self, p: &[Elem]) -> Tri {
        if p.iter().all(|&c| self.radical.contains(c)) {
            if self.sufficient {
                Tri::Yes
            } else {
                Tri::Unknown
            }
        } else if self.necessary {
            Tri::No
        } else {
            Tri::Unknown
        }
    }
}

/// Inner polynomials of degree at most `e`, indexed in mixed radix with the
/// constant term most significant.
struct Candidates {
    ring: std::sync::Arc<FiniteRing>,
    e: usize,
    count: usize,
    coeffs: Vec<Elem>,
    /// `twisted[k][c]` is the index of `alpha^k(c)` (coefficientwise).
    twisted: Vec<Vec<u32>>,
    /// `c1 * c2` in `S`, `2e + 1` coefficients per entry.
    products: Vec<Elem>,
}

impl Candidates {
    fn new(
        alpha: &Endo,
        powers: &AlphaPowers,
        inner: Inner,
        outer: Outer,
        bounds: NestedBounds,
    ) -> Candidates {
        let ring = alpha.ring().clone();
        let n = ring.size();
        let e = bounds.inner_degree;
        let w = e + 1;
        let count = n.pow(w as u32);
        let mut coeffs = vec![0 as Elem; count * w];
        for c in 0..count {
            let mut rest = c;
            for k in (0..w).rev() {
                coeffs[c * w + k] = (rest % n) as Elem;
                rest /= n;
            }
        }
        let index = |cs: &[Elem]| cs.iter().fold(0usize, |acc, &x| acc * n + x as usize) as u32;
        let twisted = (0..=bounds.outer_degree)
            .map(|k| {
                (0..count)
                    .map(|c| match outer {
                        Outer::Central => c as u32,
                        Outer::Twisted => {
                            let t: Vec<Elem> = coeffs[c * w..(c + 1) * w]
                                .iter()
                                .map(|&a| powers.apply(k, a))
                                .collect();
                            index(&t)
                        }
                    })
                    .collect()
            })
            .collect();
        let pw = 2 * e + 1;
        let mut products = vec![ring.zero(); count * count * pw];
        for c1 in 0..count {
            let a = &coeffs[c1 * w..(c1 + 1) * w];
            for c2 in 0..count {
                let b = &coeffs[c2 * w..(c2 + 1) * w];
                let out = &mut products[(c1 * count + c2) * pw..(c1 * count + c2 + 1) * pw];
                for (p, &ap) in a.iter().enumerate() {
                    if ap == ring.zero() {
                        continue;
                    }
                    for (q, &bq) in b.iter().enumerate() {
                        let bq = match inner {
                            Inner::Polynomial => bq,
                            Inner::Skew => powers.apply(p, bq),
                        };
                        out[p + q] = ring.add(out[p + q], ring.mul(ap, bq));
                    }
                }
            }
        }
        Candidates {
            ring,
            e,
            count,
            coeffs,
            twisted,
            products,
        }
    }

    fn width(&self) -> usize {
        2 * self.e + 1
    }

    fn poly(&self, c: u32) -> Vec<Elem> {
        let w = self.e + 1;
        self.coeffs[c as usize * w..(c as usize + 1) * w].to_vec()
    }

    /// `c1 * alpha^k(c2)` in `S`.
    fn product(&self, c1: u32, k: usize, c2: u32) -> &[Elem] {
        let c2 = self.twisted[k][c2 as usize] as usize;
        let pw = self.width();
        let at = (c1 as usize * self.count + c2) * pw;
        &self.products[at..at + pw]
    }

    fn accumulate(&self, acc: &mut [Elem], p: &[Elem]) {
        for (a, &b) in acc.iter_mut().zip(p) {
            *a = self.ring.add(*a, b);
        }
    }

    fn key(&self, p: &[Elem]) -> u128 {
        let n = self.ring.size() as u128;
        p.iter().fold(0u128, |acc, &x| acc * n + x as u128)
    }
}

struct Search<'a> {
    cands: &'a Candidates,
    membership: &'a Membership,
    twist: Twist,
    o: usize,
    zero_key: u128,
    /// `(s, f_s)` to the map from `f_s * alpha^s(c)` to the sorted list of `c`.
    fibres: HashMap<(usize, u32), HashMap<u128, Vec<u32>>>,
    work: u64,
    cap: u64,
    annihilating: u64,
    undecided: bool,
}

enum Flow {
    Continue,
    Found(NestedWitness),
    Exceeded,
}

impl Search<'_> {
    fn fibre_map(&mut self, s: usize, fs: u32) -> &HashMap<u128, Vec<u32>> {
        let cands = self.cands;
        self.fibres.entry((s, fs)).or_insert_with(|| {
            let mut m: HashMap<u128, Vec<u32>> = HashMap::new();
            for c in 0..cands.count as u32 {
                m.entry(cands.key(cands.product(fs, s, c)))
                    .or_default()
                    .push(c);
            }
            m
        })
    }

    /// `-sum_{i=s+1}^{min(s+t, o)} f_i alpha^i(g_{s+t-i})` as a key.
    fn target(&self, f: &[u32], g: &[u32], s: usize, t: usize) -> u128 {
        let cands = self.cands;
        let mut acc = vec![cands.ring.zero(); cands.width()];
        for i in s + 1..=(s + t).min(self.o) {
            cands.accumulate(&mut acc, cands.product(f[i], i, g[s + t - i]));
        }
        for a in acc.iter_mut() {
            *a = cands.ring.neg(*a);
        }
        cands.key(&acc)
    }

    fn tail_vanishes(&self, f: &[u32], g: &[u32], s: usize) -> bool {
        let cands = self.cands;
        for l in s + self.o + 1..=2 * self.o {
            let mut acc = vec![cands.ring.zero(); cands.width()];
            for i in l - self.o..=self.o {
                cands.accumulate(&mut acc, cands.product(f[i], i, g[l - i]));
            }
            if cands.key(&acc) != self.zero_key {
                return false;
            }
        }
        true
    }

    fn conclude(&mut self, f: &[u32], g: &[u32]) -> Option<NestedWitness> {
        let cands = self.cands;
        self.annihilating += 1;
        for (i, &fi) in f.iter().enumerate() {
            for (j, &gj) in g.iter().enumerate() {
                let k = match self.twist {
                    Twist::Plain => 0,
                    Twist::Skew => i,
                };
                let p = cands.product(fi, k, gj);
                match self.membership.test(p) {
                    Tri::Yes => {}
                    Tri::Unknown => self.undecided = true,
                    Tri::No => {
                        return Some(NestedWitness {
                            f: f.iter().map(|&c| cands.poly(c)).collect(),
                            g: g.iter().map(|&c| cands.poly(c)).collect(),
                            i,
                            j,
                            product: p.to_vec(),
                        })
                    }
                }
            }
        }
        None
    }

    fn descend(&mut self, f: &[u32], g: &mut Vec<u32>, s: usize, t: usize) -> Flow {
        if t > self.o {
            if g.iter().all(|&c| c == 0) || !self.tail_vanishes(f, g, s) {
                return Flow::Continue;
            }
            return match self.conclude(f, g) {
                Some(w) => Flow::Found(w),
                None => Flow::Continue,
            };
        }
        let key = self.target(f, g, s, t);
        let fibre: Vec<u32> = match self.fibre_map(s, f[s]).get(&key) {
            Some(v) => v.clone(),
            None => return Flow::Continue,
        };
        for c in fibre {
            self.work += 1;
            if self.work > self.cap {
                return Flow::Exceeded;
            }
            g[t] = c;
            match self.descend(f, g, s, t + 1) {
                Flow::Continue => {}
                other => return other,
            }
        }
        g[t] = 0;
        Flow::Continue
    }
}

/// Scans pairs over `S` within `bounds`, in lexicographic order of
/// `(f, g, i, j)`, for a zero product whose conclusion provably fails.
pub fn check_nested(
    alpha: &Endo,
    spec: NestedSpec,
    bounds: NestedBounds,
    cap: u64,
) -> Result<NestedReport> {
    let ring = alpha.ring();
    let c = (ring.size() as u128).pow(bounds.inner_degree as u32 + 1);
    if c > 4096 || c.pow(2) * (2 * bounds.inner_degree as u128 + 1) > 1 << 26 {
        return Err(Error::Capacity {
            what: "nested candidate table".into(),
            needed: c,
            cap: 4096,
        });
    }
    let powers = alpha.powers();
    let cands = Candidates::new(alpha, &powers, spec.inner, spec.outer, bounds);
    let membership = Membership::new(alpha, spec.inner)?;
    let o = bounds.outer_degree;
    let zero_key = cands.key(&vec![ring.zero(); cands.width()]);
    let mut search = Search {
        cands: &cands,
        membership: &membership,
        twist: spec.twist,
        o,
        zero_key,
        fibres: HashMap::new(),
        work: 0,
        cap,
        annihilating: 0,
        undecided: false,
    };
    let total = cands.count.pow(o as u32 + 1);
    let mut f = vec![0u32; o + 1];
    let mut g = vec![0u32; o + 1];
    let mut outcome = NestedOutcome::Holds;
    'outer: for code in 1..total {
        let mut rest = code;
        for k in (0..=o).rev() {
            f[k] = (rest % cands.count) as u32;
            rest /= cands.count;
        }
        let s = f.iter().position(|&c| c != 0).unwrap();
        g.iter_mut().for_each(|x| *x = 0);
        match search.descend(&f, &mut g, s, 0) {
            Flow::Continue => {}
            Flow::Found(w) => {
                outcome = NestedOutcome::Fails(w);
                break 'outer;
            }
            Flow::Exceeded => {
                outcome = NestedOutcome::Unknown(format!("budget of {cap} candidates exhausted"));
                break 'outer;
            }
        }
    }
    if outcome == NestedOutcome::Holds && search.undecided {
        outcome = NestedOutcome::Unknown(
            "radical membership in the coefficient ring is undecided for some product".into(),
        );
    }
    Ok(NestedReport {
        spec,
        bounds,
        outcome,
        annihilating: search.annihilating,
    })
}

/// Recomputes a nested witness with schoolbook arithmetic.
pub fn verify_nested(alpha: &Endo, spec: NestedSpec, w: &NestedWitness) -> Result<bool> {
    let ring = alpha.ring();
    let n = ring.size();
    let all: Vec<&Vec<Elem>> = w.f.iter().chain(&w.g).collect();
    if w.f.is_empty() || w.g.is_empty() || w.i >= w.f.len() || w.j >= w.g.len() {
        return Err(Error::MalformedWitness(
            "nested witness indices out of range".into(),
        ));
    }
    if all.iter().any(|p| p.iter().any(|&c| c as usize >= n)) {
        return Err(Error::MalformedWitness(
            "nested coefficient out of range".into(),
        ));
    }
    let pow = |k: usize, mut a: Elem| {
        for _ in 0..k {
            a = alpha.apply(a);
        }
        a
    };
    // multiplication in S
    let smul = |a: &[Elem], b: &[Elem]| -> Vec<Elem> {
        let mut out = vec![ring.zero(); (a.len() + b.len()).saturating_sub(1).max(1)];
        for (p, &x) in a.iter().enumerate() {
            for (q, &y) in b.iter().enumerate() {
                let y = match spec.inner {
                    Inner::Polynomial => y,
                    Inner::Skew => pow(p, y),
                };
                out[p + q] = ring.add(out[p + q], ring.mul(x, y));
            }
        }
        out
    };
    let outer_twist = |k: usize, b: &[Elem]| -> Vec<Elem> {
        match spec.outer {
            Outer::Central => b.to_vec(),
            Outer::Twisted => b.iter().map(|&y| pow(k, y)).collect(),
        }
    };
    let zero = |p: &[Elem]| p.iter().all(|&c| c == ring.zero());
    for l in 0..w.f.len() + w.g.len() - 1 {
        let mut acc: Vec<Elem> = Vec::new();
        for (i, fi) in w.f.iter().enumerate() {
            if l < i || l - i >= w.g.len() {
                continue;
            }
            let term = smul(fi, &outer_twist(i, &w.g[l - i]));
            if acc.len() < term.len() {
                acc.resize(term.len(), ring.zero());
            }
            for (a, &t) in acc.iter_mut().zip(&term) {
                *a = ring.add(*a, t);
            }
        }
        if !zero(&acc) {
            return Ok(false);
        }
    }
    let k = match spec.twist {
        Twist::Plain => 0,
        Twist::Skew => w.i,
    };
    let p = smul(&w.f[w.i], &outer_twist(k, &w.g[w.j]));
    let trimmed = |v: &[Elem]| {
        let mut v = v.to_vec();
        while v.last() == Some(&ring.zero()) {
            v.pop();
        }
        v
    };
    if trimmed(&p) != trimmed(&w.product) {
        return Ok(false);
    }
    let membership = Membership::new(alpha, spec.inner)?;
    Ok(membership.test(&p) == Tri::No)
}
