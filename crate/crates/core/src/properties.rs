//! Ring-level and zero-product property checkers, plus independent witness
//! verification.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::endo::{
    is_alpha_ideal, is_alpha_star_rigid, is_compatible, is_half_compatible, is_rigid,
    lift_endo_quotient, Endo,
};
use crate::error::{Error, Result};
use crate::radical::{additive_generators, prime_radical, IdealSet};
use crate::ring::{Elem, FiniteRing, Shape};
use crate::search::{exhaustive_scan, lift_pair, random_scan, Ctx, Hit, PairStream, ScanResult};
use crate::skewpoly::SkewRing;
use crate::verdict::{
    Outcome, Params, Property, ScanMode, Subject, Target, Twist, Verdict, Witness,
};

pub const DEFAULT_DEGREE: usize = 3;
/// Budget of elementary ring products per check.
pub const DEFAULT_PAIR_CAP: u64 = 100_000_000;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Quotient witnesses tried when lifting a failure from `R / N*` back to `R`.
const MAX_LIFT_ATTEMPTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeRequest {
    /// Exhaustive when affordable, then the radical quotient, then sampling.
    Auto,
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub degree: usize,
    pub cap: u64,
    pub mode: ModeRequest,
    pub seed: u64,
    pub samples: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            degree: DEFAULT_DEGREE,
            cap: DEFAULT_PAIR_CAP,
            mode: ModeRequest::Auto,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl CheckOptions {
    pub fn with_degree(degree: usize) -> CheckOptions {
        CheckOptions {
            degree,
            ..CheckOptions::default()
        }
    }
}

fn ring_verdict(
    property: Property,
    ring: &Arc<FiniteRing>,
    found: Option<(Vec<Elem>, &str)>,
) -> Verdict {
    Verdict {
        property,
        subject: Subject {
            ring: ring.clone(),
            endo: None,
        },
        params: Params::elementwise(),
        outcome: match found {
            None => Outcome::Holds,
            Some((elems, detail)) => Outcome::Fails(Witness::Elements {
                elems,
                detail: detail.to_string(),
            }),
        },
        note: None,
    }
}

/// No nonzero nilpotent elements.
pub fn check_reduced(ring: &Arc<FiniteRing>) -> Verdict {
    let found = ring
        .elements()
        .find(|&a| a != ring.zero() && ring.is_nilpotent(a))
        .map(|a| (vec![a], "nonzero nilpotent element"));
    ring_verdict(Property::Reduced, ring, found)
}

/// `ab = 0` implies `ba = 0`.
pub fn check_reversible(ring: &Arc<FiniteRing>) -> Verdict {
    let z = ring.zero();
    let found = ring
        .elements()
        .flat_map(|a| ring.elements().map(move |b| (a, b)))
        .find(|&(a, b)| ring.mul(a, b) == z && ring.mul(b, a) != z)
        .map(|(a, b)| (vec![a, b], "ab = 0 but ba != 0"));
    ring_verdict(Property::Reversible, ring, found)
}

/// `ab = 0` implies `arb = 0` for every `r`. The witness is `(a, b, r)`.
pub fn check_semicommutative(ring: &Arc<FiniteRing>) -> Verdict {
    let z = ring.zero();
    // aRb is spanned by a g b over additive generators g
    let gens = additive_generators(ring);
    let found = ring
        .elements()
        .flat_map(|a| ring.elements().map(move |b| (a, b)))
        .find(|&(a, b)| {
            ring.mul(a, b) == z && gens.iter().any(|&g| ring.mul(ring.mul(a, g), b) != z)
        })
        .map(|(a, b)| {
            let r = ring
                .elements()
                .find(|&r| ring.mul(ring.mul(a, r), b) != z)
                .unwrap();
            (vec![a, b, r], "ab = 0 but arb != 0")
        });
    ring_verdict(Property::Semicommutative, ring, found)
}

/// Caches the skew context (and with it the prime radical) for repeated checks.
pub struct Checker {
    skew: Arc<SkewRing>,
}

impl Checker {
    pub fn new(alpha: &Endo) -> Checker {
        Checker {
            skew: SkewRing::new(alpha),
        }
    }

    pub fn from_skew(skew: &Arc<SkewRing>) -> Checker {
        Checker { skew: skew.clone() }
    }

    pub fn skew(&self) -> &Arc<SkewRing> {
        &self.skew
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.skew.ring()
    }

    pub fn alpha(&self) -> &Endo {
        self.skew.alpha()
    }

    pub fn radical(&self) -> Result<&IdealSet> {
        self.skew.radical()
    }

    /// Any catalog property. Ring-only properties ignore `alpha` and the options.
    pub fn check(&self, property: Property, opts: &CheckOptions) -> Result<Verdict> {
        let ring = self.ring();
        let alpha = self.alpha();
        Ok(match property {
            Property::Reduced => check_reduced(ring),
            Property::Reversible => check_reversible(ring),
            Property::Semicommutative => check_semicommutative(ring),
            Property::Compatible => is_compatible(alpha),
            Property::HalfCompatible => is_half_compatible(alpha),
            Property::Rigid => is_rigid(alpha),
            Property::StarRigid => is_alpha_star_rigid(alpha, self.radical()?),
            Property::ZeroProduct { twist, target } => self.zero_product(twist, target, opts)?,
        })
    }

    fn accept_mask(&self, target: Target) -> Result<FixedBitSet> {
        Ok(match target {
            Target::Zero => zero_mask(self.ring()),
            Target::Radical => self.radical()?.members().clone(),
        })
    }

    fn verdict(
        &self,
        twist: Twist,
        target: Target,
        opts: &CheckOptions,
        mode: ScanMode,
        outcome: Outcome,
        note: Option<String>,
    ) -> Verdict {
        Verdict {
            property: Property::ZeroProduct { twist, target },
            subject: Subject {
                ring: self.ring().clone(),
                endo: Some(self.alpha().clone()),
            },
            params: Params {
                degree: Some(opts.degree),
                cap: opts.cap,
                mode,
            },
            outcome,
            note,
        }
    }

    /// Zero products of coefficient tuples of length `degree + 1` in
    /// `R[x; alpha]` must have every (twisted) coefficient product on target.
    pub fn zero_product(
        &self,
        twist: Twist,
        target: Target,
        opts: &CheckOptions,
    ) -> Result<Verdict> {
        let ring = self.ring();
        let d = opts.degree;
        let accept = self.accept_mask(target)?;
        let ctx = Ctx::new(ring, self.skew.powers(), d);
        let fails = |h: Hit| Outcome::Fails(polynomial_witness(h));
        let exhaustive = |note: &mut Option<String>| -> Option<Verdict> {
            match exhaustive_scan(&ctx, twist, &accept, opts.cap) {
                ScanResult::Found(h) => {
                    Some(self.verdict(twist, target, opts, ScanMode::Exhaustive, fails(h), None))
                }
                ScanResult::Clean => Some(self.verdict(
                    twist,
                    target,
                    opts,
                    ScanMode::Exhaustive,
                    Outcome::Holds,
                    None,
                )),
                ScanResult::Exceeded => {
                    *note = Some(format!("exhaustive scan exceeded {} products", opts.cap));
                    None
                }
            }
        };
        let mut note = None;
        match opts.mode {
            ModeRequest::Exhaustive => {
                if let Some(v) = exhaustive(&mut note) {
                    return Ok(v);
                }
                let reason = note.unwrap_or_default();
                Ok(self.verdict(
                    twist,
                    target,
                    opts,
                    ScanMode::Exhaustive,
                    Outcome::Unknown(reason),
                    None,
                ))
            }
            ModeRequest::Randomized => {
                Ok(self.randomized(&ctx, twist, target, &accept, opts, None))
            }
            ModeRequest::Auto => {
                let tuples = (ring.size() as f64).powi(d as i32 + 1);
                if tuples <= opts.cap as f64 {
                    if let Some(v) = exhaustive(&mut note) {
                        return Ok(v);
                    }
                } else {
                    note = Some(format!(
                        "{} first factors exceed the budget of {} products",
                        tuples, opts.cap
                    ));
                }
                if target == Target::Radical {
                    match self.radical_quotient(&ctx, twist, opts)? {
                        Ok(v) => return Ok(v),
                        Err(why) => note = Some(format!("{}; {why}", note.unwrap_or_default())),
                    }
                }
                Ok(self.randomized(&ctx, twist, target, &accept, opts, note))
            }
        }
    }

    fn randomized(
        &self,
        ctx: &Ctx,
        twist: Twist,
        target: Target,
        accept: &FixedBitSet,
        opts: &CheckOptions,
        note: Option<String>,
    ) -> Verdict {
        let mode = ScanMode::Randomized {
            seed: opts.seed,
            samples: opts.samples,
        };
        let out = random_scan(ctx, twist, accept, opts.seed, opts.samples, opts.cap);
        let outcome =
            match out.hit {
                Some(h) => Outcome::Fails(polynomial_witness(h)),
                None => {
                    Outcome::Unknown(format!(
                "no violation among {} sampled first factors ({} nontrivial zero products){}",
                out.samples,
                out.annihilating,
                if out.exceeded { ", budget exhausted" } else { "" }
            ))
                }
            };
        self.verdict(twist, target, opts, mode, outcome, note)
    }

    /// Decides the radical-target property through `R / N*`.
    ///
    /// If `alpha` preserves `N*`, a zero product over `R` maps to one over the
    /// quotient, so a clean quotient scan (target zero) certifies `R`. A
    /// quotient failure is turned into a witness over `R` by searching lifts.
    /// Returns the reason as `Err` when the route is inconclusive.
    fn radical_quotient(
        &self,
        ctx: &Ctx,
        twist: Twist,
        opts: &CheckOptions,
    ) -> Result<std::result::Result<Verdict, String>> {
        let radical = self.radical()?;
        let d = opts.degree;
        if radical.is_zero() {
            return Ok(Err("prime radical is zero".into()));
        }
        if !is_alpha_ideal(radical, self.alpha()) {
            return Ok(Err("prime radical is not an alpha-ideal".into()));
        }
        let (quotient, qalpha) = lift_endo_quotient(self.alpha(), radical)?;
        let qtuples = (quotient.size() as f64).powi(d as i32 + 1);
        if qtuples > opts.cap as f64 {
            return Ok(Err(format!(
                "quotient of size {} is too large",
                quotient.size()
            )));
        }
        let qpowers = qalpha.powers();
        let qctx = Ctx::new(&quotient, &qpowers, d);
        let qaccept = zero_mask(&quotient);
        match exhaustive_scan(&qctx, twist, &qaccept, opts.cap) {
            ScanResult::Clean => {
                let note = format!(
                    "every zero product maps to one over R/N* ({} elements), where the scan is clean",
                    quotient.size()
                );
                Ok(Ok(self.verdict(
                    twist,
                    Target::Radical,
                    opts,
                    ScanMode::RadicalQuotient,
                    Outcome::Holds,
                    Some(note),
                )))
            }
            ScanResult::Exceeded => Ok(Err("quotient scan exceeded the budget".into())),
            ScanResult::Found(_) => {
                let reps = match quotient.shape() {
                    Shape::Quotient {
                        representatives, ..
                    } => representatives.clone(),
                    _ => unreachable!("quotient shape"),
                };
                let ideal: Vec<Elem> = radical.elements().collect();
                let accept = radical.members().clone();
                let mut stream = PairStream::new(Ctx::new(&quotient, &qpowers, d), opts.cap, true);
                let mut spent = 0u64;
                let mut attempts = 0usize;
                while let Some((fbar, gbar)) = stream.next_pair() {
                    if qctx.first_violation(twist, &qaccept, fbar, gbar).is_none() {
                        continue;
                    }
                    attempts += 1;
                    let (lift, work) = lift_pair(
                        ctx,
                        fbar,
                        gbar,
                        &reps,
                        &ideal,
                        opts.cap.saturating_sub(spent),
                    );
                    spent += work;
                    if let Some((f, g)) = lift {
                        let (i, j, product) =
                            ctx.first_violation(twist, &accept, &f, &g).ok_or_else(|| {
                                Error::Internal("lifted pair does not violate".into())
                            })?;
                        let hit = Hit {
                            f,
                            g,
                            i,
                            j,
                            product,
                        };
                        let note = format!(
                            "lifted from a failure over R/N* ({} elements)",
                            quotient.size()
                        );
                        return Ok(Ok(self.verdict(
                            twist,
                            Target::Radical,
                            opts,
                            ScanMode::RadicalQuotient,
                            Outcome::Fails(polynomial_witness(hit)),
                            Some(note),
                        )));
                    }
                    if attempts >= MAX_LIFT_ATTEMPTS || spent > opts.cap {
                        break;
                    }
                }
                Ok(Err(
                    "quotient fails but no lift was found within budget".into()
                ))
            }
        }
    }
}

fn zero_mask(ring: &FiniteRing) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(ring.size());
    m.insert(ring.zero() as usize);
    m
}

fn polynomial_witness(h: Hit) -> Witness {
    Witness::Polynomials {
        f: h.f,
        g: h.g,
        i: h.i,
        j: h.j,
        product: h.product,
    }
}

/// One-shot form of [`Checker::zero_product`].
pub fn check_zero_product_property(
    alpha: &Endo,
    twist: Twist,
    target: Target,
    opts: &CheckOptions,
) -> Result<Verdict> {
    Checker::new(alpha).zero_product(twist, target, opts)
}

/// One-shot form of [`Checker::check`].
pub fn check_property(alpha: &Endo, property: Property, opts: &CheckOptions) -> Result<Verdict> {
    Checker::new(alpha).check(property, opts)
}

/// Result of testing one specific pair of coefficient tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairCheck {
    NotAnnihilating,
    Satisfied,
    Violated(Witness),
}

/// Tests a given pair against a zero-product property.
pub fn check_pair(
    alpha: &Endo,
    twist: Twist,
    target: Target,
    f: &[Elem],
    g: &[Elem],
) -> Result<PairCheck> {
    let ring = alpha.ring();
    if f.is_empty() || g.is_empty() || f.iter().chain(g).any(|&e| e as usize >= ring.size()) {
        return Err(Error::MalformedWitness("coefficients out of range".into()));
    }
    let skew = SkewRing::new(alpha);
    if skew.product_coeffs(f, g).iter().any(|&c| c != ring.zero()) {
        return Ok(PairCheck::NotAnnihilating);
    }
    let accept = match target {
        Target::Zero => zero_mask(ring),
        Target::Radical => skew.radical()?.members().clone(),
    };
    let d = f.len().max(g.len()) - 1;
    let ctx = Ctx::new(ring, skew.powers(), d);
    Ok(match ctx.first_violation(twist, &accept, f, g) {
        None => PairCheck::Satisfied,
        Some((i, j, product)) => PairCheck::Violated(Witness::Polynomials {
            f: f.to_vec(),
            g: g.to_vec(),
            i,
            j,
            product,
        }),
    })
}

/// Recomputes a failure certificate from scratch. `Ok(false)` means the
/// certificate is well formed but does not demonstrate a violation.
pub fn verify_witness(v: &Verdict) -> Result<bool> {
    let witness = v
        .witness()
        .ok_or_else(|| Error::MalformedWitness("verdict does not fail".into()))?;
    let ring = &v.subject.ring;
    let n = ring.size();
    let z = ring.zero();
    let alpha = match &v.subject.endo {
        Some(a) => {
            if !a.ring().same_tables(ring) {
                return Err(Error::MalformedWitness(
                    "endomorphism belongs to another ring".into(),
                ));
            }
            a.clone()
        }
        None => Endo::identity(ring),
    };
    let in_range = |xs: &[Elem]| xs.iter().all(|&x| (x as usize) < n);
    match (v.property, witness) {
        (
            Property::ZeroProduct { twist, target },
            Witness::Polynomials {
                f,
                g,
                i,
                j,
                product,
            },
        ) => {
            if f.is_empty()
                || g.is_empty()
                || !in_range(f)
                || !in_range(g)
                || *i >= f.len()
                || *j >= g.len()
            {
                return Err(Error::MalformedWitness(
                    "polynomial witness out of range".into(),
                ));
            }
            // plain convolution with explicit powers of alpha
            let mut coeffs = vec![z; f.len() + g.len() - 1];
            for (a_idx, &a) in f.iter().enumerate() {
                for (b_idx, &b) in g.iter().enumerate() {
                    let mut tb = b;
                    for _ in 0..a_idx {
                        tb = alpha.apply(tb);
                    }
                    coeffs[a_idx + b_idx] = ring.add(coeffs[a_idx + b_idx], ring.mul(a, tb));
                }
            }
            if coeffs.iter().any(|&c| c != z) {
                return Ok(false);
            }
            let mut b = g[*j];
            if twist == Twist::Skew {
                for _ in 0..*i {
                    b = alpha.apply(b);
                }
            }
            let p = ring.mul(f[*i], b);
            if p != *product {
                return Ok(false);
            }
            Ok(match target {
                Target::Zero => p != z,
                Target::Radical => !prime_radical(ring)?.contains(p),
            })
        }
        (property, Witness::Elements { elems, .. }) => {
            let want = match property {
                Property::Reduced | Property::Rigid | Property::StarRigid => 1,
                Property::Semicommutative => 3,
                Property::ZeroProduct { .. } => {
                    return Err(Error::MalformedWitness(
                        "zero-product property needs a polynomial witness".into(),
                    ))
                }
                _ => 2,
            };
            if elems.len() != want || !in_range(elems) {
                return Err(Error::MalformedWitness(format!(
                    "expected {want} elements in range"
                )));
            }
            let m = |a, b| ring.mul(a, b);
            let e = elems;
            Ok(match property {
                Property::Reduced => e[0] != z && ring.is_nilpotent(e[0]),
                Property::Reversible => m(e[0], e[1]) == z && m(e[1], e[0]) != z,
                Property::Semicommutative => m(e[0], e[1]) == z && m(m(e[0], e[2]), e[1]) != z,
                Property::Compatible => (m(e[0], e[1]) == z) != (m(e[0], alpha.apply(e[1])) == z),
                Property::HalfCompatible => m(e[0], e[1]) == z && m(e[0], alpha.apply(e[1])) != z,
                Property::Rigid => e[0] != z && m(e[0], alpha.apply(e[0])) == z,
                Property::StarRigid => {
                    let rad = prime_radical(ring)?;
                    !rad.contains(e[0]) && rad.contains(m(e[0], alpha.apply(e[0])))
                }
                Property::ZeroProduct { .. } => unreachable!(),
            })
        }
        (_, Witness::Polynomials { .. }) => Err(Error::MalformedWitness(
            "element property with a polynomial witness".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_full_matrix, build_product, build_upper_triangular, build_zn};

    fn swap_pair() -> Endo {
        let z2 = build_zn(2).unwrap();
        let r = build_product(&z2, &z2).unwrap();
        Endo::new(&r, vec![0, 2, 1, 3], "swap").unwrap()
    }

    #[test]
    fn ring_level_checks() {
        assert!(check_reversible(&build_zn(6).unwrap()).holds());
        let u = build_upper_triangular(&build_zn(2).unwrap(), 2).unwrap();
        let v = check_semicommutative(&u);
        assert_eq!(
            v.witness(),
            Some(&Witness::Elements {
                elems: vec![4, 1, 2],
                detail: "ab = 0 but arb != 0".into()
            })
        );
        let v = check_reduced(&build_zn(4).unwrap());
        assert!(matches!(v.witness(), Some(Witness::Elements { elems, .. }) if elems == &vec![2]));
        assert!(verify_witness(&v).unwrap());
    }

    #[test]
    fn swap_fails_almost_property() {
        let alpha = swap_pair();
        let v = check_zero_product_property(
            &alpha,
            Twist::Plain,
            Target::Radical,
            &CheckOptions::with_degree(1),
        )
        .unwrap();
        assert!(v.fails());
        assert!(verify_witness(&v).unwrap());
        let golden = check_pair(&alpha, Twist::Plain, Target::Radical, &[2, 1], &[1, 1]).unwrap();
        assert!(matches!(
            golden,
            PairCheck::Violated(Witness::Polynomials { product: 1, .. })
        ));
    }

    #[test]
    fn matrix_skew_failure() {
        let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
        let alpha = Endo::identity(&m2);
        let v = check_zero_product_property(
            &alpha,
            Twist::Skew,
            Target::Radical,
            &CheckOptions::with_degree(1),
        )
        .unwrap();
        assert!(v.fails());
        assert!(verify_witness(&v).unwrap());
    }

    #[test]
    fn domains_hold() {
        let z3 = build_zn(3).unwrap();
        let alpha = Endo::identity(&z3);
        for twist in [Twist::Plain, Twist::Skew] {
            for target in [Target::Zero, Target::Radical] {
                let v = check_zero_product_property(
                    &alpha,
                    twist,
                    target,
                    &CheckOptions::with_degree(3),
                )
                .unwrap();
                assert!(v.holds());
            }
        }
        let z4 = build_zn(4).unwrap();
        let v = check_zero_product_property(
            &Endo::identity(&z4),
            Twist::Plain,
            Target::Radical,
            &CheckOptions::with_degree(3),
        )
        .unwrap();
        assert!(v.holds());
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let alpha = swap_pair();
        let mut v = check_zero_product_property(
            &alpha,
            Twist::Plain,
            Target::Radical,
            &CheckOptions::with_degree(1),
        )
        .unwrap();
        let original = v.outcome.clone();
        if let Outcome::Fails(Witness::Polynomials { f, .. }) = &mut v.outcome {
            f[0] = 3;
            f[1] = 3;
        }
        assert!(!verify_witness(&v).unwrap());
        v.outcome = original;
        if let Outcome::Fails(Witness::Polynomials { product, .. }) = &mut v.outcome {
            *product = 0;
        }
        assert!(!verify_witness(&v).unwrap());
    }

    #[test]
    fn randomized_never_holds() {
        let z3 = build_zn(3).unwrap();
        let opts = CheckOptions {
            degree: 1,
            mode: ModeRequest::Randomized,
            samples: 200,
            ..CheckOptions::default()
        };
        let v =
            check_zero_product_property(&Endo::identity(&z3), Twist::Plain, Target::Zero, &opts)
                .unwrap();
        assert!(v.is_unknown());
        let v = check_zero_product_property(&swap_pair(), Twist::Plain, Target::Radical, &opts)
            .unwrap();
        assert!(v.fails());
        assert!(verify_witness(&v).unwrap());
    }
}
