//! The individual conformance checks.

use std::collections::HashSet;
use std::sync::Arc;

use crate::endo::{lift_endo_matrix, lift_endo_quotient, restrict_to_corner, Endo};
use crate::error::{Error, Result};
use crate::nested::{
    check_nested, choose_bounds, verify_nested, Inner, NestedOutcome, NestedReport, NestedSpec,
    Outer,
};
use crate::properties::{check_property, CheckOptions};
use crate::radical::{enumerate_ideals, IdealSet, IDEAL_ENUMERATION_CAP};
use crate::ring::{
    build_corner, build_trivial_extension, build_truncated_poly, build_upper_triangular,
    idempotents, Elem, FiniteRing,
};
use crate::skewpoly::SkewRing;
use crate::verdict::{Property, Twist, Verdict};

use super::repro::repro_example;
use super::{EntryRecord, Facts, RecordBuilder};

/// Largest derived ring a transfer check builds.
const DERIVED_SIZE_CAP: u128 = 4096;
/// Largest ring whose ideal lattice is enumerated.
const QUOTIENT_SIZE_CAP: usize = 64;
/// Powers of alpha exercised by the elementwise lemmas.
const MAX_POWER: usize = 3;

pub(crate) struct Ctx {
    pub degree: usize,
    pub cap: u64,
    pub surrogate: bool,
}

/// Checks that look at the corpus as a whole rather than entry by entry.
pub(crate) fn global(id: &str, ctx: &Ctx, facts: &[Facts]) -> Option<Result<Vec<EntryRecord>>> {
    match id {
        "swap-product-counterexample" => Some(example(ctx, "swap-product")),
        "matrix-skew-counterexample" => Some(example(ctx, "matrix-skew")),
        "almost-not-rigid-search" => Some(almost_not_rigid(ctx, facts)),
        "property-chain" => Some(property_chain(ctx, facts)),
        _ => None,
    }
}

pub(crate) fn per_entry(id: &str, ctx: &Ctx, f: &Facts) -> Result<Option<EntryRecord>> {
    let d = ctx.degree;
    let mut b = RecordBuilder::new(f.label(), ctx.surrogate);
    match id {
        "un-transfer" => transfer(
            &mut b,
            ctx,
            f,
            Property::ALPHA_ALMOST,
            upper_triangular_targets(f.ring()),
        )?,
        "un-transfer-identity" => {
            b.hyp("alpha = id", Some(f.alpha().is_identity()), None);
            if b.ok() {
                transfer(
                    &mut b,
                    ctx,
                    f,
                    Property::ALPHA_ALMOST,
                    upper_triangular_targets(f.ring()),
                )?;
            }
        }
        "truncated-transfer" => {
            let targets = [2u32, 3]
                .into_iter()
                .map(|n| {
                    Target::new(
                        format!("R[x]/(x^{n})"),
                        (f.ring().size() as u128).pow(n),
                        move |r| build_truncated_poly(r, n as usize),
                    )
                })
                .collect();
            transfer(&mut b, ctx, f, Property::ALPHA_ALMOST, targets)?
        }
        "trivial-extension-transfer" => {
            let targets = vec![Target::new(
                "T(R, R)".into(),
                (f.ring().size() as u128).pow(2),
                build_trivial_extension,
            )];
            transfer(&mut b, ctx, f, Property::ALPHA_ALMOST, targets)?
        }
        "compatible-zero-powers" => compatible_zero_powers(&mut b, f)?,
        "compatible-radical-powers" => {
            b.hyp_verdict("alpha-compatible", &f.verdict(Property::Compatible, 0)?);
            if b.ok() {
                radical_powers(&mut b, f)?;
            }
        }
        "semicommutative-compatible-radical" => semicommutative_compatible_radical(&mut b, f)?,
        "armendariz-implies-almost" => {
            b.hyp_verdict(
                "alpha-armendariz",
                &f.verdict(Property::ALPHA_ARMENDARIZ, d)?,
            );
            if b.ok() {
                b.concl_verdict(
                    "alpha-almost-armendariz",
                    &f.verdict(Property::ALPHA_ALMOST, d)?,
                );
            }
        }
        "semicommutative-compatible-star" => {
            semicommutative_compatible(&mut b, f)?;
            if b.ok() {
                b.concl_verdict("alpha-star-rigid", &f.verdict(Property::StarRigid, 0)?);
            }
        }
        "skew-radical-inclusion" | "star-ring-product-membership" => product_membership(&mut b, f)?,
        "almost-annihilator-shift" => annihilator_shift(&mut b, f, d, false)?,
        "almost-annihilator-shift-stated" => annihilator_shift(&mut b, f, d, true)?,
        "skew-ring-almost-descent" => descent(&mut b, ctx, f)?,
        "semicommutative-compatible-almost" => {
            semicommutative_compatible(&mut b, f)?;
            if b.ok() {
                b.concl_verdict(
                    "alpha-almost-armendariz",
                    &f.verdict(Property::ALPHA_ALMOST, d)?,
                );
            }
        }
        "polynomial-extension-almost" => {
            extension_equivalence(&mut b, ctx, f, Property::ALPHA_ALMOST, Twist::Plain)?
        }
        "idempotent-split-almost" => idempotent_split(&mut b, f, d, Property::ALPHA_ALMOST)?,
        "square-zero-products" => square_zero(&mut b, f, d)?,
        "un-transfer-skew" => transfer(
            &mut b,
            ctx,
            f,
            Property::ALPHA_SKEW_ALMOST,
            upper_triangular_targets(f.ring()),
        )?,
        "skew-armendariz-un-skew-almost" => {
            b.hyp_verdict(
                "alpha-skew-armendariz",
                &f.verdict(Property::ALPHA_SKEW_ARMENDARIZ, d)?,
            );
            if b.ok() {
                for t in upper_triangular_targets(f.ring()) {
                    if t.size > DERIVED_SIZE_CAP {
                        continue;
                    }
                    let v = t.verdict(f, ctx, Property::ALPHA_SKEW_ALMOST, d)?;
                    b.concl_verdict(&format!("{} alpha-skew-almost-armendariz", t.name), &v);
                }
            }
        }
        "quotient-lift-skew" => quotient_lift(&mut b, ctx, f)?,
        "idempotent-split-skew" => idempotent_split(&mut b, f, d, Property::ALPHA_SKEW_ALMOST)?,
        "reversible-radical-powers" => {
            reversible_half_compatible(&mut b, f)?;
            if b.ok() {
                let rad = f.radical()?;
                let powers = f.alpha().powers();
                let r = f.ring();
                let bad = pairs(r).find(|&(a, x)| {
                    rad.contains(r.mul(a, x))
                        && (1..=MAX_POWER).any(|t| !rad.contains(r.mul(a, powers.apply(t, x))))
                });
                b.concl(
                    "ab in N* gives a alpha^t(b) in N* (t <= 3)",
                    Some(bad.is_none()),
                    counterexample(r, bad),
                );
            }
        }
        "reversible-skew-almost" => {
            reversible_half_compatible(&mut b, f)?;
            if b.ok() {
                b.concl_verdict(
                    "alpha-skew-almost-armendariz",
                    &f.verdict(Property::ALPHA_SKEW_ALMOST, d)?,
                );
            }
        }
        "star-ring-radical-powers" => {
            star_ring(&mut b, f)?;
            if b.ok() {
                radical_powers(&mut b, f)?;
            }
        }
        "star-ring-skew-almost" => {
            star_ring(&mut b, f)?;
            if b.ok() {
                b.concl_verdict(
                    "alpha-skew-almost-armendariz",
                    &f.verdict(Property::ALPHA_SKEW_ALMOST, d)?,
                );
            }
        }
        "polynomial-extension-skew-almost" => {
            reversible_half_compatible(&mut b, f)?;
            finite_order(&mut b, f);
            if b.ok() {
                let spec = NestedSpec {
                    inner: Inner::Polynomial,
                    outer: Outer::Twisted,
                    twist: Twist::Skew,
                };
                nested_conclusion(&mut b, ctx, f, spec)?;
            }
        }
        "skew-ring-almost-ascent" => {
            reversible_half_compatible(&mut b, f)?;
            finite_order(&mut b, f);
            if b.ok() {
                let spec = NestedSpec {
                    inner: Inner::Skew,
                    outer: Outer::Central,
                    twist: Twist::Plain,
                };
                nested_conclusion(&mut b, ctx, f, spec)?;
            }
        }
        "polynomial-extension-skew-equivalence" => {
            extension_equivalence(&mut b, ctx, f, Property::ALPHA_SKEW_ALMOST, Twist::Skew)?
        }
        other => return Err(Error::UnknownId(other.to_string())),
    }
    Ok(Some(b.finish()))
}

fn opts(ctx: &Ctx, degree: usize) -> CheckOptions {
    CheckOptions {
        degree,
        cap: ctx.cap,
        ..CheckOptions::default()
    }
}

fn pairs(r: &FiniteRing) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    r.elements()
        .flat_map(move |a| r.elements().map(move |b| (a, b)))
}

fn counterexample(r: &FiniteRing, found: Option<(Elem, Elem)>) -> Option<String> {
    found.map(|(a, b)| format!("a = {}, b = {}", r.format_elem(a), r.format_elem(b)))
}

fn semicommutative_compatible(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    b.hyp_verdict("semicommutative", &f.verdict(Property::Semicommutative, 0)?);
    b.hyp_verdict("alpha-compatible", &f.verdict(Property::Compatible, 0)?);
    Ok(())
}

fn reversible_half_compatible(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    b.hyp_verdict("reversible", &f.verdict(Property::Reversible, 0)?);
    b.hyp_verdict(
        "ab = 0 gives a alpha(b) = 0",
        &f.verdict(Property::HalfCompatible, 0)?,
    );
    Ok(())
}

fn star_ring(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    b.hyp_verdict("alpha(*)", &f.verdict(Property::StarRigid, 0)?);
    b.hyp(
        "N* is an alpha-ideal",
        Some(f.radical_is_alpha_ideal()?),
        None,
    );
    Ok(())
}

fn finite_order(b: &mut RecordBuilder, f: &Facts) {
    let order = f.order();
    b.hyp(
        "alpha^k = id for some k",
        Some(order.is_some()),
        order.map(|k| format!("k = {k}")),
    );
}

/// A ring built over `R` whose endomorphism is lifted entrywise.
struct Target {
    name: String,
    size: u128,
    build: Box<dyn Fn(&Arc<FiniteRing>) -> Result<Arc<FiniteRing>> + Send + Sync>,
}

impl Target {
    fn new(
        name: String,
        size: u128,
        build: impl Fn(&Arc<FiniteRing>) -> Result<Arc<FiniteRing>> + Send + Sync + 'static,
    ) -> Target {
        Target {
            name,
            size,
            build: Box::new(build),
        }
    }

    fn build(&self, alpha: &Endo) -> Result<(Arc<FiniteRing>, Endo)> {
        let ring = (self.build)(alpha.ring())?;
        let lifted = lift_endo_matrix(alpha, &ring)?;
        Ok((ring, lifted))
    }

    fn verdict(&self, f: &Facts, ctx: &Ctx, property: Property, degree: usize) -> Result<Verdict> {
        f.derived_verdict(&self.name, property, degree, || {
            let (_, lifted) = self.build(f.alpha())?;
            check_property(&lifted, property, &opts(ctx, degree))
        })
    }
}

fn upper_triangular_targets(r: &FiniteRing) -> Vec<Target> {
    [2usize, 3]
        .into_iter()
        .map(|n| {
            let slots = (n * (n + 1) / 2) as u32;
            Target::new(
                format!("U{n}(R)"),
                (r.size() as u128).pow(slots),
                move |base| build_upper_triangular(base, n),
            )
        })
        .collect()
}

/// `verdict(R) = verdict(S)` for every derived ring `S` within the size cap.
fn transfer(
    b: &mut RecordBuilder,
    ctx: &Ctx,
    f: &Facts,
    property: Property,
    targets: Vec<Target>,
) -> Result<()> {
    let within: Vec<&Target> = targets
        .iter()
        .filter(|t| t.size <= DERIVED_SIZE_CAP)
        .collect();
    let names: Vec<&str> = within.iter().map(|t| t.name.as_str()).collect();
    b.hyp(
        "derived ring within 4096 elements",
        Some(!within.is_empty()),
        Some(if names.is_empty() {
            "none".into()
        } else {
            names.join(", ")
        }),
    );
    if !b.ok() {
        return Ok(());
    }
    let base = f.verdict(property, ctx.degree)?;
    b.keep(&base);
    for t in within {
        let v = t.verdict(f, ctx, property, ctx.degree)?;
        let agree = match (base.as_bool(), v.as_bool()) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        };
        b.concl(
            &format!("verdict(R) = verdict({})", t.name),
            agree,
            Some(format!(
                "R: {}; {}: {}",
                base.outcome_label(),
                t.name,
                v.outcome_label()
            )),
        );
        b.keep(&v);
    }
    Ok(())
}

fn compatible_zero_powers(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    b.hyp_verdict("alpha-compatible", &f.verdict(Property::Compatible, 0)?);
    if !b.ok() {
        return Ok(());
    }
    let r = f.ring();
    let z = r.zero();
    let p = f.alpha().powers();
    let bad = pairs(r).find(|&(a, x)| {
        r.mul(a, x) == z
            && (1..=MAX_POWER).any(|m| r.mul(a, p.apply(m, x)) != z || r.mul(p.apply(m, a), x) != z)
    });
    b.concl(
        "ab = 0 gives a alpha^m(b) = alpha^m(a) b = 0 (m <= 3)",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    let bad = pairs(r)
        .find(|&(a, x)| r.mul(a, x) != z && (1..=MAX_POWER).any(|m| r.mul(p.apply(m, a), x) == z));
    b.concl(
        "alpha^m(a) b = 0 gives ab = 0 (m <= 3)",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    Ok(())
}

/// Both clauses of the radical-power lemmas, for `k <= 3`.
fn radical_powers(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    let r = f.ring();
    let rad = f.radical()?;
    let p = f.alpha().powers();
    let shifted = |a: Elem, x: Elem, k: usize| {
        rad.contains(r.mul(a, p.apply(k, x))) && rad.contains(r.mul(p.apply(k, a), x))
    };
    let bad = pairs(r)
        .find(|&(a, x)| rad.contains(r.mul(a, x)) && (1..=MAX_POWER).any(|k| !shifted(a, x, k)));
    b.concl(
        "ab in N* gives a alpha^k(b), alpha^k(a) b in N* (k <= 3)",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    let bad = pairs(r).find(|&(a, x)| {
        !rad.contains(r.mul(a, x))
            && (1..=MAX_POWER).any(|k| {
                rad.contains(r.mul(a, p.apply(k, x))) || rad.contains(r.mul(p.apply(k, a), x))
            })
    });
    b.concl(
        "a alpha^k(b) or alpha^k(a) b in N* gives ab in N* (k <= 3)",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    Ok(())
}

fn semicommutative_compatible_radical(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    semicommutative_compatible(b, f)?;
    if !b.ok() {
        return Ok(());
    }
    let r = f.ring();
    let rad = f.radical()?;
    let alpha = f.alpha();
    let bad = pairs(r)
        .find(|&(a, x)| rad.contains(r.mul(a, x)) != rad.contains(r.mul(a, alpha.apply(x))));
    b.concl(
        "ab in N* iff a alpha(b) in N*",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    let bad = r
        .elements()
        .find(|&a| rad.contains(r.mul(a, alpha.apply(a))) && !rad.contains(a));
    b.concl(
        "a alpha(a) in N* gives a in N*",
        Some(bad.is_none()),
        bad.map(|a| format!("a = {}", r.format_elem(a))),
    );
    Ok(())
}

/// Exhaustive comparison of coefficientwise membership of `pq` with
/// membership of every `a_i b_j`, over tuples whose length shrinks with `|R|`.
fn product_membership(b: &mut RecordBuilder, f: &Facts) -> Result<()> {
    star_ring(b, f)?;
    let n = f.ring().size();
    let degree = match n {
        0..=8 => Some(2),
        9..=16 => Some(1),
        _ => None,
    };
    b.hyp(
        "|R| <= 16",
        Some(degree.is_some()),
        degree.map(|d| format!("tuples of degree <= {d}")),
    );
    if !b.ok() {
        return Ok(());
    }
    let d = degree.unwrap();
    let r = f.ring();
    let rad = f.radical()?;
    let skew = SkewRing::new(f.alpha());
    let len = d + 1;
    let total = n.pow(len as u32);
    let tuple = |mut code: usize| {
        let mut t = vec![0 as Elem; len];
        for k in (0..len).rev() {
            t[k] = (code % n) as Elem;
            code /= n;
        }
        t
    };
    let tuples: Vec<Vec<Elem>> = (0..total).map(tuple).collect();
    let mut checked = 0u64;
    let mut bad = None;
    'scan: for p in &tuples {
        for q in &tuples {
            checked += 1;
            let lhs = skew.product_coeffs(p, q).iter().all(|&c| rad.contains(c));
            let rhs = p
                .iter()
                .all(|&a| q.iter().all(|&x| rad.contains(r.mul(a, x))));
            if lhs != rhs {
                bad = Some((p.clone(), q.clone()));
                break 'scan;
            }
        }
    }
    b.concl(
        &format!("pq in N*(R)[x; alpha] iff all a_i b_j in N* ({checked} pairs, degree <= {d})"),
        Some(bad.is_none()),
        bad.map(|(p, q)| format!("p = {p:?}, q = {q:?}")),
    );
    Ok(())
}

fn annihilator_shift(b: &mut RecordBuilder, f: &Facts, d: usize, stated: bool) -> Result<()> {
    b.hyp_verdict(
        "alpha-almost-armendariz",
        &f.verdict(Property::ALPHA_ALMOST, d)?,
    );
    if !b.ok() {
        return Ok(());
    }
    let r = f.ring();
    let z = r.zero();
    let rad = f.radical()?;
    let alpha = f.alpha();
    if stated {
        let bad =
            pairs(r).find(|&(a, x)| r.mul(a, x) == z && !rad.contains(r.mul(a, alpha.apply(x))));
        b.concl(
            "ab = 0 gives a alpha(b) in N*",
            Some(bad.is_none()),
            counterexample(r, bad),
        );
        return Ok(());
    }
    let bad = pairs(r).find(|&(a, x)| r.mul(a, x) == z && !rad.contains(r.mul(alpha.apply(a), x)));
    b.concl(
        "ab = 0 gives alpha(a) b in N*",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    let p = alpha.powers();
    let bad = pairs(r).find(|&(a, x)| {
        !rad.contains(r.mul(a, x)) && (1..=MAX_POWER).any(|m| r.mul(a, p.apply(m, x)) == z)
    });
    b.concl(
        "a alpha^m(b) = 0 gives ab in N* (m <= 3)",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    Ok(())
}

fn square_zero(b: &mut RecordBuilder, f: &Facts, d: usize) -> Result<()> {
    b.hyp_verdict("alpha-compatible", &f.verdict(Property::Compatible, 0)?);
    if b.ok() {
        b.hyp_verdict(
            "alpha-almost-armendariz",
            &f.verdict(Property::ALPHA_ALMOST, d)?,
        );
    }
    if !b.ok() {
        return Ok(());
    }
    let r = f.ring();
    let z = r.zero();
    let rad = f.radical()?;
    let squares: Vec<Elem> = r.elements().filter(|&a| r.mul(a, a) == z).collect();
    let square_pairs = || {
        squares
            .iter()
            .flat_map(|&a| squares.iter().map(move |&x| (a, x)))
    };
    let bad = square_pairs().find(|&(a, x)| !rad.contains(r.mul(r.mul(a, x), a)));
    b.concl("aba in N*", Some(bad.is_none()), counterexample(r, bad));
    let bad =
        square_pairs().find(|&(a, x)| !r.is_nilpotent(r.mul(a, x)) || !r.is_nilpotent(r.add(a, x)));
    b.concl(
        "ab and a + b nilpotent",
        Some(bad.is_none()),
        counterexample(r, bad),
    );
    Ok(())
}

fn idempotent_split(b: &mut RecordBuilder, f: &Facts, d: usize, property: Property) -> Result<()> {
    let r = f.ring();
    let alpha = f.alpha();
    b.hyp("abelian", Some(f.abelian()), None);
    let nontrivial: Vec<Elem> = idempotents(r)
        .into_iter()
        .filter(|&e| e != r.zero() && e != r.one())
        .collect();
    let skew = property == Property::ALPHA_SKEW_ALMOST;
    if skew {
        let moved = nontrivial.iter().find(|&&e| alpha.apply(e) != e);
        b.hyp(
            "alpha fixes every idempotent",
            Some(moved.is_none()),
            moved.map(|&e| format!("alpha moves {}", r.format_elem(e))),
        );
    }
    let fixed: Vec<Elem> = nontrivial
        .iter()
        .copied()
        .filter(|&e| alpha.apply(e) == e)
        .collect();
    b.hyp(
        "nontrivial idempotent fixed by alpha",
        Some(!fixed.is_empty()),
        None,
    );
    if !b.ok() {
        return Ok(());
    }
    let whole = f.verdict(property, d)?;
    b.keep(&whole);
    for e in fixed {
        let mut parts = Vec::new();
        for idem in [e, r.sub(r.one(), e)] {
            let corner = build_corner(r, idem)?;
            let restricted = restrict_to_corner(alpha, &corner)?;
            parts.push(check_property(
                &restricted,
                property,
                &CheckOptions::with_degree(d),
            )?);
        }
        let split = match (parts[0].as_bool(), parts[1].as_bool()) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        let agree = match (whole.as_bool(), split) {
            (Some(x), Some(y)) => Some(x == y),
            _ => None,
        };
        b.concl(
            &format!(
                "e = {}: verdict(R) = verdict(eR) and verdict((1-e)R)",
                r.format_elem(e)
            ),
            agree,
            Some(format!(
                "R: {}; eR: {}; (1-e)R: {}",
                whole.outcome_label(),
                parts[0].outcome_label(),
                parts[1].outcome_label()
            )),
        );
        for v in &parts {
            b.keep(v);
        }
    }
    Ok(())
}

/// For every nonzero alpha-ideal `I` inside `N*`: `R/I` holds implies `R` holds.
fn quotient_lift(b: &mut RecordBuilder, ctx: &Ctx, f: &Facts) -> Result<()> {
    let r = f.ring();
    b.hyp("|R| <= 64", Some(r.size() <= QUOTIENT_SIZE_CAP), None);
    if !b.ok() {
        return Ok(());
    }
    let rad = f.radical()?;
    let alpha = f.alpha();
    let ideals: Vec<IdealSet> = enumerate_ideals(r, IDEAL_ENUMERATION_CAP)?
        .into_iter()
        .filter(|i| {
            !i.is_zero() && i.is_subset(rad) && i.elements().all(|x| i.contains(alpha.apply(x)))
        })
        .collect();
    b.hyp(
        "nonzero alpha-ideal inside N*",
        Some(!ideals.is_empty()),
        Some(format!("{} ideals", ideals.len())),
    );
    if !b.ok() {
        return Ok(());
    }
    let whole = f.verdict(Property::ALPHA_SKEW_ALMOST, ctx.degree)?;
    b.keep(&whole);
    for ideal in ideals {
        let (_, qalpha) = lift_endo_quotient(alpha, &ideal)?;
        let q = check_property(&qalpha, Property::ALPHA_SKEW_ALMOST, &opts(ctx, ctx.degree))?;
        let value = match (q.as_bool(), whole.as_bool()) {
            (Some(false), _) => Some(true),
            (Some(true), w) => w,
            (None, _) => None,
        };
        b.concl(
            &format!("I = {}: R/I holds gives R holds", ideal.describe()),
            value,
            Some(format!(
                "R/I: {}; R: {}",
                q.outcome_label(),
                whole.outcome_label()
            )),
        );
        b.keep(&q);
    }
    Ok(())
}

fn nested(ctx: &Ctx, f: &Facts, spec: NestedSpec) -> Result<NestedReport> {
    check_nested(f.alpha(), spec, choose_bounds(f.ring().size()), ctx.cap)
}

/// A nested failure must replay before it counts.
fn nested_value(f: &Facts, rep: &NestedReport) -> Result<Option<bool>> {
    Ok(match &rep.outcome {
        NestedOutcome::Holds => Some(true),
        NestedOutcome::Fails(w) => {
            if !verify_nested(f.alpha(), rep.spec, w)? {
                return Err(Error::Internal(format!(
                    "nested witness does not replay: {}",
                    rep.describe()
                )));
            }
            Some(false)
        }
        NestedOutcome::Unknown(_) => None,
    })
}

fn nested_conclusion(b: &mut RecordBuilder, ctx: &Ctx, f: &Facts, spec: NestedSpec) -> Result<()> {
    let rep = nested(ctx, f, spec)?;
    let value = nested_value(f, &rep)?;
    b.concl(
        &format!("bounded {}", spec.describe()),
        value,
        Some(rep.describe()),
    );
    Ok(())
}

/// `R` has the property iff `R[x]` has it, compared at matching bounds: the
/// outer degree of the nested scan is the degree used for `R`.
fn extension_equivalence(
    b: &mut RecordBuilder,
    ctx: &Ctx,
    f: &Facts,
    property: Property,
    twist: Twist,
) -> Result<()> {
    finite_order(b, f);
    if !b.ok() {
        return Ok(());
    }
    let spec = NestedSpec {
        inner: Inner::Polynomial,
        outer: Outer::Twisted,
        twist,
    };
    let rep = nested(ctx, f, spec)?;
    let ext = nested_value(f, &rep)?;
    let base = f.verdict(property, rep.bounds.outer_degree)?;
    b.keep(&base);
    let agree = match (base.as_bool(), ext) {
        (Some(x), Some(y)) => Some(x == y),
        _ => None,
    };
    b.concl(
        &format!("verdict(R) = bounded verdict over {}", spec.describe()),
        agree,
        Some(format!("R: {}; {}", base.outcome_label(), rep.describe())),
    );
    Ok(())
}

/// Hypotheses include a bounded scan of `R[x; alpha][y]`.
fn descent(b: &mut RecordBuilder, ctx: &Ctx, f: &Facts) -> Result<()> {
    semicommutative_compatible(b, f)?;
    if !b.ok() {
        return Ok(());
    }
    let spec = NestedSpec {
        inner: Inner::Skew,
        outer: Outer::Central,
        twist: Twist::Plain,
    };
    let rep = nested(ctx, f, spec)?;
    let value = nested_value(f, &rep)?;
    b.hyp(
        &format!("bounded {}", spec.describe()),
        value,
        Some(rep.describe()),
    );
    if b.ok() {
        b.concl_verdict(
            "alpha-almost-armendariz",
            &f.verdict(Property::ALPHA_ALMOST, ctx.degree)?,
        );
    }
    Ok(())
}

fn example(ctx: &Ctx, id: &str) -> Result<Vec<EntryRecord>> {
    let mut b = RecordBuilder::new(id.to_string(), ctx.surrogate);
    match repro_example(id) {
        Ok(rep) => {
            b = RecordBuilder::new(rep.subject.clone(), ctx.surrogate);
            for v in &rep.verdicts {
                b.concl(
                    "engine finds a replayable failure",
                    Some(v.fails()),
                    v.describe_witness(),
                );
                b.keep(v);
            }
            if let Some(g) = &rep.golden {
                b.concl(
                    "published witness replays",
                    Some(true),
                    g.describe_witness(),
                );
                b.keep(g);
            }
        }
        Err(Error::Reproduction(why)) => b.concl("reproduction", Some(false), Some(why)),
        Err(e) => return Err(e),
    }
    Ok(vec![b.finish()])
}

fn almost_not_rigid(ctx: &Ctx, facts: &[Facts]) -> Result<Vec<EntryRecord>> {
    let mut b = RecordBuilder::new("corpus".into(), ctx.surrogate);
    let mut found = None;
    for f in facts {
        let rigid = f.verdict(Property::Rigid, 0)?;
        if rigid.holds() {
            continue;
        }
        let almost = f.verdict(Property::ALPHA_ALMOST, ctx.degree)?;
        if almost.holds() {
            b.keep(&rigid);
            b.keep(&almost);
            found = Some(f.label());
            break;
        }
    }
    let expected = "(Z4, id)";
    b.concl(
        &format!("first match is {expected}"),
        Some(found.as_deref() == Some(expected)),
        Some(found.unwrap_or_else(|| "none".into())),
    );
    Ok(vec![b.finish()])
}

/// reduced, reversible, semicommutative, almost Armendariz (alpha = id), once per ring.
fn property_chain(ctx: &Ctx, facts: &[Facts]) -> Result<Vec<EntryRecord>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for f in facts {
        let r = f.ring();
        if !seen.insert(r.provenance().to_string()) {
            continue;
        }
        let mut b = RecordBuilder::new(r.provenance().to_string(), ctx.surrogate);
        let reduced = f.verdict(Property::Reduced, 0)?;
        let reversible = f.verdict(Property::Reversible, 0)?;
        let semi = f.verdict(Property::Semicommutative, 0)?;
        let implies = |p: &Verdict, q: Option<bool>| match p.as_bool() {
            Some(false) => Some(true),
            _ => q,
        };
        b.concl(
            "reduced gives reversible",
            implies(&reduced, reversible.as_bool()),
            None,
        );
        b.concl(
            "reversible gives semicommutative",
            implies(&reversible, semi.as_bool()),
            None,
        );
        if semi.holds() {
            let almost = check_property(
                &Endo::identity(r),
                Property::ALPHA_ALMOST,
                &opts(ctx, ctx.degree),
            )?;
            b.concl(
                "semicommutative gives almost-armendariz",
                almost.as_bool(),
                Some(almost.outcome_label()),
            );
            b.keep(&almost);
        } else {
            b.concl(
                "semicommutative gives almost-armendariz",
                Some(true),
                Some("not semicommutative".into()),
            );
        }
        for v in [&reduced, &reversible, &semi] {
            b.keep(v);
        }
        out.push(b.finish());
    }
    Ok(out)
}
