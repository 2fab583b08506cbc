//! Reproduction of the worked examples at finite scale.

use crate::endo::{is_rigid, lift_endo_matrix, Endo};
use crate::error::{Error, Result};
use crate::properties::{verify_witness, CheckOptions, Checker};
use crate::radical::prime_radical;
use crate::ring::{build_full_matrix, build_product, build_zn};
use crate::skewpoly::{annihilating_pairs, SkewRing};
use crate::verdict::{Outcome, Property, Verdict, Witness};

use super::corpus::corpus_default;

pub const REPRO_IDS: &[&str] = &["swap-product", "matrix-skew", "almost-not-rigid"];

/// Outcome of a reproduction. `lines` is byte-stable across runs.
#[derive(Debug, Clone)]
pub struct ReproReport {
    pub id: &'static str,
    pub subject: String,
    /// Verdicts computed by the engine.
    pub verdicts: Vec<Verdict>,
    /// The published witness wrapped as a verdict, when there is one.
    pub golden: Option<Verdict>,
    pub lines: Vec<String>,
}

impl ReproReport {
    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// Builds the instance, runs the checker and compares against the golden
/// witness. A mismatch is an [`Error::Reproduction`].
pub fn repro_example(id: &str) -> Result<ReproReport> {
    match id {
        "swap-product" => swap_product(),
        "matrix-skew" => matrix_skew(),
        "almost-not-rigid" => almost_not_rigid(),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

fn fail(id: &str, what: String) -> Error {
    Error::Reproduction(format!("{id}: {what}"))
}

/// Checks a published witness and returns it as a verdict next to the engine's.
fn golden_pair(
    id: &'static str,
    alpha: &Endo,
    engine: &Verdict,
    witness: Witness,
    lines: &mut Vec<String>,
) -> Result<Verdict> {
    let ring = alpha.ring();
    let golden = Verdict {
        outcome: Outcome::Fails(witness.clone()),
        note: None,
        ..engine.clone()
    };
    let (f, g) = match &witness {
        Witness::Polynomials { f, g, .. } => (f.clone(), g.clone()),
        Witness::Elements { .. } => unreachable!("polynomial golden"),
    };
    let degree = f.len() - 1;
    let in_stream =
        annihilating_pairs(&SkewRing::new(alpha), degree, u64::MAX).any(|(a, b)| a == f && b == g);
    if !in_stream {
        return Err(fail(
            id,
            "golden pair missing from the annihilating stream".into(),
        ));
    }
    if !verify_witness(&golden)? {
        return Err(fail(id, "golden witness does not replay".into()));
    }
    lines.push(format!("golden: {}", golden.describe_witness().unwrap()));
    lines.push(format!(
        "golden witness: annihilating pair present in the degree {degree} stream, replay ok ({})",
        ring.provenance()
    ));
    Ok(golden)
}

fn engine_lines(v: &Verdict, lines: &mut Vec<String>) {
    lines.push(format!("engine: {}", v.outcome_label()));
    if let Some(w) = v.describe_witness() {
        lines.push(format!("engine witness (lexicographically first): {w}"));
    }
}

fn swap_product() -> Result<ReproReport> {
    let id = "swap-product";
    let z2 = build_zn(2)?;
    let ring = build_product(&z2, &z2)?;
    let pair = |a, b| ring.pair(a, b).unwrap();
    let alpha = Endo::new(
        &ring,
        vec![pair(0, 0), pair(1, 0), pair(0, 1), pair(1, 1)],
        "swap",
    )?;
    let property = Property::ALPHA_ALMOST;
    let mut lines = vec![format!(
        "example {id}: ({}, swap), {property}, degree 1",
        ring.provenance()
    )];
    let radical = prime_radical(&ring)?;
    lines.push(format!("N* = {}", radical.describe()));
    let v = Checker::new(&alpha).check(property, &CheckOptions::with_degree(1))?;
    engine_lines(&v, &mut lines);
    if !v.fails() || !verify_witness(&v)? {
        return Err(fail(
            id,
            format!("expected a replayable failure, got {}", v.outcome_label()),
        ));
    }
    let product = pair(0, 1);
    if radical.contains(product) {
        return Err(fail(id, "(0,1) lies in N*".into()));
    }
    let witness = Witness::Polynomials {
        f: vec![pair(1, 0), pair(0, 1)],
        g: vec![pair(0, 1), pair(0, 1)],
        i: 1,
        j: 1,
        product,
    };
    let golden = golden_pair(id, &alpha, &v, witness, &mut lines)?;
    lines.push("PASS".into());
    Ok(ReproReport {
        id,
        subject: format!("({}, swap)", ring.provenance()),
        verdicts: vec![v],
        golden: Some(golden),
        lines,
    })
}

fn matrix_skew() -> Result<ReproReport> {
    let id = "matrix-skew";
    let z2 = build_zn(2)?;
    let m2 = build_full_matrix(&z2, 2)?;
    let alpha = lift_endo_matrix(&Endo::identity(&z2), &m2)?;
    let e = |i, j| m2.matrix_unit(i, j).unwrap();
    let add = |a, b| m2.add(a, b);
    let property = Property::ALPHA_SKEW_ALMOST;
    let mut lines = vec![format!(
        "example {id}: ({}, {}), {property}, degree 1",
        m2.provenance(),
        alpha.label()
    )];
    let radical = prime_radical(&m2)?;
    lines.push(format!("N* = {}", radical.describe()));
    let v = Checker::new(&alpha).check(property, &CheckOptions::with_degree(1))?;
    engine_lines(&v, &mut lines);
    if !v.fails() || !verify_witness(&v)? {
        return Err(fail(
            id,
            format!("expected a replayable failure, got {}", v.outcome_label()),
        ));
    }
    // over Z2 the signs of the published g vanish
    let product = add(e(1, 1), e(1, 2));
    let witness = Witness::Polynomials {
        f: vec![e(1, 1), e(1, 2)],
        g: vec![add(e(2, 1), e(2, 2)), add(e(1, 1), e(1, 2))],
        i: 0,
        j: 1,
        product,
    };
    let golden = golden_pair(id, &alpha, &v, witness, &mut lines)?;
    lines.push(format!(
        "offending product {} is not strongly nilpotent",
        m2.format_elem(product)
    ));
    lines.push("PASS".into());
    Ok(ReproReport {
        id,
        subject: format!("({}, {})", m2.provenance(), alpha.label()),
        verdicts: vec![v],
        golden: Some(golden),
        lines,
    })
}

/// Finite stand-in for an example over the integers: the first corpus pair
/// that is alpha-almost Armendariz (degree 3) but not alpha-rigid.
fn almost_not_rigid() -> Result<ReproReport> {
    let id = "almost-not-rigid";
    let degree = 3;
    let mut lines = vec![format!(
        "example {id}: first corpus pair that is {} up to degree {degree} and not alpha-rigid",
        Property::ALPHA_ALMOST
    )];
    for entry in corpus_default().iter() {
        let alpha = &entry.alpha;
        let rigid = is_rigid(alpha);
        if rigid.holds() {
            continue;
        }
        let almost = Checker::new(alpha)
            .check(Property::ALPHA_ALMOST, &CheckOptions::with_degree(degree))?;
        if !almost.holds() {
            continue;
        }
        lines.push(format!("found: {}", entry.label()));
        lines.push(format!("{}: {}", almost.property, almost.outcome_label()));
        lines.push(format!(
            "alpha-rigid: fails; {}",
            rigid.describe_witness().unwrap()
        ));
        let z4 = build_zn(4)?;
        let expected = entry.ring().same_tables(&z4) && alpha.is_identity();
        let rigid_witness =
            matches!(rigid.witness(), Some(Witness::Elements { elems, .. }) if elems == &vec![2]);
        if !expected || !rigid_witness {
            return Err(fail(
                id,
                format!("expected (Z4, id) with a = 2, found {}", entry.label()),
            ));
        }
        if !verify_witness(&rigid)? {
            return Err(fail(id, "rigidity witness does not replay".into()));
        }
        lines.push("PASS".into());
        return Ok(ReproReport {
            id,
            subject: entry.label(),
            verdicts: vec![almost, rigid],
            golden: None,
            lines,
        });
    }
    Err(fail(id, "no corpus pair matches".into()))
}
