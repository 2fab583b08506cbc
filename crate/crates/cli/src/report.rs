//! Versioned machine reports. Tools should parse these, never the text output.

use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use skewring::theorems::{SubCheck, TheoremReport};
use skewring::{
    verify_witness, Elem, Endo, Outcome, Params, Property, ScanMode, Subject, Verdict, Witness,
};

use crate::spec::{build_ring, RingSpec};

pub const FORMAT: &str = "report-v1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictReport {
    pub format: String,
    pub kind: String,
    pub property: String,
    pub subject: SubjectReport,
    pub params: ParamsReport,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub timing: Timing,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubjectReport {
    pub ring: String,
    pub size: usize,
    pub endo: String,
    pub endo_image: Vec<Elem>,
    /// Enough to rebuild the ring for replay.
    pub spec: RingSpec,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsReport {
    pub degree: Option<usize>,
    pub cap: u64,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum WitnessReport {
    Polynomials {
        f: Vec<Elem>,
        g: Vec<Elem>,
        i: usize,
        j: usize,
        product: Elem,
        rendered: String,
    },
    Elements {
        elems: Vec<Elem>,
        detail: String,
        rendered: String,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub seconds: f64,
}

pub fn verdict_report(
    name: &str,
    v: &Verdict,
    spec: &RingSpec,
    elapsed: Duration,
) -> VerdictReport {
    let ring = &v.subject.ring;
    let endo = v
        .subject
        .endo
        .clone()
        .unwrap_or_else(|| Endo::identity(ring));
    let (seed, samples) = match v.params.mode {
        ScanMode::Randomized { seed, samples } => (Some(seed), Some(samples)),
        _ => (None, None),
    };
    let rendered = v.describe_witness().unwrap_or_default();
    let witness = v.witness().map(|w| match w {
        Witness::Polynomials {
            f,
            g,
            i,
            j,
            product,
        } => WitnessReport::Polynomials {
            f: f.clone(),
            g: g.clone(),
            i: *i,
            j: *j,
            product: *product,
            rendered: rendered.clone(),
        },
        Witness::Elements { elems, detail } => WitnessReport::Elements {
            elems: elems.clone(),
            detail: detail.clone(),
            rendered: rendered.clone(),
        },
    });
    let (outcome, reason) = match &v.outcome {
        Outcome::Holds => ("holds", None),
        Outcome::Fails(_) => ("fails", None),
        Outcome::Unknown(r) => ("unknown", Some(r.clone())),
    };
    VerdictReport {
        format: FORMAT.into(),
        kind: "verdict".into(),
        property: name.into(),
        subject: SubjectReport {
            ring: ring.provenance().into(),
            size: ring.size(),
            endo: endo.label().into(),
            endo_image: endo.image().to_vec(),
            spec: spec.clone(),
        },
        params: ParamsReport {
            degree: v.params.degree,
            cap: v.params.cap,
            mode: match v.params.mode {
                ScanMode::Randomized { .. } => "randomized".into(),
                m => m.to_string(),
            },
            seed,
            samples,
        },
        outcome: outcome.into(),
        reason,
        witness,
        note: v.note.clone(),
        timing: Timing {
            seconds: elapsed.as_secs_f64(),
        },
    }
}

/// Rebuilds the subject from the embedded spec and replays the witness.
pub fn replay(report: &VerdictReport) -> Result<bool> {
    if report.format != FORMAT || report.kind != "verdict" {
        bail!(
            "expected a {FORMAT} verdict report, got format {:?} kind {:?}",
            report.format,
            report.kind
        );
    }
    let (property, _) = Property::parse(&report.property)
        .with_context(|| format!("unknown property {:?}", report.property))?;
    let ring = build_ring(&report.subject.spec)?;
    if ring.provenance() != report.subject.ring || ring.size() != report.subject.size {
        bail!(
            "spec builds {} ({} elements), report names {}",
            ring.provenance(),
            ring.size(),
            report.subject.ring
        );
    }
    let endo = Endo::new(
        &ring,
        report.subject.endo_image.clone(),
        &report.subject.endo,
    )?;
    let witness = match &report.witness {
        Some(WitnessReport::Polynomials {
            f,
            g,
            i,
            j,
            product,
            ..
        }) => Witness::Polynomials {
            f: f.clone(),
            g: g.clone(),
            i: *i,
            j: *j,
            product: *product,
        },
        Some(WitnessReport::Elements { elems, detail, .. }) => Witness::Elements {
            elems: elems.clone(),
            detail: detail.clone(),
        },
        None => bail!("report carries no witness (outcome {})", report.outcome),
    };
    let mode = match report.params.mode.as_str() {
        "exhaustive" => ScanMode::Exhaustive,
        "radical-quotient" => ScanMode::RadicalQuotient,
        "randomized" => ScanMode::Randomized {
            seed: report.params.seed.unwrap_or_default(),
            samples: report.params.samples.unwrap_or_default(),
        },
        other => bail!("unknown scan mode {other:?}"),
    };
    let verdict = Verdict {
        property,
        subject: Subject {
            ring: Arc::clone(&ring),
            endo: Some(endo),
        },
        params: Params {
            degree: report.params.degree,
            cap: report.params.cap,
            mode,
        },
        outcome: Outcome::Fails(witness),
        note: None,
    };
    Ok(verify_witness(&verdict)?)
}

#[derive(Debug, Serialize)]
pub struct ConformanceReport {
    pub format: &'static str,
    pub kind: &'static str,
    pub degree: usize,
    pub rows: Vec<ConformanceRow>,
    pub summary: ConformanceSummary,
}

#[derive(Debug, Serialize)]
pub struct ConformanceRow {
    pub theorem: &'static str,
    pub entry: String,
    pub status: String,
    pub surrogate: bool,
    pub tracked: bool,
    pub hypotheses: Vec<SubCheckReport>,
    pub conclusion: Vec<SubCheckReport>,
}

#[derive(Debug, Serialize)]
pub struct SubCheckReport {
    pub name: String,
    pub value: Option<bool>,
    pub detail: Option<String>,
}

#[derive(Debug, Default, Serialize)]
pub struct ConformanceSummary {
    pub theorems: usize,
    pub rows: usize,
    pub verified: usize,
    pub unknown: usize,
    pub not_applicable: usize,
    pub red_flags: usize,
    pub tracked_red_flags: usize,
}

fn sub(c: &SubCheck) -> SubCheckReport {
    SubCheckReport {
        name: c.name.clone(),
        value: c.value,
        detail: c.detail.clone(),
    }
}

pub fn conformance(degree: usize, reports: &[TheoremReport]) -> ConformanceReport {
    let mut summary = ConformanceSummary {
        theorems: reports.len(),
        ..ConformanceSummary::default()
    };
    let mut rows = Vec::new();
    for r in reports {
        let s = r.summary();
        summary.verified += s.verified;
        summary.unknown += s.unknown;
        summary.not_applicable += s.examined - s.applicable;
        if r.tracked {
            summary.tracked_red_flags += s.red_flags;
        } else {
            summary.red_flags += s.red_flags;
        }
        for rec in &r.records {
            rows.push(ConformanceRow {
                theorem: r.id,
                entry: rec.entry.clone(),
                status: rec.status.to_string(),
                surrogate: rec.surrogate,
                tracked: r.tracked,
                hypotheses: rec.hypotheses.iter().map(sub).collect(),
                conclusion: rec.conclusion.iter().map(sub).collect(),
            });
        }
    }
    summary.rows = rows.len();
    ConformanceReport {
        format: FORMAT,
        kind: "conformance",
        degree,
        rows,
        summary,
    }
}
