//! Executable conformance checks: each published statement becomes a
//! hypothesis/conclusion test over a corpus of `(ring, endomorphism)` pairs.
//!
//! A record whose hypotheses hold but whose conclusion fails is a red flag.
//! Red flags are reported, never adjudicated.

mod checks;
mod corpus;
mod repro;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::endo::{endo_order, is_alpha_ideal, Endo};
use crate::error::{Error, Result};
use crate::properties::{CheckOptions, Checker, DEFAULT_PAIR_CAP};
use crate::radical::IdealSet;
use crate::ring::{is_abelian, FiniteRing};
use crate::verdict::{Property, Verdict};

pub use corpus::{corpus_default, Corpus, CorpusEntry};
pub use repro::{repro_example, ReproReport, REPRO_IDS};

/// Default degree bound for sweeps.
pub const DEFAULT_SWEEP_DEGREE: usize = 2;

pub struct TheoremInfo {
    pub id: &'static str,
    pub statement: &'static str,
    /// Bounded stand-in for a statement about an infinite ring.
    pub surrogate: bool,
    /// Red flags are expected and do not count against the sweep.
    pub tracked: bool,
}

const fn info(id: &'static str, statement: &'static str) -> TheoremInfo {
    TheoremInfo {
        id,
        statement,
        surrogate: false,
        tracked: false,
    }
}

const fn surrogate(id: &'static str, statement: &'static str) -> TheoremInfo {
    TheoremInfo {
        id,
        statement,
        surrogate: true,
        tracked: false,
    }
}

pub const THEOREMS: &[TheoremInfo] = &[
    info("un-transfer", "R is alpha-almost Armendariz iff U_n(R) is alpha-almost Armendariz"),
    info("un-transfer-identity", "R is almost Armendariz iff U_n(R) is almost Armendariz"),
    info("truncated-transfer", "R is alpha-almost Armendariz iff R[x]/(x^n) is alpha-almost Armendariz"),
    info("trivial-extension-transfer", "R is alpha-almost Armendariz iff T(R, R) is alpha-almost Armendariz"),
    info("compatible-zero-powers", "alpha-compatible: ab = 0 gives a alpha^m(b) = alpha^m(a) b = 0, and alpha^m(a) b = 0 gives ab = 0"),
    info("compatible-radical-powers", "alpha-compatible: ab in N* iff a alpha^k(b) in N* iff alpha^k(a) b in N*"),
    info("semicommutative-compatible-radical", "semicommutative alpha-compatible: ab in N* iff a alpha(b) in N*, and a alpha(a) in N* gives a in N*"),
    info("armendariz-implies-almost", "alpha-Armendariz rings are alpha-almost Armendariz"),
    info("semicommutative-compatible-star", "semicommutative alpha-compatible rings are alpha(*) rings"),
    info("skew-radical-inclusion", "alpha(*)-rigid: N*(R[x; alpha]) lies in N*(R)[x; alpha], checked through the product membership equivalence"),
    info("almost-annihilator-shift", "alpha-almost Armendariz: ab = 0 gives alpha(a) b in N*, and a alpha^m(b) = 0 gives ab in N*"),
    TheoremInfo {
        id: "almost-annihilator-shift-stated",
        statement: "alpha-almost Armendariz: ab = 0 gives a alpha(b) in N*",
        surrogate: false,
        tracked: true,
    },
    surrogate("skew-ring-almost-descent", "semicommutative alpha-compatible with R[x; alpha] almost Armendariz: R is alpha-almost Armendariz"),
    info("semicommutative-compatible-almost", "alpha-compatible semicommutative rings are alpha-almost Armendariz"),
    surrogate("polynomial-extension-almost", "alpha^k = id: R is alpha-almost Armendariz iff R[x] is alpha-almost Armendariz"),
    info("idempotent-split-almost", "abelian, alpha(e) = e: R is alpha-almost Armendariz iff eR and (1-e)R are"),
    info("square-zero-products", "alpha-compatible alpha-almost Armendariz, a^2 = b^2 = 0: aba in N*, ab and a + b nilpotent"),
    info("un-transfer-skew", "R is alpha-skew almost Armendariz iff U_n(R) is"),
    info("skew-armendariz-un-skew-almost", "alpha-skew Armendariz R: U_n(R) is alpha-skew almost Armendariz"),
    info("quotient-lift-skew", "alpha-ideal I in N*, R/I alpha-skew almost Armendariz: R is alpha-skew almost Armendariz"),
    info("idempotent-split-skew", "abelian, alpha fixes idempotents: R is alpha-skew almost Armendariz iff eR and (1-e)R are"),
    info("reversible-radical-powers", "reversible, ab = 0 gives a alpha(b) = 0: ab in N* gives a alpha^t(b) in N*"),
    info("reversible-skew-almost", "reversible, ab = 0 gives a alpha(b) = 0: R is alpha-skew almost Armendariz"),
    info("star-ring-radical-powers", "alpha(*) ring with alpha-ideal N*: ab in N* iff a alpha^n(b) in N* iff alpha^n(a) b in N*"),
    info("star-ring-product-membership", "alpha(*) ring with alpha-ideal N*: pq in N*(R)[x; alpha] iff every a_i b_j in N*"),
    info("star-ring-skew-almost", "alpha(*) ring with alpha-ideal N*: R is alpha-skew almost Armendariz"),
    surrogate("polynomial-extension-skew-almost", "reversible, ab = 0 gives a alpha(b) = 0, alpha^k = id: R[x] is alpha-skew almost Armendariz"),
    surrogate("skew-ring-almost-ascent", "reversible, ab = 0 gives a alpha(b) = 0, alpha^k = id: R[x; alpha] is almost Armendariz"),
    surrogate("polynomial-extension-skew-equivalence", "alpha^t = id: R is alpha-skew almost Armendariz iff R[x] is"),
    info("swap-product-counterexample", "Z2 x Z2 with the swap is not alpha-almost Armendariz"),
    info("matrix-skew-counterexample", "M2(R) need not be alpha-skew almost Armendariz"),
    info("almost-not-rigid-search", "an alpha-almost Armendariz pair that is not alpha-rigid"),
    info("property-chain", "reduced, reversible, semicommutative, almost Armendariz form a chain of implications"),
];

pub fn theorem_info(id: &str) -> Option<&'static TheoremInfo> {
    THEOREMS.iter().find(|t| t.id == id)
}

pub fn theorem_ids() -> impl Iterator<Item = &'static str> {
    THEOREMS.iter().map(|t| t.id)
}

/// One named boolean inside a record. `None` means undecided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub name: String,
    pub value: Option<bool>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    /// Some hypothesis fails, so the conclusion was not evaluated.
    NotApplicable,
    Verified,
    Unknown,
    RedFlag,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::NotApplicable => "n/a",
            CheckStatus::Verified => "verified",
            CheckStatus::Unknown => "unknown",
            CheckStatus::RedFlag => "RED FLAG",
        })
    }
}

#[derive(Debug, Clone)]
pub struct EntryRecord {
    pub entry: String,
    pub hypotheses: Vec<SubCheck>,
    pub conclusion: Vec<SubCheck>,
    pub surrogate: bool,
    pub status: CheckStatus,
    /// Every verdict consulted, kept for witness replay.
    pub verdicts: Vec<Verdict>,
}

impl EntryRecord {
    pub fn hypotheses_hold(&self) -> Option<bool> {
        all_of(&self.hypotheses)
    }
}

fn all_of(checks: &[SubCheck]) -> Option<bool> {
    if checks.iter().any(|c| c.value == Some(false)) {
        Some(false)
    } else if checks.iter().all(|c| c.value == Some(true)) {
        Some(true)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub examined: usize,
    pub applicable: usize,
    pub verified: usize,
    pub unknown: usize,
    pub red_flags: usize,
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub degree: usize,
    pub surrogate: bool,
    pub tracked: bool,
    pub records: Vec<EntryRecord>,
}

impl TheoremReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            examined: self.records.len(),
            ..Summary::default()
        };
        for r in &self.records {
            match r.status {
                CheckStatus::NotApplicable => {}
                CheckStatus::Verified => s.verified += 1,
                CheckStatus::Unknown => s.unknown += 1,
                CheckStatus::RedFlag => s.red_flags += 1,
            }
            if r.hypotheses_hold() == Some(true) {
                s.applicable += 1;
            }
        }
        s
    }

    /// No red flags, or only red flags on a tracked check.
    pub fn is_clean(&self) -> bool {
        self.tracked || self.summary().red_flags == 0
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.records.iter().flat_map(|r| r.verdicts.iter())
    }
}

/// Collects sub-checks and derives the record status.
pub(crate) struct RecordBuilder {
    entry: String,
    hypotheses: Vec<SubCheck>,
    conclusion: Vec<SubCheck>,
    verdicts: Vec<Verdict>,
    surrogate: bool,
}

impl RecordBuilder {
    pub(crate) fn new(entry: String, surrogate: bool) -> RecordBuilder {
        RecordBuilder {
            entry,
            hypotheses: Vec::new(),
            conclusion: Vec::new(),
            verdicts: Vec::new(),
            surrogate,
        }
    }

    pub(crate) fn hyp(&mut self, name: &str, value: Option<bool>, detail: Option<String>) {
        self.hypotheses.push(SubCheck {
            name: name.into(),
            value,
            detail,
        });
    }

    pub(crate) fn hyp_verdict(&mut self, name: &str, v: &Verdict) {
        self.hyp(name, v.as_bool(), Some(verdict_detail(v)));
        self.keep(v);
    }

    /// Every hypothesis so far holds.
    pub(crate) fn ok(&self) -> bool {
        all_of(&self.hypotheses) == Some(true)
    }

    pub(crate) fn concl(&mut self, name: &str, value: Option<bool>, detail: Option<String>) {
        self.conclusion.push(SubCheck {
            name: name.into(),
            value,
            detail,
        });
    }

    pub(crate) fn concl_verdict(&mut self, name: &str, v: &Verdict) {
        self.concl(name, v.as_bool(), Some(verdict_detail(v)));
        self.keep(v);
    }

    pub(crate) fn keep(&mut self, v: &Verdict) {
        self.verdicts.push(v.clone());
    }

    pub(crate) fn finish(self) -> EntryRecord {
        let status = match all_of(&self.hypotheses) {
            Some(false) => CheckStatus::NotApplicable,
            None => CheckStatus::Unknown,
            Some(true) => match all_of(&self.conclusion) {
                Some(true) => CheckStatus::Verified,
                Some(false) => CheckStatus::RedFlag,
                None => CheckStatus::Unknown,
            },
        };
        EntryRecord {
            entry: self.entry,
            hypotheses: self.hypotheses,
            conclusion: self.conclusion,
            surrogate: self.surrogate,
            status,
            verdicts: self.verdicts,
        }
    }
}

pub(crate) fn verdict_detail(v: &Verdict) -> String {
    let mut s = format!(
        "{} on {}: {}",
        v.property,
        v.subject.describe(),
        v.outcome_label()
    );
    if let Some(w) = v.describe_witness() {
        s.push_str("; ");
        s.push_str(&w);
    }
    s
}

/// Lazily computed, cached facts about one corpus entry.
pub(crate) struct Facts {
    pub(crate) entry: CorpusEntry,
    pub(crate) checker: Checker,
    pub(crate) cap: u64,
    verdicts: Mutex<HashMap<(Property, usize), Verdict>>,
    derived: Mutex<HashMap<(String, Property, usize), Verdict>>,
    abelian: OnceLock<bool>,
}

impl Facts {
    pub(crate) fn new(entry: &CorpusEntry, cap: u64) -> Facts {
        Facts {
            checker: Checker::new(&entry.alpha),
            entry: entry.clone(),
            cap,
            verdicts: Mutex::new(HashMap::new()),
            derived: Mutex::new(HashMap::new()),
            abelian: OnceLock::new(),
        }
    }

    pub(crate) fn ring(&self) -> &Arc<FiniteRing> {
        self.entry.ring()
    }

    pub(crate) fn alpha(&self) -> &Endo {
        &self.entry.alpha
    }

    pub(crate) fn label(&self) -> String {
        self.entry.label()
    }

    pub(crate) fn radical(&self) -> Result<&IdealSet> {
        self.checker.radical()
    }

    /// Cached verdict; `degree` is ignored for element properties.
    pub(crate) fn verdict(&self, property: Property, degree: usize) -> Result<Verdict> {
        let degree = if matches!(property, Property::ZeroProduct { .. }) {
            degree
        } else {
            0
        };
        if let Some(v) = self.verdicts.lock().unwrap().get(&(property, degree)) {
            return Ok(v.clone());
        }
        let opts = CheckOptions {
            degree,
            cap: self.cap,
            ..CheckOptions::default()
        };
        let v = self.checker.check(property, &opts)?;
        self.verdicts
            .lock()
            .unwrap()
            .insert((property, degree), v.clone());
        Ok(v)
    }

    /// Cached verdict on a ring built from this entry, keyed by `name`.
    pub(crate) fn derived_verdict(
        &self,
        name: &str,
        property: Property,
        degree: usize,
        compute: impl FnOnce() -> Result<Verdict>,
    ) -> Result<Verdict> {
        let key = (name.to_string(), property, degree);
        if let Some(v) = self.derived.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = compute()?;
        self.derived.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub(crate) fn radical_is_alpha_ideal(&self) -> Result<bool> {
        Ok(is_alpha_ideal(self.radical()?, self.alpha()))
    }

    pub(crate) fn order(&self) -> Option<usize> {
        endo_order(self.alpha())
    }

    pub(crate) fn abelian(&self) -> bool {
        *self.abelian.get_or_init(|| is_abelian(self.ring()))
    }
}

/// Shared state for checking many theorems over one corpus.
pub struct Sweep {
    facts: Vec<Facts>,
    degree: usize,
    cap: u64,
}

impl Sweep {
    pub fn new(corpus: &Corpus, degree: usize, cap: u64) -> Sweep {
        Sweep {
            facts: corpus.iter().map(|e| Facts::new(e, cap)).collect(),
            degree,
            cap,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn check(&self, id: &str) -> Result<TheoremReport> {
        let info = theorem_info(id).ok_or_else(|| Error::UnknownId(id.to_string()))?;
        let ctx = checks::Ctx {
            degree: self.degree,
            cap: self.cap,
            surrogate: info.surrogate,
        };
        let records = match checks::global(info.id, &ctx, &self.facts) {
            Some(r) => r?,
            None => self
                .facts
                .par_iter()
                .map(|f| checks::per_entry(info.id, &ctx, f))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect(),
        };
        Ok(TheoremReport {
            id: info.id,
            statement: info.statement,
            degree: self.degree,
            surrogate: info.surrogate,
            tracked: info.tracked,
            records,
        })
    }

    pub fn check_all(&self) -> Result<Vec<TheoremReport>> {
        theorem_ids().map(|id| self.check(id)).collect()
    }
}

/// Runs one conformance check over `corpus` at degree bound `degree`.
pub fn check_theorem(id: &str, corpus: &Corpus, degree: usize, cap: u64) -> Result<TheoremReport> {
    if theorem_info(id).is_none() {
        return Err(Error::UnknownId(id.to_string()));
    }
    Sweep::new(corpus, degree, cap).check(id)
}

/// Every theorem over the default corpus at the default bound.
pub fn sweep_default() -> Result<Vec<TheoremReport>> {
    Sweep::new(&corpus_default(), DEFAULT_SWEEP_DEGREE, DEFAULT_PAIR_CAP).check_all()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn status(hyps: &[Option<bool>], concls: &[Option<bool>]) -> CheckStatus {
        let mut b = RecordBuilder::new("x".into(), false);
        for &h in hyps {
            b.hyp("h", h, None);
        }
        for &c in concls {
            b.concl("c", c, None);
        }
        b.finish().status
    }

    #[test]
    fn record_status_follows_hypotheses_then_conclusions() {
        assert_eq!(
            status(&[Some(true), Some(false)], &[Some(false)]),
            CheckStatus::NotApplicable
        );
        assert_eq!(
            status(&[None, Some(false)], &[]),
            CheckStatus::NotApplicable
        );
        assert_eq!(status(&[None], &[Some(true)]), CheckStatus::Unknown);
        assert_eq!(
            status(&[Some(true)], &[Some(true), Some(true)]),
            CheckStatus::Verified
        );
        assert_eq!(
            status(&[Some(true)], &[Some(true), None]),
            CheckStatus::Unknown
        );
        assert_eq!(
            status(&[Some(true)], &[None, Some(false)]),
            CheckStatus::RedFlag
        );
    }

    #[test]
    fn ids_are_unique_and_resolvable() {
        let ids: Vec<&str> = theorem_ids().collect();
        let unique: std::collections::HashSet<&str> = ids.iter().copied().collect();
        assert_eq!(ids.len(), unique.len());
        assert!(ids.iter().all(|id| theorem_info(id).is_some()));
        assert!(matches!(
            check_theorem("no-such-theorem", &corpus_default(), 1, 1000),
            Err(Error::UnknownId(_))
        ));
    }

    #[test]
    fn elementwise_lemmas_hold_on_small_rings() {
        let corpus = corpus_default().filter("Z2");
        let sweep = Sweep::new(&corpus, 1, DEFAULT_PAIR_CAP);
        for id in [
            "compatible-zero-powers",
            "compatible-radical-powers",
            "square-zero-products",
            "star-ring-radical-powers",
        ] {
            let r = sweep.check(id).unwrap();
            let s = r.summary();
            assert_eq!(s.red_flags, 0, "{id}");
            assert_eq!(s.examined, corpus.len(), "{id}");
            assert!(s.applicable > 0, "{id}");
        }
    }

    #[test]
    fn reproductions_are_byte_stable() {
        for id in REPRO_IDS {
            let a = repro_example(id).unwrap().text();
            let b = repro_example(id).unwrap().text();
            assert_eq!(a, b);
            assert!(a.ends_with("PASS\n"), "{id}");
        }
        assert!(matches!(repro_example("nope"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn published_examples_are_checked_globally() {
        let corpus = corpus_default();
        let sweep = Sweep::new(&corpus, 1, DEFAULT_PAIR_CAP);
        for id in ["swap-product-counterexample", "matrix-skew-counterexample"] {
            let r = sweep.check(id).unwrap();
            assert_eq!(r.records.len(), 1);
            assert_eq!(r.records[0].status, CheckStatus::Verified, "{id}");
        }
    }
}
