//! `skewring`: build finite rings, check Armendariz-type properties, run the
//! conformance sweep and reproduce the worked examples.
//!
//! Exit codes: `check` returns 0 (holds), 1 (fails) or 2 (unknown); `verify`
//! and `search` return 0 or 1; `theorem` returns 1 on any untracked red flag.
//! Usage errors exit 64, bad input 65, internal failures 70.

mod query;
mod report;
mod spec;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use skewring::endo::{endo_order, enumerate_endos, is_compatible, is_rigid};
use skewring::properties::{DEFAULT_DEGREE, DEFAULT_PAIR_CAP, DEFAULT_SAMPLES, DEFAULT_SEED};
use skewring::radical::{nil_elements, nilpotency_index, IDEAL_ENUMERATION_CAP};
use skewring::ring::{idempotents, set_size_cap};
use skewring::theorems::{
    corpus_default, repro_example, theorem_ids, theorem_info, CheckStatus, Sweep, REPRO_IDS,
};
use skewring::{
    check_property, prime_radical, prime_radical_via_primes, CheckOptions, Endo, ModeRequest,
    Property,
};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "skewring",
    version,
    about = "Finite rings, skew polynomial rings and Armendariz-type property checks"
)]
struct Cli {
    /// Largest ring any construction may build.
    #[arg(long, global = true, env = "SKEWRING_SIZE_CAP")]
    size_cap: Option<usize>,

    /// Candidate budget for exhaustive scans; larger scans fall back to sampling.
    #[arg(long, visible_alias = "cap", global = true, env = "SKEWRING_PAIR_CAP")]
    pair_cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and validate a ring document; print its basic invariants.
    Build { spec: PathBuf },
    /// Check one property of the document's ring and endomorphism.
    Check {
        spec: PathBuf,
        /// Catalog name; defaults to the document's `params.property`.
        property: Option<String>,
        #[arg(short, long)]
        degree: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the prime radical.
    Radical {
        spec: PathBuf,
        /// Cross-check against the intersection of all prime ideals.
        #[arg(long)]
        oracle: bool,
    },
    /// List the unital endomorphisms.
    Endos { spec: PathBuf },
    /// Run a conformance check (or `all`) over the default corpus.
    Theorem {
        id: String,
        #[arg(short, long, default_value_t = skewring::theorems::DEFAULT_SWEEP_DEGREE)]
        degree: usize,
        /// Keep corpus entries whose label contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reproduce a worked example and compare with its published witness.
    Repro { id: String },
    /// First corpus entry satisfying a query such as `alpha-almost-armendariz & !alpha-rigid`.
    Search {
        query: String,
        /// Additional property the match must fail; repeatable.
        #[arg(long)]
        negate: Vec<String>,
        #[arg(short, long, default_value_t = skewring::theorems::DEFAULT_SWEEP_DEGREE)]
        degree: usize,
        #[arg(long)]
        filter: Option<String>,
    },
    /// Replay the witness in a machine report.
    Verify { report: PathBuf },
    /// List property names, theorem ids and example ids.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    Randomized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.is::<UsageError>() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<skewring::Error>() {
        Some(skewring::Error::UnknownId(_)) => EXIT_USAGE,
        Some(skewring::Error::Internal(_)) => EXIT_INTERNAL,
        Some(_) => EXIT_DATA,
        None if e.is::<serde_json::Error>() || e.is::<std::io::Error>() => EXIT_DATA,
        None => EXIT_DATA,
    }
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(cap) = cli.size_cap {
        set_size_cap(cap);
    }
    let pair_cap = cli.pair_cap.unwrap_or(DEFAULT_PAIR_CAP);
    match cli.command {
        Command::Build { spec } => build(&spec),
        Command::Check {
            spec,
            property,
            degree,
            mode,
            seed,
            samples,
            format,
        } => check(
            &spec,
            property,
            degree,
            mode,
            seed,
            samples,
            cli.pair_cap,
            format,
        ),
        Command::Radical { spec, oracle } => radical(&spec, oracle),
        Command::Endos { spec } => endos(&spec),
        Command::Theorem {
            id,
            degree,
            filter,
            format,
        } => theorem(&id, degree, filter.as_deref(), pair_cap, format),
        Command::Repro { id } => repro(&id),
        Command::Search {
            query,
            negate,
            degree,
            filter,
        } => search(&query, &negate, degree, filter.as_deref(), pair_cap),
        Command::Verify { report } => verify(&report),
        Command::List => list(),
    }
}

fn load(
    path: &std::path::Path,
) -> Result<(spec::Document, std::sync::Arc<skewring::FiniteRing>, Endo)> {
    let doc = spec::load(path)?;
    let ring =
        spec::build_ring(&doc.ring).with_context(|| format!("building {}", path.display()))?;
    let alpha = spec::build_endo(&ring, doc.endo.as_ref())
        .with_context(|| format!("endomorphism in {}", path.display()))?;
    Ok((doc, ring, alpha))
}

fn elems(ring: &skewring::FiniteRing, items: impl IntoIterator<Item = skewring::Elem>) -> String {
    let items: Vec<String> = items.into_iter().map(|e| ring.format_elem(e)).collect();
    format!("{{{}}}", items.join(", "))
}

fn build(path: &std::path::Path) -> Result<u8> {
    let (_, ring, alpha) = load(path)?;
    let radical = prime_radical(&ring)?;
    println!("ring: {}", ring.provenance());
    println!("size {}, N* = {}", ring.size(), radical.describe());
    println!("commutative: {}", ring.is_commutative());
    println!("idempotents: {}", elems(&ring, idempotents(&ring)));
    println!(
        "N = {}",
        elems(
            &ring,
            nil_elements(&ring).ones().map(|e| e as skewring::Elem)
        )
    );
    match enumerate_endos(&ring) {
        Ok(list) => println!("{} unital endomorphisms", list.len()),
        Err(e) => println!("unital endomorphisms: not enumerated ({e})"),
    }
    println!("endomorphism: {}", alpha.label());
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn check(
    path: &std::path::Path,
    property: Option<String>,
    degree: Option<usize>,
    mode: Option<Mode>,
    seed: Option<u64>,
    samples: Option<u64>,
    pair_cap: Option<u64>,
    format: Format,
) -> Result<u8> {
    let (doc, ring, alpha) = load(path)?;
    let params = doc.params.clone().unwrap_or_default();
    let name = property
        .or(params.property.clone())
        .ok_or_else(|| usage("no property given on the command line or in params.property"))?;
    let (prop, identity) = Property::parse(&name)
        .ok_or_else(|| usage(format!("unknown property {name:?}; see `skewring list`")))?;
    let alpha = if identity && !alpha.is_identity() {
        eprintln!(
            "note: {name} fixes the endomorphism to the identity; ignoring {}",
            alpha.label()
        );
        Endo::identity(&ring)
    } else {
        alpha
    };
    let mode = match mode {
        Some(m) => m,
        None => match params.mode.as_deref() {
            None | Some("auto") => Mode::Auto,
            Some("exhaustive") => Mode::Exhaustive,
            Some("randomized") => Mode::Randomized,
            Some(other) => return Err(usage(format!("unknown mode {other:?} in params.mode"))),
        },
    };
    let opts = CheckOptions {
        degree: degree.or(params.degree).unwrap_or(DEFAULT_DEGREE),
        cap: pair_cap.or(params.cap).unwrap_or(DEFAULT_PAIR_CAP),
        mode: match mode {
            Mode::Auto => ModeRequest::Auto,
            Mode::Exhaustive => ModeRequest::Exhaustive,
            Mode::Randomized => ModeRequest::Randomized,
        },
        seed: seed.or(params.seed).unwrap_or(DEFAULT_SEED),
        samples: samples.or(params.samples).unwrap_or(DEFAULT_SAMPLES),
    };
    let start = Instant::now();
    let v = check_property(&alpha, prop, &opts)?;
    let elapsed = start.elapsed();
    match format {
        Format::Machine => {
            let r = report::verdict_report(&name, &v, &doc.ring, elapsed);
            println!("{}", serde_json::to_string_pretty(&r)?);
        }
        Format::Text => {
            println!("property: {name}");
            println!("subject: {}", v.subject.describe());
            let degree = v
                .params
                .degree
                .map(|d| format!("degree {d}, "))
                .unwrap_or_default();
            println!("params: {degree}{}, cap {}", v.params.mode, v.params.cap);
            println!("outcome: {}", v.outcome_label());
            if let Some(w) = v.describe_witness() {
                println!("witness: {w}");
            }
            if let Some(n) = &v.note {
                println!("note: {n}");
            }
            println!("time: {:.3}s", elapsed.as_secs_f64());
        }
    }
    Ok(match v.as_bool() {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    })
}

fn radical(path: &std::path::Path, oracle: bool) -> Result<u8> {
    let (_, ring, _) = load(path)?;
    let r = prime_radical(&ring)?;
    println!("ring: {}", ring.provenance());
    println!("N* = {}", r.describe());
    println!("|N*| = {}", r.len());
    match nilpotency_index(&r) {
        Some(k) => println!("nilpotency index: {k}"),
        None => println!("nilpotency index: none"),
    }
    if oracle {
        let via = prime_radical_via_primes(&ring, IDEAL_ENUMERATION_CAP)?;
        let agree = via.members() == r.members();
        println!(
            "intersection of prime ideals: {}",
            if agree { "agrees" } else { "DISAGREES" }
        );
        if !agree {
            return Ok(1);
        }
    }
    Ok(0)
}

fn endos(path: &std::path::Path) -> Result<u8> {
    let (_, ring, _) = load(path)?;
    let list = enumerate_endos(&ring)?;
    println!("ring: {}", ring.provenance());
    println!("{} unital endomorphisms", list.len());
    for a in &list {
        let order = endo_order(a)
            .map(|k| k.to_string())
            .unwrap_or_else(|| "none (not bijective)".into());
        let flag = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "?",
        };
        println!(
            "{}: {:?} order {order}, injective {}, compatible {}, rigid {}",
            a.label(),
            a.image(),
            if a.is_injective() { "yes" } else { "no" },
            flag(is_compatible(a).as_bool()),
            flag(is_rigid(a).as_bool()),
        );
    }
    Ok(0)
}

fn theorem(id: &str, degree: usize, filter: Option<&str>, cap: u64, format: Format) -> Result<u8> {
    let ids: Vec<&str> = if id == "all" {
        theorem_ids().collect()
    } else {
        let info = theorem_info(id)
            .ok_or_else(|| usage(format!("unknown theorem id {id:?}; see `skewring list`")))?;
        vec![info.id]
    };
    let corpus = match filter {
        Some(f) => corpus_default().filter(f),
        None => corpus_default(),
    };
    let sweep = Sweep::new(&corpus, degree, cap);
    let mut reports = Vec::new();
    for id in ids {
        reports.push(sweep.check(id)?);
    }
    let table = report::conformance(degree, &reports);
    match format {
        Format::Machine => println!("{}", serde_json::to_string_pretty(&table)?),
        Format::Text => {
            for r in &reports {
                let mut tags = vec![format!("degree {degree}")];
                if r.surrogate {
                    tags.push("bounded surrogate".into());
                }
                if r.tracked {
                    tags.push("tracked".into());
                }
                println!("{}: {} [{}]", r.id, r.statement, tags.join(", "));
                for rec in &r.records {
                    println!("  {:<32} {}", rec.entry, rec.status);
                    if matches!(rec.status, CheckStatus::RedFlag | CheckStatus::Unknown) {
                        for c in rec
                            .hypotheses
                            .iter()
                            .chain(&rec.conclusion)
                            .filter(|c| c.value != Some(true))
                        {
                            let value = match c.value {
                                Some(false) => "false",
                                _ => "undecided",
                            };
                            let detail = c
                                .detail
                                .as_deref()
                                .map(|d| format!(": {d}"))
                                .unwrap_or_default();
                            println!("      {} {value}{detail}", c.name);
                        }
                    }
                }
                let s = r.summary();
                println!(
                    "  {} examined, {} applicable, {} verified, {} unknown, {} red flags",
                    s.examined, s.applicable, s.verified, s.unknown, s.red_flags
                );
            }
            let s = &table.summary;
            println!(
                "total: {} theorems, {} rows, {} verified, {} unknown, {} red flags, {} tracked red flags",
                s.theorems, s.rows, s.verified, s.unknown, s.red_flags, s.tracked_red_flags
            );
        }
    }
    Ok(if table.summary.red_flags > 0 { 1 } else { 0 })
}

fn repro(id: &str) -> Result<u8> {
    if !REPRO_IDS.contains(&id) {
        return Err(usage(format!(
            "unknown example {id:?}; expected one of {}",
            REPRO_IDS.join(", ")
        )));
    }
    match repro_example(id) {
        Ok(r) => {
            print!("{}", r.text());
            Ok(0)
        }
        Err(skewring::Error::Reproduction(why)) => {
            println!("FAIL: {why}");
            Ok(1)
        }
        Err(e) => Err(e.into()),
    }
}

fn search(q: &str, negate: &[String], degree: usize, filter: Option<&str>, cap: u64) -> Result<u8> {
    let mut terms = query::parse(q).map_err(|e| usage(e.to_string()))?;
    for name in negate {
        let mut more = query::parse(name).map_err(|e| usage(e.to_string()))?;
        for t in &mut more {
            t.negated = !t.negated;
        }
        terms.extend(more);
    }
    let corpus = match filter {
        Some(f) => corpus_default().filter(f),
        None => corpus_default(),
    };
    let opts = CheckOptions {
        degree,
        cap,
        ..CheckOptions::default()
    };
    let mut undecided = Vec::new();
    for entry in corpus.iter() {
        let mut lines = Vec::new();
        let mut matched = Some(true);
        for t in &terms {
            let alpha = if t.identity {
                Endo::identity(entry.ring())
            } else {
                entry.alpha.clone()
            };
            let v = check_property(&alpha, t.property, &opts)?;
            lines.push(format!(
                "  {}{}: {}",
                if t.negated { "not " } else { "" },
                t.name,
                v.outcome_label()
            ));
            if let Some(w) = v.describe_witness() {
                lines.push(format!("    {w}"));
            }
            match v.as_bool() {
                Some(b) if b != t.negated => {}
                Some(_) => {
                    matched = Some(false);
                    break;
                }
                None => matched = None,
            }
        }
        match matched {
            Some(true) => {
                println!("first match: {}", entry.label());
                for l in lines {
                    println!("{l}");
                }
                if !undecided.is_empty() {
                    println!("skipped as undecided: {}", undecided.join(", "));
                }
                return Ok(0);
            }
            None => undecided.push(entry.label()),
            Some(false) => {}
        }
    }
    println!("no match in {} corpus entries", corpus.len());
    if !undecided.is_empty() {
        println!("undecided: {}", undecided.join(", "));
    }
    Ok(1)
}

fn verify(path: &std::path::Path) -> Result<u8> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let r: report::VerdictReport =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let ok = report::replay(&r)?;
    println!(
        "{}: witness {}",
        r.property,
        if ok { "replays" } else { "does NOT replay" }
    );
    Ok(if ok { 0 } else { 1 })
}

fn list() -> Result<u8> {
    println!("properties:");
    for (name, gloss) in Property::catalog() {
        println!("  {name:<30} {gloss}");
    }
    println!("theorems:");
    for id in theorem_ids() {
        let info = theorem_info(id).expect("listed id");
        println!("  {id:<40} {}", info.statement);
    }
    println!("examples: {}", REPRO_IDS.join(", "));
    Ok(0)
}
