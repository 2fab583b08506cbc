use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skewring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn skewring")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn rings() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../rings")
}

fn ring(name: &str) -> String {
    rings().join(name).to_string_lossy().into_owned()
}

fn temp_doc(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skewring-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn check_exit_codes() {
    let swap = run(&["check", &ring("swap.json"), "alpha-almost-armendariz"]);
    assert_eq!(swap.status.code(), Some(1), "{}", stdout(&swap));
    assert!(stdout(&swap).contains("offending product (0,1)"));

    let z3 = temp_doc("z3.json", r#"{"ring": {"kind": "Zn", "n": 3}}"#);
    let o = run(&["check", z3.to_str().unwrap(), "armendariz", "-d", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let m2 = run(&[
        "check",
        &ring("m2.json"),
        "alpha-skew-almost-armendariz",
        "-d",
        "1",
    ]);
    assert_eq!(m2.status.code(), Some(1), "{}", stdout(&m2));

    let gf4 = run(&["check", &ring("gf4.json")]);
    assert_eq!(gf4.status.code(), Some(0), "{}", stdout(&gf4));
}

#[test]
fn randomized_budget_gives_unknown() {
    let o = run(&[
        "check",
        &ring("z4.json"),
        "almost-armendariz",
        "-d",
        "3",
        "--cap",
        "10",
        "--samples",
        "50",
    ]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn machine_reports_replay() {
    let o = run(&["check", &ring("swap.json"), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["format"], "report-v1");
    assert_eq!(v["outcome"], "fails");
    assert_eq!(v["witness"]["kind"], "polynomials");
    let path = temp_doc("report.json", &text);
    let ok = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    // A tampered witness must not replay.
    let mut v = v;
    v["witness"]["g"] = serde_json::json!([0, 0]);
    let path = temp_doc("tampered.json", &v.to_string());
    let bad = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1), "{}", stdout(&bad));
}

#[test]
fn malformed_input_is_rejected() {
    let missing = temp_doc("missing.json", r#"{"ring": {"kind": "Zn"}}"#);
    assert_eq!(
        run(&["build", missing.to_str().unwrap()]).status.code(),
        Some(65)
    );
    let extra = temp_doc(
        "extra.json",
        r#"{"ring": {"kind": "Zn", "n": 4, "bogus": true}}"#,
    );
    assert_eq!(
        run(&["build", extra.to_str().unwrap()]).status.code(),
        Some(65)
    );
    let bad_endo = temp_doc(
        "endo.json",
        r#"{"ring": {"kind": "Zn", "n": 4}, "endo": [0, 3, 2, 1]}"#,
    );
    assert_eq!(
        run(&["check", bad_endo.to_str().unwrap(), "reduced"])
            .status
            .code(),
        Some(65)
    );
    assert_eq!(
        run(&["check", &ring("z4.json"), "mccoy"]).status.code(),
        Some(64)
    );
    assert_eq!(run(&["repro", "nope"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn repro_matches_golden_output() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for id in ["swap-product", "matrix-skew", "almost-not-rigid"] {
        let o = run(&["repro", id]);
        assert_eq!(o.status.code(), Some(0), "{id}");
        let want = fs::read_to_string(golden.join(format!("{id}.txt"))).unwrap();
        assert_eq!(stdout(&o), want, "{id}");
    }
}

#[test]
fn search_finds_almost_but_not_rigid() {
    let o = run(&[
        "search",
        "alpha-almost-armendariz & !alpha-rigid",
        "-d",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("first match: (Z4, id)"),
        "{}",
        stdout(&o)
    );
    let flag = run(&[
        "search",
        "alpha-almost-armendariz",
        "--negate",
        "alpha-rigid",
        "-d",
        "2",
    ]);
    assert_eq!(stdout(&flag), stdout(&o));
    let none = run(&["search", "reduced & !reversible", "--filter", "Z"]);
    assert_eq!(none.status.code(), Some(1), "{}", stdout(&none));
}

#[test]
fn build_reports_invariants() {
    let z4 = stdout(&run(&["build", &ring("z4.json")]));
    assert!(z4.contains("size 4, N* = {0, 2}"), "{z4}");
    let swap = stdout(&run(&["build", &ring("swap.json")]));
    assert!(swap.contains("4 unital endomorphisms"), "{swap}");
    let rad = run(&["radical", "--oracle", &ring("u2-swap.json")]);
    assert_eq!(rad.status.code(), Some(0));
    assert!(stdout(&rad).contains("|N*| = 4"));
}

#[test]
fn theorem_rows_on_a_filtered_corpus() {
    let o = run(&[
        "theorem",
        "compatible-zero-powers",
        "--filter",
        "Z2",
        "--format",
        "machine",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "conformance");
    assert_eq!(v["summary"]["red_flags"], 0);
    assert!(v["summary"]["rows"].as_u64().unwrap() > 0);
    assert_eq!(run(&["theorem", "no-such-theorem"]).status.code(), Some(64));
}
