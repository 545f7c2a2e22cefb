//! End-to-end runs of the `pabraid` binary.

use std::process::{Command, Output};

use pabraid_cli::report::*;
use pabraid_cli::RunManifest;
use serde::de::DeserializeOwned;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pabraid")).args(args).env_remove("PABRAID_TOL").output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Runs with `--json`, parses the report and checks that re-serializing
/// gives the same document.
fn json<T: DeserializeOwned + serde::Serialize>(args: &[&str]) -> T {
    let mut all = args.to_vec();
    all.push("--json");
    let text = stdout(&all);
    let report: T = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}\n{text}"));
    let again: serde_json::Value = serde_json::to_value(&report).unwrap();
    assert_eq!(again, serde_json::from_str::<serde_json::Value>(&text).unwrap(), "{args:?} round trip");
    report
}

#[test]
fn tribraid_reports_the_exact_dilatation() {
    let text = stdout(&["tribraid", "--word", "-1 2 2"]);
    assert!(text.contains("trace   4"), "{text}");
    assert!(text.contains("2 + √3"), "{text}");
    let r: TribraidReport = json(&["tribraid", "--word", "-1 2 2", "--with-entropy"]);
    assert_eq!(r.trace, "4");
    assert!((r.estimate.unwrap().value - r.log_lambda).abs() < 1e-9);
}

#[test]
fn braid_info_reads_permutation_and_fixed_points() {
    let text = stdout(&["braid", "info", "--word", "1 1 -2", "--degree", "3"]);
    assert!(text.contains("permutation       (1)(2 3)"), "{text}");
    assert!(text.contains("fixed points      1\n"), "{text}");
    let info: BraidInfo = json(&["braid", "info", "--word", "1 1 -2", "--degree", "3"]);
    assert_eq!(info.fixed_points, vec![1]);
    assert_eq!(info.linking.len(), 1);
    let skew: BraidInfo = json(&["braid", "info", "--word", "B6 1 2 3 3 4 5"]);
    assert!(skew.skew_palindromic.word_level);
}

#[test]
fn braid_equal_and_standard_forms() {
    let eq: EqualityReport = json(&["braid", "equal", "--word", "1 2 1", "--other", "2 1 2"]);
    assert!(eq.verdict.is_equal());
    let ne: EqualityReport = json(&["braid", "equal", "--word", "1 1", "--other", "2 2", "--degree", "3"]);
    assert!(!ne.verdict.is_equal());
    let sf: StandardFormReport = json(&["braid", "standard", "--blocks", "-1 | -1", "--program", "5"]);
    assert_eq!(sf.class.map(|c| (c.x, c.y)), Some((1, 5)));
    assert_eq!(sf.word.degree(), 2 + 2 * 5 + 1);
    let g: GammaReport = json(&["braid", "gamma", "--blocks", "-1 | -1", "--with-entropy"]);
    assert_eq!(g.gamma.degree(), 5);
    assert!(g.estimate.unwrap().converged);
}

#[test]
fn cone_commands() {
    let n: NormReport = json(&["cone", "norm", "--n", "3", "--u", "2", "--x", "2", "--y", "3"]);
    assert_eq!(n.norm, 10);
    let f: FractionReport = json(&["cone", "fraction", "--x", "14", "--y", "5"]);
    assert_eq!(f.program.entries(), &[0, 2, 1, 3, 1]);
    let c: FractionReport = json(&["cone", "class", "--program", "[2,1,4]"]);
    assert_eq!((c.class.x, c.class.y), (5, 14));
    let t: ConeTableReport = json(&["cone", "table", "--blocks", "-1 | -1", "--max", "3"]);
    assert_eq!(t.rows.len(), 7);
    assert!(t.rows.iter().all(|r| r.estimate.converged && r.degree as i64 == r.norm + 1));
}

#[test]
fn family_csv_has_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("xi.csv");
    stdout(&["family", "xi", "--p", "1..3", "--with-entropy", "--csv", path.to_str().unwrap()]);
    let mut reader = csv::Reader::from_path(&path).unwrap();
    let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&headers[..4], &["p", "degree", "ent", "Ent"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][1], "6");
    let fam: FamilyReport = json(&["family", "o", "--p", "1,2"]);
    assert_eq!(fam.rows[0].companion.as_ref().unwrap().degree(), 8);
}

#[test]
fn seeded_families_need_seeds() {
    let z: FamilyReport = json(&["family", "z", "--p", "2"]);
    assert_eq!(z.rows[0].degree, 8);
    let out = run(&["family", "beta", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let beta: FamilyReport = json(&["family", "beta", "--p", "1", "--seed-blocks", "-1 | -1"]);
    assert_eq!(beta.rows[0].degree, 7);
}

#[test]
fn prongs_and_spin() {
    let p: ProngReport = json(&["prongs", "--p", "1..10"]);
    for r in &p.rows {
        assert_eq!((r.axis_prongs, r.strand_prongs), (r.p + 1, r.p + 3));
    }
    let s: SpinReport = json(&["spin", "check", "--family", "o"]);
    assert_eq!(s.rows.len(), 4);
    assert!(s.rows.iter().all(|r| r.preserves));
    let g: SpinReport = json(&["spin", "generators", "--genus", "3"]);
    assert!(g.rows.iter().all(|r| r.preserves));
    let w: SpinReport = json(&["spin", "check", "--word", "4", "--degree", "7", "--form", "odd"]);
    assert!(!w.rows[0].preserves);
}

#[test]
fn reproduce_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = dir.path().join("m1.json");
    let m2 = dir.path().join("m2.json");
    let a = stdout(&["reproduce", "thm1.1", "--p", "1..4", "--manifest", m1.to_str().unwrap()]);
    let b = stdout(&["reproduce", "z-limit", "--p", "1..4", "--manifest", m2.to_str().unwrap()]);
    assert_eq!(a, b);
    let (m1, m2) = (pabraid_cli::read_manifest(&m1).unwrap(), pabraid_cli::read_manifest(&m2).unwrap());
    // arguments differ only in the manifest path itself
    assert_eq!(m1.outputs, m2.outputs);
    assert_eq!(m1.tolerance, m2.tolerance);
    assert_eq!(m2.command, "reproduce z-limit");
    let report: LimitReport = json(&["reproduce", "z-limit", "--p", "1..4"]);
    assert!(report.rows.windows(2).all(|w| w[1].gap < w[0].gap));
    let out_dir = dir.path().join("run");
    stdout(&["reproduce", "beta-limit", "--p", "1..3", "--out", out_dir.to_str().unwrap()]);
    let manifest: RunManifest = pabraid_cli::read_manifest(&out_dir.join("beta_limit.manifest.json")).unwrap();
    let csv_bytes = std::fs::read(out_dir.join("beta_limit.csv")).unwrap();
    let digest = manifest.outputs.iter().find(|o| o.name.ends_with("beta_limit.csv")).unwrap();
    assert_eq!(digest.bytes, csv_bytes.len());
}

#[test]
fn tolerance_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let out = Command::new(env!("CARGO_BIN_EXE_pabraid"))
        .args(["entropy", "--word", "-1 2", "--manifest", m.to_str().unwrap()])
        .env("PABRAID_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(pabraid_cli::read_manifest(&m).unwrap().tolerance.tol, 1e-6);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["braid", "info", "--word", "1 x"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["entropy", "--word", "1", "--tol", "-1"]).status.code(), Some(2));
    // linear growth of a curve under a Dehn twist never settles
    let out = run(&["entropy", "--word", "1 1", "--degree", "3", "--seed-pill", "2,3", "--max-iter", "30"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    let list: Vec<Diagnostic> = serde_json::from_value(diag["not_converged"].clone()).unwrap();
    assert_eq!(list.len(), 1);
    assert!(!list[0].estimate.converged);
    assert!(!out.stdout.is_empty());
}
