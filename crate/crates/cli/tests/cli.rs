use std::path::Path;
use std::process::{Command, Output};

fn fairassort(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairassort")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = fairassort(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

fn gen_one(dir: &Path, seed: &str) -> String {
    let d = dir.to_str().unwrap();
    ok(&["gen", "--preset", "price-sensitive", "--instances", "1", "--seed", seed, "--out-dir", d]);
    dir.join("instance-000.json").to_str().unwrap().to_string()
}

#[test]
fn solve_is_fair_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_one(dir.path(), "11");
    let args = ["solve", "--instance", &f, "--delta", "0", "--method", "colgen", "--oracle", "half", "--no-timing"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let rep = json(&a);
    assert_eq!(rep["fairness"]["pass"], true);
    assert_eq!(rep["contract"]["satisfied"], true);
    let support = rep["support_size"].as_u64().unwrap();
    assert!((1..=91).contains(&support));
}

#[test]
fn oracle_at_zero_matches_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_one(dir.path(), "2");
    let exact = json(&ok(&["oracle", "--instance", &f, "--z", "zero", "--method", "exact"]));
    let brute = json(&ok(&["oracle", "--instance", &f, "--z", "zero", "--method", "brute"]));
    let (e, b) = (exact["value"].as_f64().unwrap(), brute["value"].as_f64().unwrap());
    assert!((e - b).abs() < 1e-9, "{e} vs {b}");
    assert_eq!(exact["set"], brute["set"]);
}

#[test]
fn oracle_reads_dual_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = gen_one(dir.path(), "5");
    let mut rows = vec![vec![0.0; 10]; 10];
    rows[0][1] = 0.4;
    rows[3][2] = 0.1;
    let z = dir.path().join("z.json");
    std::fs::write(&z, serde_json::to_string(&rows).unwrap()).unwrap();
    let half = json(&ok(&["oracle", "--instance", &f, "--z", z.to_str().unwrap(), "--method", "half"]));
    let brute = json(&ok(&["oracle", "--instance", &f, "--z", z.to_str().unwrap(), "--method", "brute"]));
    let (h, b) = (half["value"].as_f64().unwrap(), brute["value"].as_f64().unwrap());
    assert!(h >= 0.5 * b - 1e-12 && h <= b + 1e-12, "{h} vs {b}");

    std::fs::write(&z, "[[0.0]]").unwrap();
    assert_eq!(fairassort(&["oracle", "--instance", &f, "--z", z.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn sweep_writes_stable_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let js = dir.path().join("s.json");
    let args = [
        "sweep", "--preset", "price-sensitive", "--beta", "-0.1", "--deltas", "0,0.2,0.4,0.6,0.8,1.0",
        "--instances", "4", "--seed", "7", "--oracle", "half", "--no-timing",
        "--out", csv.to_str().unwrap(), "--json", js.to_str().unwrap(),
    ];
    let table = ok(&args);
    assert_eq!(table.lines().count(), 7);
    let first = std::fs::read_to_string(&csv).unwrap();
    let first_json = std::fs::read(&js).unwrap();
    ok(&args);
    assert_eq!(first, std::fs::read_to_string(&csv).unwrap());
    assert_eq!(first_json, std::fs::read(&js).unwrap());

    let mut lines = first.lines();
    assert_eq!(lines.next(), Some("delta,objective,unconstrained,pof,support,time"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.windows(2).all(|w| w[1][1] >= w[0][1] - 1e-9));
    assert!(rows.iter().all(|r| (-1e-9..=1.0 + 1e-9).contains(&r[3]) && r[5] == 0.0));

    let report = ok(&["report", "--sweep", js.to_str().unwrap()]);
    assert_eq!(report, table);
}

#[test]
fn ingest_ratings_file() {
    let dir = tempfile::tempdir().unwrap();
    let ratings = dir.path().join("r.tsv");
    let text: String = (1..=6).flat_map(|i| (1..=5).map(move |u| format!("{u}\t{i}\t{}\t0\n", 3 + i % 3))).collect();
    std::fs::write(&ratings, text).unwrap();
    let out = dir.path().join("inst.json");
    ok(&["ingest", "--ratings", ratings.to_str().unwrap(), "--delimiter", "tab", "-k", "2", "--top-n", "4",
        "--out", out.to_str().unwrap()]);
    let inst = json(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(inst["n"], 4);
    assert_eq!(inst["K"], 2);
    assert_eq!(inst["items"][0]["w"].as_f64().unwrap(), 5.0 / 20.0);

    std::fs::write(&ratings, "1\t1\t4\n1\tx\t4\n").unwrap();
    let bad = fairassort(&["ingest", "--ratings", ratings.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
}

#[test]
fn stand_in_ingest_solves() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("inst.json");
    ok(&["ingest", "--stand-in", "3", "--out", out.to_str().unwrap()]);
    let rep = json(&ok(&["solve", "--instance", out.to_str().unwrap(), "--no-timing"]));
    assert_eq!(rep["oracle"], "fptas:0.1");
    assert_eq!(rep["fairness"]["pass"], true);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(fairassort(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(fairassort(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(fairassort(&["solve", "--instance", "/no/such/file.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let f = gen_one(dir.path(), "1");
    let out = fairassort(&["solve", "--instance", &f, "--oracle", "fptas"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(fairassort(&["--help"]).status.success());
}
