use std::path::PathBuf;
use std::process::{Command, Output};

use qtcatalan::measure::Histogram2D;
use qtcatalan::poly::PolynomialDocument;
use qtcatalan::QtPolynomial;

fn qtcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtcat"))
        .args(args)
        .env_remove("CATALAN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qtcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn poly_json_parses_back() {
    let o = qtcat(&["poly", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["definitions_agree"], true);
    assert_eq!(v["symmetric"], true);
    let doc: PolynomialDocument = serde_json::from_value(v["dinv_area"].clone()).unwrap();
    let p = QtPolynomial::from_document(&doc).unwrap();
    assert_eq!(p.to_string(), "q + t");

    let o = qtcat(&["poly", "--n", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v["dinv_area"]["terms"],
        serde_json::json!([{"q": 0, "t": 0, "c": "1"}])
    );
}

#[test]
fn poly_csv_file_parses_back() {
    let path = scratch("poly.csv");
    let o = qtcat(&[
        "poly",
        "--n",
        "4",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("value_at_1_1=14"));
    let p = QtPolynomial::from_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(p.eval_one().to_string(), "14");
    assert!(p.is_symmetric());
}

#[test]
fn budget_exit_code() {
    let o = qtcat(&["poly", "--n", "6", "--m", "3", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn usage_exit_codes() {
    assert_eq!(qtcat(&["converge", "--n", "4"]).status.code(), Some(2));
    assert_eq!(qtcat(&["poly", "--n", "0"]).status.code(), Some(2));
    assert_eq!(
        qtcat(&["measure", "--n", "4", "--grid", "60"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qtcat(&["measure", "--n", "4", "--map", "area"])
            .status
            .code(),
        Some(2)
    );
    let o = qtcat(&["stats", "0,2,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a_1 <= a_0 + 1 violated"));
}

#[test]
fn stats_worked_example() {
    let o = qtcat(&["stats", "0,0.6,1.2,0.5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["area"], "23/10");
    assert_eq!(v["dinv"], "5/2");
    assert_eq!(v["bounce"], "9/4");
    assert_eq!(v["transform"]["bounce"], "23/10");
}

#[test]
fn measure_histogram_and_summary() {
    let path = scratch("n4.csv");
    let o = qtcat(&[
        "measure",
        "--n",
        "4",
        "--samples",
        "100000",
        "--grid",
        "30x30",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["volume"], "8/3");
    assert!((summary["binned_weight"].as_f64().unwrap() - 8.0 / 3.0).abs() < 1e-9);
    assert!(summary["l1_to_exact"].as_f64().unwrap() < 0.2);
    let h = Histogram2D::from_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((h.cells_x, h.cells_y), (30, 30));
    assert!((h.binned_weight() - 8.0 / 3.0).abs() < 1e-9);
}

#[test]
fn seed_from_environment() {
    let args = ["measure", "--n", "3", "--samples", "5000", "--grid", "6x6"];
    let flag = {
        let mut a = args.to_vec();
        a.extend(["--seed", "17"]);
        qtcat(&a)
    };
    let env = Command::new(env!("CARGO_BIN_EXE_qtcat"))
        .args(args)
        .env("CATALAN_SEED", "17")
        .output()
        .unwrap();
    let other = qtcat(&args);
    assert_eq!(flag.stdout, env.stdout);
    assert_ne!(flag.stdout, other.stdout);
}

#[test]
fn converge_report_schema() {
    let o = qtcat(&["converge", "--n", "1", "--m-list", "1,4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["distances"], serde_json::json!([0.0, 0.0]));
    assert_eq!(v["total_weights"], serde_json::json!(["1", "1"]));
    for key in ["n", "m_list", "seed", "grid"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_fast_passes() {
    let o = qtcat(&["verify", "fast"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS mdyck_example_statistics"));
    assert!(!stdout(&o).contains("FAIL"));
}
