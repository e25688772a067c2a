use krstrata_cli::report::{PointSummary, ReportFile};
use krstrata_cli::run;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["krstrata"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn enumerate_json_round_trips() {
    for n in ["1", "2", "3"] {
        let (code, out, _) = run_args(&["enumerate", "--n", n]);
        assert_eq!(code, 0);
        let file: ReportFile = serde_json::from_str(&out).unwrap();
        assert!(file.aggregates_consistent());
        assert_eq!(serde_json::to_string_pretty(&file).unwrap() + "\n", out);
    }
    let (_, out, _) = run_args(&["enumerate", "--n", "1", "--format", "json"]);
    let file: ReportFile = serde_json::from_str(&out).unwrap();
    assert_eq!(file.elements.len(), 3);
    assert_eq!(serde_json::to_value(&file.total_polynomial).unwrap(), serde_json::json!([1, 2]));
    assert_eq!(file.group, "GSp(2)");
}

#[test]
fn tampered_report_is_detected() {
    let (_, out, _) = run_args(&["enumerate", "--n", "2"]);
    let mut file: ReportFile = serde_json::from_str(&out).unwrap();
    file.elements[0].length += 1;
    assert!(!file.aggregates_consistent());
}

#[test]
fn enumerate_csv_rows() {
    let (code, out, _) = run_args(&["enumerate", "--n", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.records().count(), 13);
}

#[test]
fn exit_codes() {
    assert_eq!(run_args(&["enumerate", "--n", "99"]).0, 3);
    assert_eq!(run_args(&["enumerate", "--n", "0"]).0, 2);
    assert_eq!(run_args(&["enumerate"]).0, 2);
    assert_eq!(run_args(&["frobnicate"]).0, 2);
    assert_eq!(run_args(&["trace", "--n", "1", "--q", "6"]).0, 2);
    assert_eq!(run_args(&["trace", "--n", "4", "--q", "2"]).0, 3);
    assert_eq!(run_args(&["points", "--n", "2", "--q", "5"]).0, 3);
    assert_eq!(run_args(&["points", "--n", "1", "--q", "4"]).0, 2);
    assert_eq!(run_args(&["verify", "--n", "1", "--checks", "bogus"]).0, 2);
    assert_eq!(run_args(&["verify", "--n", "3", "--checks", "iwahori"]).0, 3);
    assert_eq!(run_args(&["hasse", "--n", "1", "--format", "json"]).0, 2);
    assert_eq!(run_args(&["--help"]).0, 0);
}

#[test]
fn verify_lines() {
    let (code, out, _) = run_args(&["verify", "--n", "1", "--q", "2"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("PASS ")));
    assert_eq!(out.lines().count(), 10);
    let (code, out, _) = run_args(&["verify", "--n", "2", "--q", "3", "--seed", "7", "--checks", "points,iwahori"]);
    assert_eq!(code, 0);
    assert_eq!(out, "PASS points (163)\nPASS iwahori (1300)\n");
    let (code, out, _) = run_args(&["verify", "--n", "3", "--checks", "p-rank,hecke"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
}

#[test]
fn trace_tables() {
    let (code, out, _) = run_args(&["trace", "--n", "1", "--q", "2", "--m", "1"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    for row in &rows {
        if &row[1] == "1" {
            assert_eq!(&row[3], "1");
        }
    }
    let (_, out, _) = run_args(&["trace", "--n", "2", "--q", "2", "--m", "1"]);
    assert_eq!(out.lines().count(), 14);
    let (_, out, _) = run_args(&["trace", "--n", "2", "--q", "2", "--r", "2"]);
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn points_and_hasse_files() {
    let (code, out, _) = run_args(&["points", "--n", "1", "--q", "2"]);
    assert_eq!(code, 0);
    let summary: PointSummary = serde_json::from_str(&out).unwrap();
    assert_eq!(summary.total, 5);
    assert_eq!(summary.by_p_rank, [(0, 1), (1, 4)].into_iter().collect());
    assert!(summary.matches_polynomial);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kr2.dot");
    let (code, out, _) = run_args(&["hasse", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph KR {"));
    assert_eq!(dot.matches("label=").count(), 13);
    // no temporary files left behind
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}
