use std::fs;
use std::path::Path;

use frobmult::case::CORPUS_DIR;
use frobmult::cli::{run_with, EXIT_OK, EXIT_USAGE};
use frobmult::report::{Report, Status};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("frobmult").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let (code, out, _) = run(&["--out", json.to_str().unwrap(), "verify", "--case", "diagonal.case"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("holds-strict"));
    let report = Report::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    let row = &report.rows[0];
    assert_eq!(row.n, Some(3));
    assert_eq!(row.e_a.as_ref().unwrap().to_string(), "1/1");
    assert_eq!(row.e_j.as_ref().unwrap().to_string(), "6/1");
    assert!(report.generated_at.is_some());
}

#[test]
fn nu_prints_table() {
    let (code, out, _) = run(&["nu", "--case", "diagonal", "--emax", "3"]);
    assert_eq!(code, EXIT_OK);
    for line in ["e,q,nu,ratio", "1,2,8,4/1", "2,4,18,9/2", "3,8,38,19/4"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in\n{out}");
    }
}

#[test]
fn batch_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for name in ["one.json", "two.json"] {
        let path = dir.path().join(name);
        let (code, _, _) = run(&["--no-timestamp", "--out", path.to_str().unwrap(), "batch", CORPUS_DIR]);
        assert_eq!(code, EXIT_OK);
        reports.push(fs::read(&path).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let report = Report::from_json(std::str::from_utf8(&reports[0]).unwrap()).unwrap();
    assert!(report.generated_at.is_none());
    assert_eq!(report.count(Status::Ok), report.rows.len());
}

#[test]
fn csv_summary_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let (code, _, _) = run(&["--csv", csv.to_str().unwrap(), "verify", "--case", "veronese"]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("case_id,op,status,d,e_a,e_J,N,verdict,proportional,error"));
    assert_eq!(lines.next(), Some("veronese,verify,ok,2,3/1,3/1,0,holds-with-equality,true,"));
}

#[test]
fn empty_directory_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("no cases found"));
}

fn copy_case(name: &str, to: &Path) {
    fs::copy(Path::new(CORPUS_DIR).join(name), to.join(name)).unwrap();
}

#[test]
fn malformed_case_does_not_stop_batch() {
    let dir = tempfile::tempdir().unwrap();
    copy_case("diagonal.case", dir.path());
    copy_case("cusp.case", dir.path());
    fs::write(dir.path().join("broken.case"), "{\"field\": {\"char\": 2}, \"vars\": [").unwrap();
    let json = dir.path().join("r.json");
    let (code, _, _) = run(&["--no-timestamp", "--out", json.to_str().unwrap(), "batch", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    let report = Report::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    let broken: Vec<_> = report.rows.iter().filter(|r| r.case_id == "broken").collect();
    assert_eq!(broken.len(), 1);
    assert_eq!(broken[0].status, Status::Error);
    assert!(broken[0].error.as_deref().unwrap().starts_with("case broken, op load:"));
    assert!(report.rows.iter().filter(|r| r.case_id != "broken").all(|r| r.status == Status::Ok));
    assert!(report.rows.iter().any(|r| r.case_id == "cusp"));
}

#[test]
fn check_describes_ring() {
    let (code, out, _) = run(&["check", "--case", "veronese"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("F_2"), "{out}");
}

#[test]
fn kernel_of_cusp_parametrization() {
    let (code, out, _) = run(&["kernel", "--vars", "t", "--images", "t^2,t^3", "--names", "a,b"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("a^3") && out.contains("b^2"), "{out}");
}

#[test]
fn demo_prints_bracket() {
    let (code, out, _) = run(&["demo-veronese"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("fjn = 5/3, pt estimate = 2"));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["nu"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "--case", "no-such-case"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}
