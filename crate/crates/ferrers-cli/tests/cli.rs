use std::path::Path;
use std::process::{Command, Output};

fn ferrers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ferrers")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(out: &str, key: &str) -> String {
    let line = out.lines().find(|l| l.split_whitespace().next() == Some(key)).unwrap_or_else(|| panic!("no {key}"));
    line.split_whitespace().nth(1).unwrap().to_string()
}

fn plot(a: &str, start: &str, stop: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["error-plot", "--nu", "50", "--a", a, "--grid-start", start, "--grid-stop", stop];
    args.extend(["--grid-step", "0.02", "--out", out.to_str().unwrap()]);
    args.extend(extra);
    ferrers(&args)
}

struct Csv {
    meta: String,
    header: String,
    rows: Vec<Vec<f64>>,
    raw: Vec<Vec<String>>,
}

fn read_csv(path: &Path) -> (String, Csv) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let meta = lines.next().unwrap().to_string();
    let header = lines.next().unwrap().to_string();
    let raw: Vec<Vec<String>> = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    let rows = raw.iter().map(|r| r.iter().map(|v| v.parse().unwrap()).collect()).collect();
    (text, Csv { meta, header, rows, raw })
}

#[test]
fn eval_p_matches_reference() {
    let o = ferrers(&["eval", "--nu", "50", "--a", "0.5", "--x", "0.2", "--function", "P", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rel: f64 = field(&out, "rel_error").parse().unwrap();
    assert!(rel <= 1e-13, "{rel}");
    assert!(out.contains("time_reference_s"));
}

#[test]
fn eval_at_turning_point_is_finite() {
    let o = ferrers(&["eval", "--nu", "50", "--a", "0.5", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = field(&stdout(&o), "asymptotic").parse().unwrap();
    assert!(v.is_finite() && v > 0.0);
}

#[test]
fn eval_q_and_derivative_with_check() {
    for f in ["Q", "Pprime"] {
        let o = ferrers(&["eval", "--nu", "50", "--a", "0.5", "--x", "0.7", "--function", f, "--check"]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        let rel: f64 = field(&stdout(&o), "rel_error").parse().unwrap();
        assert!(rel <= 1e-12, "{f}: {rel}");
    }
}

#[test]
fn order_can_be_given_directly() {
    let by_a = ferrers(&["eval", "--nu", "50", "--a", "0.6", "--x", "0.3"]);
    let mu = field(&stdout(&by_a), "mu");
    let by_mu = ferrers(&["eval", "--nu", "50", "--mu", &mu, "--x", "0.3"]);
    assert_eq!(by_mu.status.code(), Some(0));
    let v1: f64 = field(&stdout(&by_a), "asymptotic").parse().unwrap();
    let v2: f64 = field(&stdout(&by_mu), "asymptotic").parse().unwrap();
    assert!((v1 / v2 - 1.0).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["eval", "--nu", "50", "--a", "1.2", "--x", "0.2"],
        &["eval", "--nu", "50", "--a", "0.5", "--mu", "40", "--x", "0.2"],
        &["eval", "--nu", "50", "--x", "0.2"],
        &["eval", "--nu", "50", "--a", "0.5", "--x", "0.2", "--terms", "5"],
        &["eval", "--nu", "50", "--a", "0.5", "--x", "1.5"],
        &["eval", "--nu", "fifty", "--a", "0.5", "--x", "0.2"],
        &["eval", "--nu", "50", "--a", "0.5", "--x", "0.2", "--function", "R"],
        &["selftest", "--filter", "no-such-check"],
    ];
    for args in cases {
        assert_eq!(ferrers(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn error_plot_meets_accuracy_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a05.csv");
    let o = plot("0.5", "0", "0.9", &path, &[]);
    assert_eq!(o.status.code(), Some(0));
    let (text, csv) = read_csv(&path);
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    assert!(csv.meta.starts_with("# meta: nu=5.0"));
    for key in ["a=", "mu=", "terms=4", "digits=40"] {
        assert!(csv.meta.contains(key), "{key}");
    }
    assert_eq!(csv.header, "x,omega,asymptotic,reference,envelope");
    assert_eq!(csv.rows.len(), 46);
    assert!(csv.rows.windows(2).all(|w| w[0][0] < w[1][0]));
    assert!((csv.rows[45][0] - 0.9).abs() < 1e-30);
    assert!(csv.rows.iter().all(|r| r[1] <= -13.0));
    // digits = working precision: 40 significant digits in every field
    for field in csv.raw.iter().flatten() {
        let mantissa = field.trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.replace('.', "").len(), 40, "{field}");
        assert!(field.contains('e'));
    }
}

#[test]
fn error_plot_uses_p_as_envelope_without_q_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a01.csv");
    assert_eq!(plot("0.1", "0", "0.9", &path, &[]).status.code(), Some(0));
    let (_, csv) = read_csv(&path);
    assert!(csv.rows.iter().all(|r| r[1] <= -13.0));
    assert!(csv.raw.iter().all(|r| r[3] == r[4]));
}

#[test]
fn empty_grid_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    assert_eq!(plot("0.5", "0.5", "0.4", &path, &[]).status.code(), Some(0));
    let (text, csv) = read_csv(&path);
    assert!(csv.rows.is_empty());
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn error_plot_is_deterministic_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.csv");
    let two = dir.path().join("two.csv");
    let par = dir.path().join("par.csv");
    assert_eq!(plot("0.5", "0.3", "0.7", &one, &[]).status.code(), Some(0));
    assert_eq!(plot("0.5", "0.3", "0.7", &two, &[]).status.code(), Some(0));
    assert_eq!(plot("0.5", "0.3", "0.7", &par, &["--jobs", "3"]).status.code(), Some(0));
    let a = std::fs::read(&one).unwrap();
    assert_eq!(a, std::fs::read(&two).unwrap());
    assert_eq!(a, std::fs::read(&par).unwrap());
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    assert_eq!(plot("0.5", "0", "0.1", &path, &[]).status.code(), Some(3));
}

#[test]
fn nonpositive_step_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.csv");
    let o = ferrers(&[
        "error-plot",
        "--nu",
        "50",
        "--a",
        "0.5",
        "--grid-start",
        "0",
        "--grid-stop",
        "0.5",
        "--grid-step",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes_by_default() {
    let o = ferrers(&["selftest"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    for module in ["numerics.", "tpgeom.", "coeffs.", "pcf.", "legendre.", "oracle."] {
        assert!(out.contains(module), "{module}");
    }
    assert!(!out.contains("FAIL"));
}

#[test]
fn selftest_at_ten_digits_trips_the_pcf_guard() {
    let o = ferrers(&["selftest", "--digits", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let failed = out.lines().find(|l| l.starts_with("failed:")).unwrap();
    assert!(failed.contains("pcf.cancellation_guard"), "{out}");
    assert!(out.contains("precision exhausted"));
}

#[test]
fn selftest_filter_restricts_checks() {
    let o = ferrers(&["selftest", "--filter", "coeffs"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let checks: Vec<&str> = out.lines().filter(|l| l.contains("PASS") || l.contains("FAIL")).collect();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|l| l.starts_with("coeffs.")));
}

#[test]
fn coeffs_dump_is_exact_text() {
    let o = ferrers(&["coeffs", "--table", "e", "--max-s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "1 1 0 3/8"));
    assert!(out.lines().all(|l| l.split(' ').count() == 4 && l.contains('/')));
    let pcf = stdout(&ferrers(&["coeffs", "--table", "pcf-etilde", "--max-s", "3"]));
    assert!(pcf.lines().any(|l| l.starts_with("3 ")));
    assert_eq!(ferrers(&["coeffs", "--max-s", "1"]).status.code(), Some(2));
}
