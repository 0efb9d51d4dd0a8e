use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_slice-cauchy");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env("SLICE_CAUCHY_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows as field vectors, keyed by the header.
fn rows(csv: &str) -> Vec<std::collections::HashMap<String, String>> {
    let body: String = csv.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    r.records()
        .map(|rec| header.iter().cloned().zip(rec.unwrap().iter().map(str::to_string)).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn verify_cauchy_square_on_both_algebras() {
    for algebra in ["quaternion", "clifford:3"] {
        let point = if algebra == "quaternion" { "0.3+0.2i" } else { "0.3+0.2e1" };
        let o = run(&[
            "verify-cauchy", "--algebra", algebra, "--function", "poly:[0,0,1]", "--points", point,
            "--grid", "32,32,8,8",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let r = rows(&stdout(&o));
        assert_eq!(r.len(), 1);
        assert!(num(&r[0]["rel_error"]) < 1e-5);
        assert_eq!(r[0]["pass"], "true");
    }
}

#[test]
fn constant_is_machine_exact() {
    let o = run(&["verify-cauchy", "--function", "poly:[1.5-2j]", "--grid", "64,16,4,4"]);
    assert_eq!(o.status.code(), Some(0));
    for r in rows(&stdout(&o)) {
        assert!(num(&r["rel_error"]) < 1e-11, "{}", r["rel_error"]);
    }
}

#[test]
fn failing_rows_set_the_exit_code() {
    let o = run(&["verify-cauchy", "--function", "poly:[0,0,0,1]", "--grid", "4,2,4,4", "--tol", "1e-14"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(",false,"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("table.csv");
    std::fs::write(
        &cfg,
        "# boundary-only run\nalgebra = quaternion\ngis = full\nfunction = poly:[1,-2,0,1]\ngrid = 2,2,2,2\npoints = 0.1+0.2i; -0.2+0.1j+0.1k\n",
    )
    .unwrap();
    let o = run(&[
        "verify-cauchy", "--config", cfg.to_str().unwrap(), "--grid", "64,16,8,8", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("# grid=64,16,8,8,16"));
    assert!(text.contains("# function=poly:[1,-2,0,1]"));
    assert_eq!(rows(&text).len(), 2);
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "algebra = quaternion\npoints = 0.1 + 0.2x\n").unwrap();
    let o = run(&["verify-cauchy", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.cfg:2:19:"), "{err}");

    let o = run(&["verify-cauchy", "--points", "1 + + i"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--points: column"));

    let o = run(&["verify-cauchy", "--gis", "paravector"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["verify-cauchy", "--points", "0.9+0.9i"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not interior"));
}

#[test]
fn jump_runs_for_the_remark_data() {
    let o = run(&["verify-jump", "--gis", "plane:i"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(rows(&s).len(), 8);
    assert!(s.contains("# extends=true"));

    let o = run(&["verify-jump", "--gis", "plane:j"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for r in rows(&s) {
        assert!(num(&r["abs_error"]) < 5e-4);
    }
    assert!(s.contains("# extends=false"));

    let o = run(&["verify-jump", "--gis", "full", "--function", "poly:[2+i]", "--grid", "64,8,2,2"]);
    assert_eq!(o.status.code(), Some(0));
    for r in rows(&stdout(&o)) {
        assert!(num(&r["abs_error"]) < 1e-10);
    }
}

#[test]
fn extension_test_exit_codes() {
    assert_eq!(run(&["extension-test", "--gis", "plane:i"]).status.code(), Some(0));
    let o = run(&["extension-test", "--gis", "plane:j"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("# extends=false"));
}

#[test]
fn lemma_suite_and_kernel_eval() {
    let o = run(&["lemma-suite", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let integral = r.iter().find(|r| r["label"] == "integral" && r["point"] == "n=2").unwrap();
    assert!(num(&integral["abs_error"]) < 1e-8);

    let o = run(&["kernel-eval", "--points", "0|i"]);
    assert_eq!(o.status.code(), Some(0));
    let r = rows(&stdout(&o));
    let v: Vec<f64> = r[0]["computed"].trim_matches(['[', ']']).split(' ').map(num).collect();
    assert!((v[1] + 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-16 * 4.0);
}

#[test]
fn output_is_reproducible_across_thread_counts() {
    let args = ["verify-cauchy", "--function", "stem:normsq", "--grid", "16,4,12,12,4", "--seed", "3"];
    let a = Command::new(BIN).args(args).env("SLICE_CAUCHY_THREADS", "1").output().unwrap();
    let b = Command::new(BIN).args(args).env("SLICE_CAUCHY_THREADS", "4").output().unwrap();
    assert_eq!(a.status.code(), b.status.code());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(BIN).args(args).env("SLICE_CAUCHY_THREADS", "many").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
