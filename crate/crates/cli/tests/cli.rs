use std::process::{Command, Output};

fn occulab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occulab"))
        .args(args)
        .env_remove("OCCULAB_THREADS")
        .output()
        .expect("spawn occulab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn eval_exit_probability_row() {
    let o = occulab(&["eval", "--what", "exit-prob-zero", "--y", "0", "--T", "2", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("# experiment=eval\n"));
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "what,y,x,s,T,value,tol");
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 1);
    let v: f64 = rows[0][5].parse().unwrap();
    assert!((v - 0.10797704444410905).abs() < 1e-14);
    assert_eq!(rows[0][5].split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(occulab(&["eval", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(occulab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(occulab(&["eval", "--what", "nothing"]).status.code(), Some(2));
    assert_eq!(occulab(&["eval", "--what", "exit-prob-zero", "--y", "abc"]).status.code(), Some(2));
    assert_eq!(occulab(&["experiment", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_2() {
    let o = occulab(&["eval", "--what", "asymp-leq", "--y", "1.5", "--s", "1", "--T", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain"));
}

#[test]
fn method_disagreement_exits_3() {
    let o = occulab(&["invert", "--what", "survival", "--y", "0", "--T", "1", "--method", "both", "--terms", "8"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exhausted_budget_exits_4() {
    let o = occulab(&[
        "experiment",
        "thm-main",
        "--T",
        "4",
        "--n",
        "1000",
        "--max-paths",
        "200",
        "--dt",
        "1e-2",
        "--fraction-n",
        "100",
    ]);
    assert_eq!(o.status.code(), Some(4), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn inversion_methods_agree_on_the_survival_function() {
    let o = occulab(&["invert", "--what", "survival", "--y", "0.5", "--T", "0.5,1", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = data_rows(&stdout(&o));
    assert_eq!(rows.len(), 2);
    for r in rows {
        let v: f64 = r[4].parse().unwrap();
        let other: f64 = r[8].parse().unwrap();
        assert!((v - other).abs() < 1e-8 * v);
    }
}

#[test]
fn simulation_is_byte_identical_across_thread_counts() {
    let args = [
        "simulate",
        "--event",
        "eq-zero,leq-s",
        "--y",
        "0",
        "--s",
        "0.5",
        "--T",
        "1,2",
        "--dt",
        "1e-2",
        "--n",
        "2e4",
        "--seed",
        "9",
        "--chunk",
        "1000",
        "--no-timestamp",
    ];
    let a = occulab(&args);
    let mut with_threads = args.to_vec();
    with_threads.extend(["--threads", "3"]);
    let b = occulab(&with_threads);
    let c = Command::new(env!("CARGO_BIN_EXE_occulab")).args(args).env("OCCULAB_THREADS", "2").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let rows = data_rows(&stdout(&a));
    assert_eq!(rows.len(), 4);
    assert!(stdout(&a).contains("# seed=9"));
}

#[test]
fn timestamp_is_the_only_varying_line() {
    let args = ["eval", "--what", "qsd-density", "--y", "0.3"];
    let a = stdout(&occulab(&args));
    assert!(a.lines().any(|l| l.starts_with("# timestamp=")));
    let strip = |s: &str| s.lines().filter(|l| !l.starts_with("# timestamp=")).collect::<Vec<_>>().join("\n");
    let mut quiet = args.to_vec();
    quiet.push("--no-timestamp");
    assert_eq!(strip(&a), strip(&stdout(&occulab(&quiet))));
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let dir = std::env::temp_dir().join(format!("occulab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.cfg");
    std::fs::write(&cfg, "# eval settings\nwhat = exit-prob-zero\ny = 0.5\nT = 1,2\n").unwrap();
    let path = cfg.to_str().unwrap();
    let from_file = data_rows(&stdout(&occulab(&["eval", "--config", path, "--no-timestamp"])));
    assert_eq!(from_file.len(), 2);
    assert_eq!(from_file[0][1].parse::<f64>().unwrap(), 0.5);
    let overridden = data_rows(&stdout(&occulab(&["eval", "--config", path, "--y", "-0.25", "--no-timestamp"])));
    assert_eq!(overridden[0][1].parse::<f64>().unwrap(), -0.25);
    assert_eq!(overridden.len(), 2);
    let out = dir.join("out.csv");
    let o = occulab(&["eval", "--config", path, "--output", out.to_str().unwrap(), "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(data_rows(&std::fs::read_to_string(&out).unwrap()), from_file);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn experiment_report_carries_parameters_and_verdicts() {
    let o = occulab(&[
        "experiment",
        "ratio-qsd",
        "--s",
        "0.5",
        "--T",
        "2,3,4",
        "--n",
        "2e3",
        "--dt",
        "2e-2",
        "--y",
        "0,0.5",
        "--seed",
        "42",
        "--no-timestamp",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("# experiment=ratio-qsd"));
    assert!(out.contains("# seed=42"));
    assert!(out.lines().any(|l| l.starts_with("# verdict.trend_y0=")));
}

#[test]
fn summary_format_lists_rows() {
    let o = occulab(&["laplace", "--what", "ingham-ratio", "--lambda", "2e-3", "--y", "0.9", "--format", "summary"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lambda_re"));
    assert!(out.contains("1.0010579e0"));
}

#[test]
fn selftest_reports_each_requested_criterion() {
    let ok = occulab(&["selftest", "3", "6"]);
    assert_eq!(ok.status.code(), Some(0));
    let out = stdout(&ok);
    assert!(out.contains("criterion  3 PASS"));
    assert!(out.contains("criterion  6 PASS"));
    let bad = occulab(&["selftest", "7"]);
    assert_ne!(bad.status.code(), Some(0));
    assert!(stdout(&bad).contains("criterion  7 FAIL"));
}
