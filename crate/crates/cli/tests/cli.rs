use std::process::{Command, Output};

fn frac_kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frac-kit"))
        .args(args)
        .env_remove("FRAC_KIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_field(o: &Output, key: &str) -> f64 {
    let v: serde_json::Value = serde_json::from_str(stdout(o).trim()).unwrap();
    v[key].as_f64().unwrap()
}

#[test]
fn eval_eigenfunction() {
    let o = frac_kit(&["eval", "--op", "marchaud", "--alpha", "0.5", "--side", "plus", "--function", "exp_lambda:1", "--x", "0"]);
    assert!(o.status.success());
    assert!((json_field(&o, "value") - 1.0).abs() < 1e-9);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["op"], "marchaud");
    assert_eq!(v["params"]["function"], "exp_lambda:1");
}

#[test]
fn eval_is_deterministic() {
    let args = ["eval", "--op", "gl", "--alpha", "0.3", "--function", "gaussian:0,1", "--x", "-0.4"];
    assert_eq!(stdout(&frac_kit(&args)), stdout(&frac_kit(&args)));
}

#[test]
fn floats_have_seventeen_digits() {
    let o = frac_kit(&["eval", "--op", "weyl", "--alpha", "0.5", "--trig", "1:1.0,3:0.5", "--x", "0.3"]);
    let text = stdout(&o);
    let value = text.split("\"value\":").nth(1).unwrap().split([',', '}']).next().unwrap();
    let mantissa = value.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
    assert_eq!(mantissa.len(), 17, "{value}");
}

#[test]
fn identity_scaling_passes() {
    let o = frac_kit(&["identity", "--name", "scaling", "--alpha", "0.5", "--lambda", "2", "--function", "gaussian:0,1", "--x", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,params,lhs,rhs,residual,pass"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("scaling,\"function=gaussian:0,1;"), "{row}");
    assert!(row.ends_with(",true"), "{row}");
}

#[test]
fn identity_failure_exits_one() {
    // An impossible threshold makes the row fail.
    let o = frac_kit(&["identity", "--name", "sum1d", "--alpha", "0.5", "--x", "0", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with(",false"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(frac_kit(&["eval", "--op", "bogus", "--x", "0"]).status.code(), Some(2));
    assert_eq!(frac_kit(&["frobnicate"]).status.code(), Some(2));
    let o = frac_kit(&["eval", "--op", "marchaud", "--alpha", "0.5", "--function", "nope:1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_str(String::from_utf8(o.stderr).unwrap().trim()).unwrap();
    assert_eq!(diag["exit_code"], 2);
    assert_eq!(frac_kit(&["eval", "--op", "marchaud", "--function", "gaussian:0,1", "--x", "0"]).status.code(), Some(2));
}

#[test]
fn numerical_failure_exits_one_with_json() {
    // Starving the quadrature of panels forces non-convergence.
    let dir = std::env::temp_dir().join(format!("frac-kit-starve-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("starved.cfg");
    std::fs::write(&path, "max_panels = 2\nmax_subdiv = 1\n").unwrap();
    let o = frac_kit(&["eval", "--op", "marchaud", "--alpha", "0.5", "--function", "bump:-2,2", "--x", "0.5", "--config", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let diag: serde_json::Value = serde_json::from_str(String::from_utf8(o.stderr).unwrap().trim()).unwrap();
    assert_eq!(diag["error"], "NonConvergence");
    assert_eq!(diag["exit_code"], 1);
}

#[test]
fn config_file_then_flags() {
    let dir = std::env::temp_dir().join(format!("frac-kit-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quad.cfg");
    std::fs::write(&path, "# test\nt_max = 2000\neps = 1e-7\n").unwrap();
    let p = path.to_str().unwrap();
    let base = ["eval", "--op", "marchaud", "--alpha", "0.5", "--function", "gaussian:0,1", "--x", "0.2", "--config", p];
    let o = frac_kit(&base);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["diagnostics"]["t_max_used"].as_f64(), Some(2000.0));
    let mut with_flag = base.to_vec();
    with_flag.extend(["--tmax", "3000"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&frac_kit(&with_flag)).trim()).unwrap();
    assert_eq!(v["diagnostics"]["t_max_used"].as_f64(), Some(3000.0));
    std::fs::write(&path, "nonsense = 1\n").unwrap();
    assert_eq!(frac_kit(&base).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn constants_csv() {
    let o = frac_kit(&["constants", "--alpha", "0.5", "--l", "1", "--n", "2"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "name,alpha,index,closed_form,integral,rel_discrepancy");
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        let rel: f64 = row.rsplit(',').next().unwrap().parse().unwrap();
        assert!(rel < 1e-8, "{row}");
    }
}

#[test]
fn extension_limit_matches_marchaud() {
    let o = frac_kit(&["extension", "--s", "0.5", "--datum", "gaussian:0,1", "--t", "0.2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let value = |q: &str| -> f64 {
        let row = text.lines().find(|l| l.split(',').nth(1) == Some(q)).unwrap();
        row.split(',').nth(3).unwrap().parse().unwrap()
    };
    assert!((value("boundary_limit") - value("marchaud")).abs() < 1e-4);
}

#[test]
fn harnack_tables() {
    let o = frac_kit(&["harnack", "--s", "0.5", "--exterior", "bump:-2,-1", "--delta", "0.1,0.2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (profile, ratios) = text.split_once("\n\n").unwrap();
    assert_eq!(profile.lines().count(), 1 + 129);
    let rows: Vec<&str> = ratios.lines().collect();
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        let ratio: f64 = row.split(',').nth(8).unwrap().parse().unwrap();
        assert!(ratio.is_finite() && ratio > 0.0);
        assert!(row.ends_with(",false"));
    }
}

#[test]
fn suite_quick_passes() {
    let o = frac_kit(&["suite", "--quick"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn suite_seed_is_reproducible() {
    let args = ["suite", "--quick", "--only", "4", "--seed", "11", "--json"];
    let a = frac_kit(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&frac_kit(&args)));
    assert_eq!(frac_kit(&["suite", "--only", "12"]).status.code(), Some(2));
}

#[test]
fn thread_variable_is_validated() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_frac-kit"))
            .args(["suite", "--quick", "--only", "1"])
            .env("FRAC_KIT_THREADS", v)
            .output()
            .unwrap()
    };
    assert!(run("2").status.success());
    assert_eq!(run("zero").status.code(), Some(2));
}
