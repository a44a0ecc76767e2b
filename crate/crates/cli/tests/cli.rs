use std::process::{Command, Output};

fn zl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zl"))
        .args(args)
        .env_remove("ZL_DEFAULT_PREC")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).expect("valid JSON")
}

#[test]
fn stieltjes_rows_and_header() {
    let s = stdout(&zl(&["stieltjes", "--max-n", "10", "--prec", "128", "--tol", "1e-25"]));
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "n,gamma,bracket,method");
    assert_eq!(lines.len(), 12);
    assert!(lines[1].starts_with("0,5.772156649015328606065120900824"));
}

#[test]
fn stieltjes_both_methods() {
    let s = stdout(&zl(&["stieltjes", "--max-n", "2", "--method", "both", "--tol", "1e-10"]));
    let methods: Vec<&str> = s.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(methods, ["em", "integral", "em", "integral", "em", "integral"]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = zl(&[
            "coeffs",
            "--max-n",
            "8",
            "--max-m",
            "2",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn coeffs_json_nested_by_m_then_n() {
    let v = json(&zl(&["coeffs", "--max-n", "3", "--max-m", "1", "--format", "json"]));
    let g = &v["grid"];
    assert!(g["1"]["3"]["ell_nm"].is_string());
    assert!(g["0"]["0"]["ell_nm"].as_str().unwrap().starts_with("-4.2278433509846713939"));
    assert!(g["2"].is_null());
}

#[test]
fn coeffs_csv_and_parseval() {
    let s = stdout(&zl(&["coeffs", "--max-n", "4", "--max-m", "1"]));
    assert_eq!(s.lines().next().unwrap(), "m,n,ell_nm,bracket");
    assert_eq!(s.lines().count(), 1 + 2 * 5);
    let p = stdout(&zl(&["coeffs", "--parseval", "--m", "0", "--max-n", "20"]));
    let last: f64 = p.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!(last < 0.26066148 && last > 0.2);
}

#[test]
fn norm_rows() {
    let s = stdout(&zl(&["norm", "--max-m", "2"]));
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(
        lines[0],
        "m,closed_form,closed_bracket,quadrature,quadrature_bracket,difference"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,2.60661401"));
}

#[test]
fn zeta_paths() {
    let v = json(&zl(&["zeta", "--re", "2"]));
    assert_eq!(v["path"], "series");
    assert!(v["value_re"].as_str().unwrap().starts_with("1.64493406684"));
    assert!(v["terms_used"].as_u64().unwrap() > 10);
    for key in ["value_im", "tail_bound"] {
        assert!(v[key].is_string());
    }
    let r = json(&zl(&["zeta", "--re", "-1"]));
    assert_eq!(r["path"], "reflection");
    assert!(r["value_re"].as_str().unwrap().starts_with("-8.33333333333"));
    let l = json(&zl(&["zeta", "--re", "1.0000001"]));
    assert_eq!(l["path"], "laurent");
    let d = json(&zl(&["zeta", "--re", "2", "--m", "1", "--tol", "1e-10"]));
    assert!(d["value_re"].as_str().unwrap().starts_with("-9.375482543"));
}

#[test]
fn zeta_refuses_critical_line() {
    let o = zl(&["zeta", "--re", "0.5", "--im", "14"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("zl:"));
}

#[test]
fn oracle_outputs_have_value_and_bracket() {
    for args in [
        &["oracle", "zeta", "--re", "3"][..],
        &["oracle", "norm", "--m", "1"][..],
        &["oracle", "integral", "--power", "2", "--logdeg", "1", "--cutoff", "1000"][..],
        &["oracle", "zeta", "--re", "2", "--deriv", "1", "--tol", "1e-10"][..],
    ] {
        let v = json(&zl(args));
        assert!(v["value"].is_string(), "{args:?}");
        assert!(v["bracket"].is_string(), "{args:?}");
    }
}

#[test]
fn laguerre_value_gram_and_domain() {
    let v = json(&zl(&["laguerre", "--n", "1", "--m", "1", "--x", "2.718281828459045"]));
    assert!(v["value"].as_str().unwrap().starts_with("1.0000000000000000"));
    let g = stdout(&zl(&["laguerre", "--gram", "--max-n", "3", "--m", "1", "--tol", "1e-10"]));
    assert_eq!(g.lines().count(), 1 + 16);
    let o = zl(&["laguerre", "--n", "2", "--x", "1"]);
    assert!(!o.status.success());
}

#[test]
fn fracpart_value_and_probe() {
    let v = json(&zl(&["fracpart", "--x", "2.5", "--terms", "0"]));
    assert!(v["value"].as_str().unwrap().starts_with("4.2278433509"));
    let c = json(&zl(&["fracpart", "--x", "4.5", "--terms", "200", "--sum", "cesaro"]));
    assert_eq!(c["sum"], "cesaro");
    let p = stdout(&zl(&["fracpart", "--probe", "--max-terms", "100"]));
    let lines: Vec<&str> = p.lines().collect();
    assert_eq!(lines[0], "N,sup_err_near_int,sup_err_far");
    assert!(lines[1].starts_with("10,") && lines[2].starts_with("100,"));
}

#[test]
fn default_precision_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_zl"))
        .args(["oracle", "zeta", "--re", "2", "--tol", "1e-15"])
        .env("ZL_DEFAULT_PREC", "64")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let digits = v["value"].as_str().unwrap().split('e').next().unwrap().replace('.', "");
    assert_eq!(digits.len(), 20);
}

#[test]
fn verify_selector_runs_only_that_suite() {
    let s = stdout(&zl(&["verify", "--suite", "parseval"]));
    assert!(s.lines().skip(1).all(|l| l.starts_with("parseval,")));
    assert!(s.lines().skip(1).all(|l| l.ends_with(",pass")));
}

#[test]
fn verify_default_config_passes() {
    let o = zl(&["verify", "--format", "json"]);
    let v = json(&o);
    let items = v.as_array().unwrap();
    assert!(items.len() > 50);
    let suites: std::collections::BTreeSet<&str> = items.iter().map(|i| i["suite"].as_str().unwrap()).collect();
    assert_eq!(suites.len(), 8);
}

#[test]
fn invalid_config_rejected() {
    let o = zl(&["verify", "--prec", "64", "--tol", "1e-40"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("tolerance"));
}

#[test]
fn io_errors_name_the_path() {
    let o = zl(&["zeta", "--re", "2", "--out", "/nonexistent/dir/x.json"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/dir/x.json"));
}
