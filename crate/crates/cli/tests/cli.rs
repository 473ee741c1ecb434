use std::process::{Command, Output};

use serde_json::Value;

fn akzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_akzeta")).args(args).env_remove("AKZETA_TOL").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn classify_eta_and_inadmissible() {
    let v = json(&akzeta(&["classify", "--matrix", "-1,1;0,1"]));
    assert_eq!(v["admissible"], true);
    assert_eq!(v["cusps"].as_array().unwrap().len(), 0);
    assert_eq!(v["constraints"][0], "mu_inf + nu_inf = 1");
    assert_eq!(v["domain"]["vertices"][0]["vertex"]["t0"], "inf");

    let v = json(&akzeta(&["classify", "--matrix", "1,i;0,1"]));
    assert_eq!(v["cusps"].as_array().unwrap().len(), 1);

    let v = json(&akzeta(&["classify", "--matrix", "1,1;0,1"]));
    assert_eq!(v["admissible"], false);
    assert_eq!(v["witness"], "2");
    assert!(v["domain"].is_null());
}

#[test]
fn compute_classical() {
    assert_eq!(stdout(&akzeta(&["compute", "classical", "--kind", "B", "--k", "-3", "--n", "2"])).trim(), "46");
    let v = json(&akzeta(&["compute", "classical", "--kind", "C", "--k", "1", "--n", "1", "--json"]));
    assert_eq!(v["exact"]["num"], -1);
    assert_eq!(v["exact"]["den"], 2);
}

#[test]
fn compute_gl2_values_and_polynomials() {
    let at = |alpha: &str| {
        let m = format!("-1,{alpha};0,1");
        stdout(&akzeta(&["compute", "gl2", "--matrix", &m, "--u", "-3", "--m", "2", "--y", "1", "--w", "0"]))
    };
    assert_eq!(at("3").trim(), "242");
    assert_eq!(at("-2").trim(), "-1/512");
    assert_eq!(at("i").trim(), "-4/125-22/125*i");

    let v = json(&akzeta(&[
        "compute", "gl2", "--matrix", "-1,i;0,1", "--u", "-3", "--m", "2", "--y", "1", "--w", "0", "--json",
    ]));
    assert_eq!(v["terms"][0]["im"]["num"], -22);
    assert_eq!(v["terms"][0]["im"]["den"], 125);

    let p = stdout(&akzeta(&["compute", "gl2", "--matrix", "-1,1;0,1", "--u", "-1", "--m", "2"]));
    assert_eq!(p.trim(), "y*w^2+2*y*w+2*w+y+3");

    // Positive order needs a concrete y.
    let o = akzeta(&["compute", "gl2", "--matrix", "1,-1;1,0", "--u", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let p = stdout(&akzeta(&["compute", "gl2", "--matrix", "1,-1;1,0", "--u", "1", "--m", "2", "--y", "1"]));
    assert_eq!(p.trim(), "w^2+w+1/6");
}

#[test]
fn zeta_value_and_json() {
    let v = json(&akzeta(&["zeta", "--matrix", "1,-1;1,0", "--u", "1", "--s", "2", "--y", "1", "--w", "0", "--json"]));
    let two_zeta_three = 2.404_113_806_319_188_5;
    assert!((v["re"].as_f64().unwrap() - two_zeta_three).abs() < 1e-12);
    assert_eq!(v["method"], "integral");
    assert!(v["est_error"].as_f64().unwrap() < 1e-10);

    let text = stdout(&akzeta(&["zeta", "--matrix", "1,-1;1,0", "--u", "1", "--s", "-2", "--y", "1", "--w", "0"]));
    let value = text.split(" ± ").next().unwrap();
    let re: f64 = value.split(['+', '-']).next().unwrap().parse().unwrap();
    assert!((re - 1.0 / 6.0).abs() < 1e-12, "{text}");

    let o = akzeta(&["zeta", "--matrix", "-1,1;0,1", "--u", "1", "--s", "2", "--y", "1", "--w", "-3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes_and_formats() {
    let o = akzeta(&["verify", "--case", "alpha-example-values"]);
    let v = json(&o);
    assert_eq!(v["summary"]["total"], 3);
    assert_eq!(v["summary"]["passed"], 3);

    let o = akzeta(&["verify", "--case", "b-duality", "--max-order", "4", "--format", "csv"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert!(csv.starts_with("case_id,mode,params,status,residual,bound,citation,detail\n"));
    assert!(csv.contains("b-duality,exact,k=0..=4;m=0..=4;points=25,pass,0,"));

    assert_eq!(akzeta(&["verify", "--case", "no-such-case"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--case", "duality-numeric", "--matrix", "-1,1;0,1"];
    let a = akzeta(&args);
    let b = akzeta(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tolerance_from_environment() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_akzeta"))
            .args(["zeta", "--matrix", "1,-1;1,0", "--u", "1", "--s", "2", "--y", "1", "--w", "0", "--json"])
            .env("AKZETA_TOL", tol)
            .output()
            .unwrap()
    };
    let loose = json(&run("1e-4"));
    assert!((loose["re"].as_f64().unwrap() - 2.404_113_806_319_188_5).abs() < 1e-4);
    assert_eq!(run("abc").status.code(), Some(2));
    assert_eq!(run("-1").status.code(), Some(2));
}
