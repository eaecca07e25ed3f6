use std::process::{Command, Output};

fn amideal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amideal")).args(args).env_remove("AMIDEAL_DEFAULT_HORIZON").output().expect("binary runs")
}

fn text(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn values(o: &Output) -> Vec<String> {
    text(o).lines().map(|l| l.split_whitespace().nth(1).unwrap().to_string()).collect()
}

#[test]
fn eval_examples() {
    let o = amideal(&["eval", "am(e1)", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(values(&o), ["1", "1/2", "1/3", "1/4"]);
    assert_eq!(values(&amideal(&["eval", "min(omega,omega)", "--n", "2"])), ["1", "1/2"]);
    let o = amideal(&["eval", "convmin(div(ex38,omega))", "--n", "5"]);
    assert_eq!(values(&o)[1..], ["1/2", "5/12", "1/3", "1/4"]);
}

#[test]
fn eval_formats_are_exact() {
    let o = amideal(&["eval", "zeta(2)", "--n", "3", "--format", "csv"]);
    assert_eq!(text(&o), "n,lo,hi\n1,1,1\n2,1/4,1/4\n3,1/9,1/9\n");
    let o = amideal(&["eval", "omega", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["values"][1]["value"], "1/2");
    let o = amideal(&["eval", "omega", "--n", "3", "--decimal", "3"]);
    assert_eq!(values(&o)[2], "0.333");
}

#[test]
fn eval_errors() {
    let o = amideal(&["eval", "am(omega", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('^'));
    let o = amideal(&["eval", "nosuch(1)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = amideal(&["eval", "aminf(omega)", "--n", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn member_exit_codes() {
    assert_eq!(amideal(&["member", "--probe", "omega", "--ideal", "l1", "--horizon", "100000"]).status.code(), Some(1));
    assert_eq!(amideal(&["member", "--probe", "omega", "--ideal", "principal(omega)"]).status.code(), Some(0));
    let o = amideal(&["member", "--probe", "ex415eta", "--ideal", "kdual(pow3)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["m"], 2);
    assert_eq!(amideal(&["member", "--probe", "omega", "--ideal", "principal("]).status.code(), Some(2));
}

#[test]
fn horizon_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_amideal"))
        .args(["member", "--probe", "zeta(2)", "--ideal", "l1", "--format", "json"])
        .env("AMIDEAL_DEFAULT_HORIZON", "640")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["horizon"], 640);
}

#[test]
fn split_and_markus() {
    let o = amideal(&["split", "--xi", "2,1", "--eta", "1,1", "--mu", "1,0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v, serde_json::json!({ "eta": ["1", "1"], "mu": ["1", "0"] }));
    let o = amideal(&["split", "--xi", "1,0", "--eta", "1,0", "--mu", "1,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hypothesis violated at k=1"));
    let o = amideal(&["markus", "--eta", "1/2,1/2", "--xi", "1,0"]);
    assert_eq!(text(&o), "(1,1,1/2),(2,1,1/2)\n");
    let o = amideal(&["markus", "--eta", "2,0", "--xi", "1,0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn vectors_from_file() {
    let dir = std::env::temp_dir().join(format!("amideal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("xi.txt");
    std::fs::write(&f, "3/4 1/4\n").unwrap();
    let arg = format!("@{}", f.display());
    let o = amideal(&["markus", "--eta", "3/4,1/4", "--xi", &arg, "--format", "csv"]);
    assert_eq!(text(&o), "row,col,value\n1,1,1\n2,2,1\n");
}

#[test]
fn corpus_single_check_report() {
    let dir = std::env::temp_dir().join(format!("amideal-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = amideal(&["corpus", "--only", "EX2.20", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["seed"], 7);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    for key in ["id", "status", "horizon", "details"] {
        assert!(checks[0].get(key).is_some(), "{key}");
    }
    assert_eq!(checks[0]["status"], "pass");
    assert_eq!(amideal(&["corpus", "--only", "NOSUCH"]).status.code(), Some(2));
}
