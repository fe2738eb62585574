use std::io::Write;
use std::process::{Command, Output, Stdio};

const FORM: &str = "z1^2 + 2z2^2 + 2z3^2 + 2z4^2 + 4z1*z2 + 4z1*z3 + 4z1*z4 + 6z2*z3 + 6z2*z4 + 6z3*z4";
const MU: &str = "mu12=2,mu13=2,mu14=2,mu23=2,mu24=2,mu34=2";

fn murank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_murank")).args(args).output().unwrap()
}

fn murank_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_murank"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_worked_example() {
    let o = murank(&["classify", "--mu", MU, "--form", FORM]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("mu-rank: 2\n"), "{text}");
    assert!(text.contains("(z1 + z2 + z3 + z4) * (z1 + 2*z2 + 2*z3 + 2*z4)"));
}

#[test]
fn factor_json_feeds_verify() {
    let o = murank(&["factor", "--json", "--mu", MU, "--form", FORM]);
    assert_eq!(o.status.code(), Some(0));
    let again = murank(&["factor", "--json", "--mu", MU, "--form", FORM]);
    assert_eq!(o.stdout, again.stdout);

    let path = std::env::temp_dir().join(format!("murank-cli-factor-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let v = murank(&["verify", "--json", "--file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(v.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&v.stdout).unwrap();
    assert_eq!(parsed["verified"], serde_json::Value::Bool(true));
}

#[test]
fn verify_with_given_factors() {
    let ok = murank(&["verify", "--mu", MU, "--form", FORM, "z1+z2+z3+z4", "z1+2z2+2z3+2z4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "true\n");
    let bad = murank(&["verify", "--mu", MU, "--form", FORM, "z1+2z2+2z3+2z4", "z1+z2+z3+z4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout(&bad), "false\n");
}

#[test]
fn minors_of_zero_form() {
    let o = murank(&["minors", "--n", "4", "--form", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 27);
    assert!(lines.iter().all(|l| l.ends_with(" = 0")));
    let o3 = murank(&["minors", "--n", "3", "--form", "0"]);
    assert_eq!(stdout(&o3).lines().count(), 8);
}

#[test]
fn expand_two_factors() {
    let o = murank(&["expand", "--mu", MU, "z1+z2+z3+z4", "z1+2z2+2z3+2z4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        "z1^2 + 4*z1*z2 + 4*z1*z3 + 4*z1*z4 + 2*z2^2 + 6*z2*z3 + 6*z2*z4 + 2*z3^2 + 6*z3*z4 + 2*z4^2"
    );
}

#[test]
fn form_from_stdin_on_complex_backend() {
    let o = murank_stdin(&["classify", "--backend", "complex", "--tol", "1e-8", "--mu", MU, "--form", "-"], FORM);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("mu-rank: 2\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(murank(&["classify", "--form", "z1^2 +"]).status.code(), Some(1));
    assert_eq!(murank(&["classify", "--form", "z1 + z2"]).status.code(), Some(1));
    assert_eq!(murank(&["classify", "--form", "z1^2", "--tol", "1e-3"]).status.code(), Some(1));
    assert_eq!(murank(&["classify", "--trials", "3", "--form", "z1^2"]).status.code(), Some(1));
    assert_eq!(murank(&["classify", "--n", "3", "--mu", "mu12=0", "--form", "z1^2"]).status.code(), Some(2));
    assert_eq!(
        murank(&["classify", "--mu", "mu12=2,mu21=2", "--form", "z1*z2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        murank(&["classify", "--file", "/nonexistent/murank.json"]).status.code(),
        Some(4)
    );
    assert_eq!(murank(&["--help"]).status.code(), Some(0));
}

#[test]
fn nonfactorable_gate_case_is_reported() {
    let o = murank(&["classify", "--form", "2z1*z3 + 2z1*z4 + 2z2*z4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("mu-rank: 2\n"));
    let f = murank(&["factor", "--form", "2z1*z3 + 2z1*z4 + 2z2*z4"]);
    assert_eq!(f.status.code(), Some(3));
    assert_eq!(stdout(&f), "none\n");
}

#[test]
fn fuzz_is_deterministic() {
    let args = ["fuzz", "--json", "--n", "3", "--seed", "17", "--trials", "15"];
    let a = murank(&args);
    let b = murank(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["trials"], 15);
    assert_eq!(report["findings"].as_array().unwrap().len(), 0);
    let c = murank(&["fuzz", "--backend", "complex", "--trials", "10"]);
    assert_eq!(c.status.code(), Some(0));
}
