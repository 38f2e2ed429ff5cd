use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzeta")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn dyck_lists_five_words() {
    let out = run(&["dyck", "--n", "3", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "000111\n001011\n001101\n010011\n010101\n");
    let v = json(&["dyck", "--n", "3"]);
    assert_eq!(v["count"], "5");
    assert_eq!(v["words"][2]["word"], "001101");
}

#[test]
fn verify_reports_symmetry() {
    let v = json(&["verify", "--f", "1,1,1,1"]);
    assert_eq!(v["verdict"], "PASS");
    let sym = &v["reports"][0]["symmetry"];
    assert_eq!((&sym["a"], &sym["b"], &sym["c"]), (&Value::from("12"), &Value::from("66"), &Value::from("20")));
    let v = json(&["verify", "--n", "2", "--terms"]);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["reports"].as_array().unwrap().len(), 2 + 3 + 1);
}

#[test]
fn compute_latex_starts_with_leading_terms() {
    let out = run(&["compute", "--f", "2,2", "--format", "latex"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("\\frac{p^{61} t^{35} + 2 p^{53} t^{30} - p^{53} t^{26}"), "{text}");
    assert!(text.contains("(1 - p^{16} t^{6})^{2}"));
}

#[test]
fn series_agrees_with_oracle() {
    for (f, p) in [("1,1", "2"), ("2", "3"), ("1", "3")] {
        let s = json(&["series", "--f", f, "--p", p, "--order", "3"]);
        for method in ["hnf", "layered"] {
            let o = json(&["oracle", "--f", f, "--p", p, "--max-k", "3", "--method", method]);
            assert_eq!(strings(&s["values"]), strings(&o["counts"]), "f={f} p={p} {method}");
            assert_eq!(o["verdict"], "PASS");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "--f", "1,2,1"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    let c = run(&["--threads", "1", "compute", "--f", "1,2,1"]).stdout;
    let d = run(&["--threads", "3", "compute", "--f", "1,2,1"]).stdout;
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a, d);
    let o1 = run(&["--threads", "1", "oracle", "--f", "1,1", "--p", "2", "--max-k", "3"]).stdout;
    let o2 = run(&["--threads", "2", "oracle", "--f", "1,1", "--p", "2", "--max-k", "3"]).stdout;
    assert_eq!(o1, o2);
}

#[test]
fn ramified_types_are_exploratory() {
    let v = json(&["series", "--f", "1", "--e", "2", "--order", "3"]);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 4);
    let v = json(&["oracle", "--f", "1", "--e", "2", "--p", "3", "--max-k", "2"]);
    assert_eq!(v["exploratory"], true);
    assert!(v.get("verdict").is_none());
    let out = run(&["compute", "--f", "1", "--e", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--e"));
}

#[test]
fn exit_codes() {
    for (args, code, flag) in [
        (vec!["compute", "--f", "0,1"], 2, "--f"),
        (vec!["series", "--f", "1", "--p", "4"], 2, "--p"),
        (vec!["series", "--f", "1,1", "--e", "1"], 2, "--e"),
        (vec!["dyck", "--n", "0"], 2, "--n"),
        (vec!["compute", "--f", "1", "--format", "xml"], 2, "--format"),
        (vec!["oracle", "--f", "1,1", "--p", "2", "--max-k", "9", "--method", "hnf"], 3, "limit"),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains(flag), "{args:?}");
    }
}

#[test]
fn igusa_small_case() {
    let out = run(&["igusa", "--h", "2", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(Y*X_1 + 1)/((1 - X_2)*(1 - X_1))\n");
}
