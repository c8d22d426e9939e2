use std::process::{Command, Output};

fn oprd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oprd")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> String {
    let out = oprd(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn tsv_line(args: &[&str], key: &str) -> String {
    let mut a = args.to_vec();
    a.extend(["--format", "tsv"]);
    let text = json(&a);
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}\t")).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

#[test]
fn lie_dims() {
    assert_eq!(tsv_line(&["dims", "--preset", "lie", "--max-arity", "6"], "result"), "1\t1\t2\t6\t24\t120");
}

#[test]
fn report_schema() {
    let text = json(&["dims", "--preset", "com", "--max-arity", "4"]);
    for key in ["\"command\"", "\"input\"", "\"order_spec\"", "\"bounds\"", "\"result\"", "\"provenance\""] {
        assert!(text.contains(key), "{key} missing");
    }
}

#[test]
fn positivity_tcom_3_1() {
    let r = tsv_line(&["series", "positivity", "--preset", "tcom:3:1", "--order", "401"], "result.first_negative");
    assert_eq!(r, "none");
}

#[test]
fn positivity_detects_negative() {
    let r = tsv_line(&["series", "positivity", "--coeffs", "0,1,-1/2,1/6", "--order", "12"], "result.first_negative");
    assert_eq!(r, "6");
}

#[test]
fn file_input_and_order_flag() {
    let dir = std::env::temp_dir().join(format!("oprd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ass.oprd");
    std::fs::write(&path, "operad a\nkind nonsymmetric\ngenerator m arity 2 degree 0\nrelation m(m(1,2),3) = m(1,m(2,3))\n")
        .unwrap();
    let p = path.to_str().unwrap();
    for order in ["rpdl", "pdl"] {
        let r = tsv_line(&["dims", "--file", p, "--ordering", order, "--max-arity", "5"], "result");
        assert_eq!(r, "1\t1\t1\t1\t1");
    }
}

#[test]
fn normal_form_of_jacobi() {
    let r = tsv_line(
        &["normal-form", "--preset", "lie", "--expr", "b(b(1,2),3) + b(b(2,3),1) + b(b(3,1),2)"],
        "result.is_zero",
    );
    assert_eq!(r, "true");
}

#[test]
fn deterministic_output() {
    let a = json(&["veronese", "quadratic", "--preset", "lie", "--d", "2"]);
    let b = json(&["veronese", "quadratic", "--preset", "lie", "--d", "2"]);
    assert_eq!(a, b);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(oprd(&["dims", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(oprd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(oprd(&["dims"]).status.code(), Some(2));
}

#[test]
fn suite_criterion_reachable() {
    let out = oprd(&["paper-suite", "--criteria", "3", "--format", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result.0.pass\ttrue"), "{text}");
}

#[test]
fn suite_failure_exits_1() {
    let out = oprd(&["paper-suite", "--criteria", "8"]);
    assert_eq!(out.status.code(), Some(1));
}
