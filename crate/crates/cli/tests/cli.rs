use std::path::PathBuf;
use std::process::{Command, Output};

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colink"))
        .args(args)
        .env_remove("COLINK_BUDGET")
        .env_remove("COLINK_JOBS")
        .output()
        .expect("colink runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(o: &Output, key: &str) -> Option<String> {
    stdout(o)
        .lines()
        .find_map(|l| l.split_once('\t').filter(|(k, _)| *k == key).map(|(_, v)| v.to_string()))
}

#[test]
fn trefoil_invariant_is_byte_stable() {
    let o = run(&["invariant", "--m", "2", "--diagram", &data("corpus/trefoil.pd")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "colink-report\tv1\ncommand\tinvariant\nm\t2\ncomponents\t1\ncrossings\t3\nwrithe.1\t3\n\
         polynomial\t-1*q^-9 + 1*q^-5 + 1*q^-3 + 1*q^-1\nstatus\tpass\n"
    );
}

#[test]
fn slice_words_and_pd_codes_agree() {
    for name in ["trefoil", "hopf", "figure_eight"] {
        let a = run(&["invariant", "--diagram", &data(&format!("corpus/{name}.pd"))]);
        let b = run(&["invariant", "--diagram", &data(&format!("words/{name}.sw"))]);
        assert_eq!(value(&a, "polynomial"), value(&b, "polynomial"), "{name}");
    }
    let o = run(&["invariant", "--diagram", &data("words/unknot_m4_k2.sw")]);
    assert_eq!(value(&o, "polynomial").unwrap(), "1*q^-4 + 1*q^-2 + 2 + 1*q^2 + 1*q^4");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let cases: Vec<Vec<String>> = vec![
        vec!["frobnicate".into()],
        vec!["invariant".into(), "--diagram".into(), "/nonexistent.pd".into()],
        vec!["invariant".into(), "--m".into(), "3".into(), "--diagram".into(), data("words/trefoil.sw")],
        vec!["relations".into(), "--suite".into(), "bogus".into(), "--m".into(), "2".into()],
        vec!["ledger".into(), "--check".into(), "no_such_identity".into()],
        vec!["ledger".into(), "--check".into(), "all".into(), "--params".into(), "k=3,l=2".into()],
        vec!["geometry".into()],
        vec!["homology".into(), "--diagram".into(), data("corpus/hopf.pd"), "--colours".into(), "0".into()],
        vec!["ss".into(), "--diagram".into(), data("corpus/hopf.pd"), "--direction".into(), "1,1".into()],
    ];
    for args in cases {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&a).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_colink"))
        .args(["geometry", "--count", "3,3,1,2"])
        .env("COLINK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget is 10"));
    let o = run(&["geometry", "--count", "2,2,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&o, "count").unwrap(), "9");
}

#[test]
fn failing_checks_exit_1() {
    let path = std::env::temp_dir().join(format!("colink-bad-{}.tower", std::process::id()));
    std::fs::write(&path, "name wrong\nstep a=k b=m\nexpect k*m\n").unwrap();
    let o = run(&["geometry", "--towers", "--tower-file", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&o, "wrong.matches").unwrap(), "fail");
    assert_eq!(value(&o, "status").unwrap(), "fail");
}

#[test]
fn homology_reports() {
    let o = run(&["homology", "--diagram", &data("corpus/hopf.pd"), "--colours", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value(&o, "point.total").unwrap(), "4");
    assert_eq!(value(&o, "split").unwrap(), "pass");
    let o = run(&["homology", "--diagram", &data("corpus/hopf.pd"), "--colours", "1/2,1/2"]);
    assert_eq!(value(&o, "point.total"), value(&o, "kh.total"));
    assert_eq!(value(&o, "split"), None);
    let o = run(&["homology", "--diagram", &data("corpus/whitehead.pd"), "--colours", "symbolic"]);
    assert_eq!(value(&o, "square_zero").unwrap(), "pass");
    let o = run(&["ss", "--diagram", &data("corpus/whitehead.pd"), "--direction", "0,1"]);
    assert_eq!(value(&o, "betti").unwrap(), "4");
    assert_eq!(value(&o, "e1.total").unwrap(), "10");
    assert_eq!(value(&o, "torsion").unwrap(), "(0,-4,1) (0,-2,1) (1,-8,1)");
    assert_eq!(value(&o, "collapse_page").unwrap(), "2");
}

#[test]
fn relations_output_ignores_thread_count() {
    let one = run(&["relations", "--suite", "all", "--m", "2", "--jobs", "1"]);
    let many = run(&["relations", "--suite", "all", "--m", "2", "--jobs", "5"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&many));
}

#[test]
fn ledger_and_geometry_pass() {
    let o = run(&["ledger", "--check", "all", "--params", "k=2,l=3,m=5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(value(&o, "identities").unwrap(), "19");
    let o = run(&["geometry", "--towers"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["geometry", "--poincare", "4,2"]);
    assert_eq!(value(&o, "poincare").unwrap(), "q^4 + q^3 + 2*q^2 + q + 1");
    assert_eq!(value(&o, "dimension").unwrap(), "4");
}

#[test]
fn json_and_text_formats() {
    let o = run(&["geometry", "--poincare", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["format"], "colink-report");
    assert_eq!(v["version"], 1);
    assert_eq!(v["entries"]["poincare"], "q + 1");
    assert_eq!(v["status"], "pass");
    let o = run(&["geometry", "--poincare", "2,1", "--format", "text"]);
    assert!(stdout(&o).starts_with("colink-report v1: geometry\n"));
}
