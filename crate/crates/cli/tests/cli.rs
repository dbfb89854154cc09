use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coordlens"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let r = run(&full);
    (r.code, serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout)))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coordlens-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const PATH3: &str = r#"{"vertices":["u","v","w"],"edges":[[0,1],[1,2]],"groups":{"u":"C2","v":"C3","w":"C2"}}"#;
const MIXED: &str = r#"{"vertices":["u","v","w"],"edges":[[0,1]],"groups":{"u":"C3","v":"C2","w":"C2"}}"#;
const TRIANGLE_C2: &str = r#"{"vertices":["a","b","c"],"edges":[],"groups":{"a":"C2","b":"C2","c":"C2"}}"#;

#[test]
fn group_analyze_s4() {
    let r = run(&["group", "analyze", "S4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    for line in [
        "classes: 5",
        "center: 1 {e}",
        "nilpotent: not nilpotent",
        "decomposition: indecomposable",
        "normal subgroup orders: [1,4,12,24]",
        "crit_torsion(p=3) PASS",
    ] {
        assert!(r.stdout.contains(line), "missing `{line}` in\n{}", r.stdout);
    }
    // The Klein four-group is its own centralizer, so this criterion fails.
    assert!(r.stdout.contains("crit_conj_centralizer FAIL: C(a^G) has order 4 at a = (12)(34)"));
}

#[test]
fn group_analyze_json_and_files() {
    let (code, v) = json(&["group", "analyze", "Q8"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], 8);
    assert_eq!(v["center"]["order"], 2);
    assert_eq!(v["lower_central_series"], serde_json::json!({"nilpotent": true, "class": 2}));
    assert_eq!(v["classes"]["count"], 5);

    let c3 = temp_file("c3.json", r#"{"name":"Z3","labels":["0","1","2"],"table":[[0,1,2],[1,2,0],[2,0,1]]}"#);
    let (code, v) = json(&["group", "analyze", c3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "Z3");
    assert_eq!(v["abelian"], true);
}

#[test]
fn reduced_build_support_example() {
    let r = run(&["reduced", "build", "--factors", "S3,S3", "--ideal", "{}", "--supp", "x*x=e", "--elem", "(12),(123)"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    // (12)^2 = e in coordinate 0, (123)^2 != e in coordinate 1.
    assert!(r.stdout.contains("supp (x * x) = e: {0}"), "{}", r.stdout);
    assert!(r.stdout.contains("elements: 36"));
    let (_, v) = json(&["reduced", "build", "--factors", "S3,S3", "--supp", "x*x=e", "--elem", "(12),(123)"]);
    assert_eq!(v["supp"]["class"], serde_json::json!([0]));
    assert_eq!(v["algebra_size"], 4);
}

#[test]
fn reduced_eval_supp_los() {
    let ideal = r#"{"indices":3,"generators":[[2]]}"#;
    let (code, v) = json(&["reduced", "supp", "--factors", "S3,S3,C2", "--ideal", ideal, "--formula", "x*y=y*x", "--elem", "(12),(123),a", "--elem", "(12),(12),e"]);
    assert_eq!(code, 0);
    // coordinate 0 commutes, 1 does not, 2 is identified away by the ideal.
    assert_eq!(v["class"], serde_json::json!([0]));

    let (code, v) = json(&["reduced", "eval", "--factors", "S3,S3", "--formula", "(E y)(x = y*y)", "--elem", "(123),e"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
    let (_, v) = json(&["reduced", "eval", "--factors", "S3,S3", "--formula", "(E y)(x = y*y)", "--elem", "(12),e"]);
    assert_eq!(v["holds"], false);

    let (code, v) = json(&["reduced", "los", "--factors", "S3,S3,C2", "--ideal", ideal, "--formula", "x*y=y*x"]);
    assert_eq!(code, 0);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["assignments"], 36 * 36);

    let (code, v) = json(&["reduced", "los", "--factors", "S3,S3", "--formula", "x*x=e", "--elem", "(12),(123)"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["failure_set"], serde_json::json!([1]));
    assert_eq!(v["report"]["holds_in_product"], false);
}

#[test]
fn formula_verbs() {
    let r = run(&["formula", "parse", "x*y = y*x"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("free: [x, y]"));

    let r = run(&["formula", "classify", "(A z)(x*z = z*x)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("h-formula"));
    let r = run(&["formula", "classify", "!(x = e)"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("not an h-formula: negation at root"));

    let r = run(&["formula", "equiv", "x = e", "(A y)(x*y = y)", "--in", "S3"]);
    assert_eq!(r.code, 0);
    let (code, v) = json(&["formula", "equiv", "x*x = e", "x = e", "--in", "S3"]);
    assert_eq!(code, 1);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["counterexample"], "x=(23)");

    let r = run(&["formula", "parse", "Le(x,y) & Le(y,x)", "--sig", "order"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = run(&["formula", "equiv", "Le(x,y) & Le(y,x)", "x = y", "--in", "Chain4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
}

#[test]
fn criteria_verdicts() {
    let r = run(&["criteria", "verdict", "S3,SL2_5"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("{S3, SL2_5}: fails"));
    assert!(r.stdout.contains("obstruction center_hom"));

    let (_, v) = json(&["criteria", "verdict", "A5"]);
    assert_eq!(v["verdict"]["outcome"], "recognizes");
    assert_eq!(v["expected"]["outcome"], "recognizes");
    let (_, v) = json(&["criteria", "verdict", "Q8"]);
    assert_eq!(v["verdict"]["outcome"], "fails");

    let r = run(&["criteria", "verdict", "GL2_2"]);
    assert!(r.stdout.contains("expected: fails (differs)"));
    assert!(r.stdout.contains("flag:"));
}

#[test]
fn catalog_verbs() {
    let (code, v) = json(&["catalog", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, coordlens_core::catalog::default_names());
    let (_, v) = json(&["catalog", "show", "Dih4", "--tables"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["tables"]["table"].as_array().unwrap().len(), 8);
    let r = run(&["catalog", "show", "RPS"]);
    assert!(r.stdout.contains("kind: structure"));
}

#[test]
fn graph_verbs() {
    let (code, v) = json(&["graph", "classify", PATH3]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "fails");
    assert_eq!(v["decomposable"]["x"], serde_json::json!(["v"]));
    let (_, v) = json(&["graph", "classify", TRIANGLE_C2]);
    assert_eq!(v["outcome"], "open");
    let (_, v) = json(&["graph", "classify", MIXED]);
    assert_eq!(v["outcome"], "recognizes");

    let (code, v) = json(&["graph", "normal-form", MIXED, "v:a u:a w:a v:a"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "u:a v:a w:a v:a");
    assert_eq!(v["first"], serde_json::json!(["u", "v"]));
    assert_eq!(v["last"], serde_json::json!(["v"]));

    let (code, v) = json(&["graph", "conjugate", MIXED, "v:a", "--vertex", "w"]);
    assert_eq!(code, 0);
    assert_eq!(v["conjugator"], "w:a");
    assert_eq!(v["conjugate"], "w:a v:a w:a");

    let file = temp_file("mixed.json", MIXED);
    let r = run(&["graph", "classify", file.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("recognizes"));
}

#[test]
fn verify_verbs() {
    let (code, v) = json(&["verify", "sym.two_cycles"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["schema"], 1);
    assert!(v.get("millis").is_none());
    let details: Vec<&str> = v["instances"].as_array().unwrap().iter().map(|i| i["detail"].as_str().unwrap()).collect();
    for (d, n) in details.iter().zip([4, 7, 11, 31]) {
        assert!(d.starts_with(&format!("{n} elements")), "{d}");
    }

    let r = run(&["verify", "group.q8_boolean"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("FAIL group.q8_boolean"));

    let r = run(&["verify", "--list"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), coordlens_core::verify::check_names().len());

    let (code, v) = json(&["verify", "--all"]);
    assert_eq!(code, 1);
    assert_eq!(v["total"], coordlens_core::verify::check_names().len());
    assert_eq!(v["passed"], v["total"].as_u64().unwrap() - 1);

    let (_, v) = json(&["--timings", "verify", "rps.formulas"]);
    assert!(v["millis"].is_u64());
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["--json", "verify", "order.formula"][..],
        &["--json", "criteria", "verdict", "S3,S4"],
        &["--json", "group", "analyze", "A5"],
        &["--json", "reduced", "los", "--factors", "S3,C3", "--formula", "(E y)(x = y*y*y)"],
    ] {
        let a = run(args);
        let b = run_env(args, &[("COORDLENS_THREADS", "1")]);
        assert_eq!(a.code, b.code);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &[],
        &["verify"],
        &["verify", "sym.two_cycles", "--scale", "huge"],
        &["verify", "--all", "--list"],
        &["group", "analyze"],
        &["reduced", "build"],
        &["graph", "conjugate", PATH3, "u:a"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    let r = run(&["verify", "x", "--scale", "huge"]);
    assert!(r.stderr.contains("unknown scale `huge`"));
}

#[test]
fn file_not_found_exit_2() {
    for args in [
        &["group", "analyze", "missing/group.json"][..],
        &["graph", "classify", "missing-graph.json"],
        &["formula", "equiv", "x = x", "x = x", "--in", "missing/structure.json"],
        &["reduced", "build", "--factors", "S3,S3", "--ideal", "missing-ideal.json"],
        &["reduced", "build", "--factors", "S3,nowhere/s.json"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.starts_with("error: file not found:"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn parse_errors_exit_2() {
    let bad_json = temp_file("bad.json", "{ not json");
    for args in [
        &["formula", "parse", "x = ("][..],
        &["formula", "parse", "foo(x) = x"],
        &["formula", "classify", "x * = y"],
        &["reduced", "eval", "--factors", "S3", "--formula", "x = = e", "--elem", "e"],
        &["graph", "classify", "{ \"vertices\": 3 }"],
        &["graph", "normal-form", MIXED, "v:zz"],
        &["graph", "normal-form", MIXED, "nocolon"],
        &["group", "analyze", bad_json.to_str().unwrap()],
        &["reduced", "build", "--factors", "S3", "--ideal", "{ oops"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.starts_with("error: parse error:"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn scale_bound_errors_exit_2() {
    for args in [
        &["group", "analyze", "S7", "--bound", "100"][..],
        &["reduced", "build", "--factors", "S5,S5,S5"],
        &["group", "analyze", "C2", "--bound", "1"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.starts_with("error: scale bound exceeded:"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn invalid_input_exit_2() {
    let not_assoc = temp_file("magma.json", r#"{"table":[[0,1,2],[1,0,2],[2,2,0]]}"#);
    for args in [
        &["catalog", "show", "Foo12"][..],
        &["catalog", "show", "S9"],
        &["group", "analyze", "RPS"],
        &["group", "analyze", not_assoc.to_str().unwrap()],
        &["criteria", "verdict", "S3,Nope"],
        &["criteria", "verdict", ","],
        &["verify", "no.such.check"],
        &["formula", "parse", "x = y", "--sig", "ring"],
        &["reduced", "build", "--factors", "S3,S3", "--ideal", r#"{"indices":2,"generators":[[0,1]]}"#],
        &["reduced", "build", "--factors", "S3,S3", "--ideal", r#"{"indices":3}"#],
        &["reduced", "los", "--factors", "S3", "--formula", "!(x = e)"],
        &["reduced", "eval", "--factors", "S3,S3", "--formula", "x = y", "--elem", "e,e"],
        &["reduced", "eval", "--factors", "S3,S3", "--formula", "x = e", "--elem", "e"],
        &["reduced", "eval", "--factors", "S3,S3", "--formula", "x = e", "--elem", "e,(1234)"],
        &["reduced", "build", "--factors", "S3", "--elem", "e"],
        &["graph", "conjugate", TRIANGLE_C2, "a:a", "--vertex", "b"],
        &["graph", "conjugate", PATH3, "v:a", "--vertex", "u"],
        &["graph", "conjugate", MIXED, "v:a", "--vertex", "zz"],
        &["graph", "classify", r#"{"vertices":["u"],"groups":{"u":"C2"}}"#],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(r.stderr.starts_with("error: invalid input:"), "{args:?}: {}", r.stderr);
    }
}

#[test]
fn thread_cap_is_accepted() {
    let r = run_env(&["verify", "rps.formulas"], &[("COORDLENS_THREADS", "2")]);
    assert_eq!(r.code, 0);
    let r = run_env(&["verify", "rps.formulas"], &[("COORDLENS_THREADS", "junk")]);
    assert_eq!(r.code, 0);
}
