use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn dihom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dihom")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dihom(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fails_with(args: &[&str], code: i32) -> String {
    let out = dihom(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: "), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    err
}

#[test]
fn intro_scene_counts() {
    assert_eq!(stdout(&["classes", &data("intro_x.scene")]), "classes 3\n");
    assert_eq!(stdout(&["classes", &data("intro_y.scene")]), "classes 4\n");
    let back = stdout(&["hom", &data("intro_x.scene"), "--from", "6,6", "--to", "0,0"]);
    assert_eq!(back, "classes 0\n");
}

#[test]
fn reps_report_lists_each_class() {
    let out = stdout(&["classes", &data("hole.scene"), "--reps"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "classes 2");
    assert!(lines[1].starts_with("class 0 size 10 rep h:0,0"));
    assert!(lines[2].starts_with("class 1 size 10 rep "));
}

#[test]
fn json_is_stable() {
    let a = stdout(&["hom", &data("o1.complex"), "--from", "0", "--to", "1", "--json"]);
    let b = stdout(&["hom", &data("o1.complex"), "--from", "0", "--to", "1", "--json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 2);
    assert!(a.find("\"from\"").unwrap() < a.find("\"classes\"").unwrap());
}

#[test]
fn ordered_circle() {
    assert_eq!(stdout(&["hom", &data("o1.complex"), "--from", "0", "--to", "1"]), "classes 2\n");
    assert_eq!(stdout(&["one-simple", &data("o1.complex")]), "one-simple false\nwitness 0 1\n");
    assert_eq!(stdout(&["pi0", &data("o1.complex")]), "components 1\n0 1\n");
    assert_eq!(stdout(&["preorder", &data("o1.complex")]), "pairs 3\n0 <= 0\n0 <= 1\n1 <= 1\n");
}

#[test]
fn built_in_models() {
    let out = stdout(&["monoid", "model:directed_circle", "--at", "*", "--max-len", "3"]);
    assert!(out.starts_with("counts 1 1 1 1\n"));
    assert!(out.contains("product 1 2 = 3\n"));
    let out = stdout(&["monoid", "model:wedge_circles(2)", "--at", "*", "--max-len", "3"]);
    assert!(out.starts_with("counts 1 2 4 8\n"));
    let verdict = stdout(&["one-simple", "model:directed_circle", "--max-len", "2"]);
    assert_eq!(verdict, "one-simple false\nwitness * *\nbounded true\n");
}

#[test]
fn unbounded_on_cyclic_is_a_domain_error() {
    let err = fails_with(&["hom", "model:directed_circle", "--from", "*", "--to", "*"], 1);
    assert!(err.contains("unbounded"));
}

#[test]
fn category_commands() {
    assert_eq!(stdout(&["cat", "faithful", &data("incl.functor")]), "faithful\n");
    assert_eq!(stdout(&["cat", "faithful", &data("collapse.functor")]), "not faithful\n");
    assert_eq!(stdout(&["cat", "contractible", &data("two.cat"), "--direction", "past"]), "past-contractible at 0\n");
    assert_eq!(
        stdout(&["cat", "contractible", &data("two.cat"), "--direction", "future"]),
        "future-contractible at 1\n"
    );
    assert_eq!(stdout(&["cat", "contractible", &data("o1.cat"), "--direction", "past"]), "not past-contractible\n");
    assert!(stdout(&["cat", "equiv", &data("three.cat"), &data("two.cat")]).starts_with("equivalent\n"));
    assert_eq!(stdout(&["cat", "equiv", "ordinal:1", &data("d2.cat")]), "not equivalent\n");
}

#[test]
fn pushout_of_intervals_is_the_ordered_circle() {
    let out = stdout(&[
        "cat",
        "pushout",
        &data("ends.pres"),
        &data("interval.pres"),
        &data("interval.pres"),
        &data("ends.morph"),
        &data("ends.morph"),
    ]);
    assert_eq!(out, "object 0\nobject 1\ngen e 0 1\ngen e' 0 1\n");
}

#[test]
fn realize() {
    assert_eq!(stdout(&["cat", "realize", &data("interval.pres")]), "object 0\nobject 1\narrow e 0 1\n");
    let out = stdout(&["cat", "realize", &data("circle.pres"), "--bound", "2"]);
    assert!(out.starts_with("# truncated at length 2\n"));
    assert!(out.contains("arrow e;e * *\n"));
    fails_with(&["cat", "realize", &data("circle.pres")], 1);
}

#[test]
fn metric_commands() {
    let q = stdout(&["metric", "quotient", &data("interval4.dmetric"), &data("endpoints.rel")]);
    assert_eq!(
        q,
        "points 4 0~1 1/4 1/2 3/4\n0 1/4 1/2 3/4\n3/4 0 1/4 1/2\n1/2 3/4 0 1/4\n1/4 1/2 3/4 0\n"
    );
    assert_eq!(stdout(&["metric", "validate", &data("chain2.dmetric")]), "ok\n");
    assert!(stdout(&["metric", "validate", &data("bad_triangle.dmetric")]).starts_with("violations 2\n"));
    let p = stdout(&["metric", "product", &data("chain2.dmetric"), &data("chain2.dmetric")]);
    assert!(p.starts_with("points 4 (a,a) (a,b) (b,a) (b,b)\n0 1 1 1\n"));
    let s = stdout(&["metric", "sum", &data("chain2.dmetric"), &data("chain2.dmetric")]);
    assert!(s.starts_with("points 4 a@0 b@0 a@1 b@1\n0 1 inf inf\n"));
    let b = ["metric", "ball", &data("interval4.dmetric"), "--at", "0", "--eps", "1/2", "--direction"];
    assert_eq!(stdout(&[&b[..], &["future"]].concat()), "ball 2 0 1/4\n");
    assert_eq!(stdout(&[&b[..], &["past"]].concat()), "ball 1 0\n");
}

#[test]
fn export_dot() {
    let dir = std::env::temp_dir().join(format!("dihom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("hole.dot");
    let o = out.to_str().unwrap();
    assert_eq!(stdout(&["export-dot", &data("hole.scene"), "-o", o, "--highlight", "1"]), "");
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph complex {"));
    assert_eq!(dot.matches("color=red").count(), 6);
    stdout(&["export-dot", &data("three.cat"), "-o", o]);
    assert_eq!(std::fs::read_to_string(&out).unwrap().matches("->").count(), 3);
    fails_with(&["export-dot", &data("hole.scene"), "-o", o, "--highlight", "5"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn error_paths() {
    fails_with(&["bogus"], 2);
    fails_with(&["classes", &data("hole.scene"), "--frobnicate"], 2);
    fails_with(&["classes", "no-such-file.scene"], 2);
    fails_with(&["hom", &data("o1.complex"), "--from", "0", "--to", "zz"], 1);
    fails_with(&["metric", "validate", &data("o1.complex")], 2);
    fails_with(&["metric", "ball", &data("chain2.dmetric"), "--at", "a", "--eps", "-1", "--direction", "past"], 2);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["classes", &data("intro_y.scene"), "--reps"];
    assert_eq!(dihom(&args).stdout, dihom(&args).stdout);
}
