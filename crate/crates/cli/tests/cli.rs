use std::path::PathBuf;
use std::process::{Command, Output};

use residua::{PermGroup, Permutation};
use serde_json::Value;

fn corpus(name: &str) -> String {
    corpus_dir()
        .join(format!("{name}.grp"))
        .display()
        .to_string()
}

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_residua"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    serde_json::from_str(stdout(&o).trim()).unwrap()
}

#[test]
fn info_reports_chief_factors() {
    let o = run(&["info", &corpus("s4")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("order: 24"));
    assert!(text.contains("primes: 2 3"));
    let v = json(&["info", &corpus("s4")]);
    let orders: Vec<&str> = v["chief_factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["order"].as_str().unwrap())
        .collect();
    assert_eq!(orders, ["2", "3", "4"]);
    let v = json(&["info", &corpus("c01")]);
    assert_eq!(v["order"], "1");
    assert!(v["chief_factors"].as_array().unwrap().is_empty());
}

#[test]
fn residual_orders() {
    for (file, f, want) in [
        ("s4", "supersoluble", "4"),
        ("s4", "meet(nilpotent,supersoluble)", "12"),
        ("a5", "quasinilpotent", "1"),
        ("sl23", "supersoluble", "8"),
    ] {
        let v = json(&["residual", "--formation", f, &corpus(file)]);
        assert_eq!(v["order"], want, "{file} {f}");
    }
}

#[test]
fn residual_json_round_trips() {
    for (file, degree) in [("s4", 4), ("sl23", 8), ("c2xa5", 7)] {
        let v = json(&["residual", "--formation", "nilpotent", &corpus(file)]);
        let gens = v["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s.as_str().unwrap()).unwrap())
            .collect();
        let g = PermGroup::new(degree, gens).unwrap();
        assert_eq!(g.order().to_string(), v["order"].as_str().unwrap());
    }
}

#[test]
fn member_exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(
        code(&["member", "--formation", "supersoluble", &corpus("s3")]),
        0
    );
    assert_eq!(
        code(&[
            "member",
            "--formation",
            "supersoluble",
            "--mod",
            "(1 2)(3 4);(1 3)(2 4)",
            &corpus("s4")
        ]),
        0
    );
    assert_eq!(
        code(&[
            "member",
            "--formation",
            "supersoluble",
            "--mod",
            "(1 2)(3 4)",
            "--mod",
            "(1 3)(2 4)",
            &corpus("s4")
        ]),
        0
    );
    assert_eq!(
        code(&["member", "--formation", "nilpotent", &corpus("s4")]),
        1
    );
    assert_eq!(
        code(&[
            "member",
            "--formation",
            "nilpotent",
            "--mod",
            "(1 2)",
            &corpus("s4")
        ]),
        2
    );
}

#[test]
fn subnormal_reports_the_chain() {
    let v = json(&[
        "subnormal",
        "--formation",
        "supersoluble",
        "--kind",
        "k",
        &corpus("s4"),
    ]);
    assert_eq!(v["subnormal"], true);
    assert_eq!(v["chain"], serde_json::json!(["24", "8", "2"]));
    let o = run(&["subnormal", "--formation", "nilpotent", &corpus("s4")]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&[
        "subnormal",
        "--formation",
        "nilpotent",
        "--sub",
        "(1 2 3 4);(1 2)",
        &corpus("s4"),
    ]);
    assert_eq!(v["chain"], serde_json::json!(["24"]));
}

#[test]
fn error_exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(
        code(&["residual", "--formation", "bogus", &corpus("s4")]),
        2
    );
    assert_eq!(
        code(&["subnormal", "--formation", "noncentral(3)", &corpus("s4")]),
        3
    );
    assert_eq!(
        code(&["subnormal", "--formation", "nilpotent", &corpus("s5")]),
        2
    );
    assert_eq!(
        code(&[
            "oracle",
            "residual",
            "--formation",
            "nilpotent",
            "--max-order",
            "10",
            &corpus("s4")
        ]),
        4
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "degree: 4\ngen: (1 2)(2 3)\n").unwrap();
    let o = run(&["info", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn oracle_commands_agree_with_fast_path() {
    for file in ["s4", "sl23", "d8", "a5"] {
        for f in ["nilpotent", "supersoluble", "sylw(supersoluble, 2 3)"] {
            let fast = json(&["residual", "--formation", f, &corpus(file)]);
            let slow = json(&["oracle", "residual", "--formation", f, &corpus(file)]);
            assert_eq!(fast["order"], slow["order"], "{file} {f}");
        }
        let fast = run(&["subnormal", "--formation", "supersoluble", &corpus(file)]);
        let slow = run(&[
            "oracle",
            "subnormal",
            "--formation",
            "supersoluble",
            &corpus(file),
        ]);
        assert_eq!(fast.status.code(), slow.status.code(), "{file}");
    }
}

#[test]
fn output_is_deterministic_and_ordered() {
    let files: Vec<String> = ["s4", "a4", "q8", "s3xs3", "c12"]
        .iter()
        .map(|f| corpus(f))
        .collect();
    let mut args = vec!["residual", "--formation", "supersoluble", "--seed", "7"];
    args.extend(files.iter().map(String::as_str));
    let one = stdout(&run(&args));
    assert_eq!(one, stdout(&run(&args)));
    args.extend(["--jobs", "3"]);
    assert_eq!(one, stdout(&run(&args)));
    assert!(one.find("s4.grp").unwrap() < one.find("c12.grp").unwrap());
}

#[test]
fn sidecars_are_current() {
    let dir = tempfile::tempdir().unwrap();
    let mut stems = Vec::new();
    for e in std::fs::read_dir(corpus_dir()).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|x| x == "grp") {
            std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
            stems.push(p.file_stem().unwrap().to_owned());
        }
    }
    let o = run(&["regen-fixtures", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for s in stems {
        let name = PathBuf::from(&s).with_extension("expected.json");
        let fresh = std::fs::read_to_string(dir.path().join(&name)).unwrap();
        let bundled = std::fs::read_to_string(corpus_dir().join(&name)).unwrap();
        assert_eq!(fresh, bundled, "{}", name.display());
    }
}
