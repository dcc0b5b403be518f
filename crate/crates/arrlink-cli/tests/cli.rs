use std::path::Path;
use std::process::{Command, Output};

use arrlink::arrangement::Arrangement;
use proptest::prelude::*;
use serde_json::Value;

fn arrlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrlink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = arrlink(&all);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&out)));
    (value, out.status.code().unwrap())
}

fn text(args: &[&str]) -> (String, i32) {
    let out = arrlink(args);
    (stdout(&out), out.status.code().unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_generic_arrangement_has_the_lower_tjurina_number() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("a.arr");
    let out = arrlink(&["gen", "--family", "generic:5", "--seed", "7", "-o", path_str(&file)]);
    assert!(out.status.success());
    let (t, code) = text(&["tjurina", path_str(&file)]);
    assert_eq!(code, 0);
    assert!(t.contains("tau = 10\n"), "{t}");
    assert!(t.contains("lower_eq = true\n"), "{t}");
    let (j, _) = json(&["tjurina", path_str(&file)]);
    assert_eq!(j["tau"], 10);
    assert_eq!(j["lower_eq"], true);
}

#[test]
fn betti_of_connected_pencils_is_free() {
    let (t, code) = text(&["betti", "--family", "connected2pencil:3,4"]);
    assert_eq!(code, 0);
    assert!(t.contains("free = true"), "{t}");
    // d = 6 with pencils of 3 and 4 lines: exponents (2, 3).
    assert!(t.contains("top       S(-5)^3 <- S(-7) + S(-8)   ["), "{t}");
    for line in t.lines().filter(|l| l.contains(" <- ")) {
        assert!(line.trim_end().ends_with(']'), "untagged table line: {line}");
    }
    let (j, _) = json(&["betti", "--family", "connected2pencil:3,4"]);
    assert_eq!(j["free"], true);
    assert_eq!(j["top"]["modules"], serde_json::json!([[5, 5, 5], [7, 8]]));
    assert_eq!(j["residual"]["rule"], "two connected pencils");
}

#[test]
fn verify_braid_arrangement_passes() {
    let (t, code) = text(&["verify", "--family", "fermat:2", "--max-degree", "12"]);
    assert_eq!(code, 0, "{t}");
    assert!(t.contains(", 0 failed"), "{t}");
    assert!(!t.contains("FAIL"));
}

#[test]
fn prime_field_mode_reports_the_same_numbers() {
    let (q, _) = json(&["verify", "--family", "near-pencil:5"]);
    let (zp, code) = json(&["verify", "--family", "near-pencil:5", "--field", "zp"]);
    assert_eq!(code, 0);
    assert_eq!(q["checks"], zp["checks"]);
}

#[test]
fn json_and_text_carry_the_same_numbers() {
    for family in ["generic:5", "near-pencil:6", "three-pencils:iii,2,2,2", "connected2pencil:3,5"] {
        let (j, _) = json(&["tjurina", "--family", family]);
        let (t, _) = text(&["tjurina", "--family", family]);
        assert!(t.contains(&format!("tau = {}\n", j["tau"])), "{family}");
        assert!(t.contains(&format!("lower = {}\n", j["lower"])), "{family}");
        assert!(t.contains(&format!("lower_eq = {}\n", j["lower_eq"])), "{family}");
        for (key, flag) in [("upper_b", "b_eq"), ("upper_c", "c_eq")] {
            if !j[key].is_null() {
                assert!(t.contains(&format!("{key} = {}\n{flag} = {}\n", j[key], j[flag])), "{family}");
            }
        }

        let (j, _) = json(&["analyze", "--family", family]);
        let (t, _) = text(&["analyze", "--family", family]);
        assert!(t.contains(&format!("flats = {}\n", j["flats"].as_array().unwrap().len())));
        assert!(t.contains(&format!("residual degree = {}\n", j["residual_degree"])));
        assert!(t.contains(&format!("holds = {}\n", j["lattice_identity"]["holds"])));

        let (j, _) = json(&["freeness", "--family", family]);
        let (t, _) = text(&["freeness", "--family", family]);
        assert!(t.contains(&format!("free = {}\n", j["free"])), "{family}");
        if let Some(e) = j["exponents"].as_array() {
            assert!(t.contains(&format!("exponents = ({}, {})", e[0], e[1])));
        }

        let (j, _) = json(&["verify", "--family", family]);
        let (t, _) = text(&["verify", "--family", family]);
        let checks = j["checks"].as_array().unwrap();
        assert!(t.contains(&format!("{} checks", checks.len())));
        for c in checks {
            let status = match c["passed"].as_bool() {
                Some(true) => "pass",
                Some(false) => "FAIL",
                None => "skip",
            };
            let name = c["name"].as_str().unwrap();
            assert!(
                t.lines().any(|l| l.trim_start().starts_with(status) && l.contains(name)),
                "{family}: {name}"
            );
        }
    }
}

#[test]
fn gen_round_trips_through_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["generic:6", "disconnected:3,3;s=1", "fermat:2", "generic:4,3", "simplex:3"] {
        let txt = dir.path().join("a.arr");
        let js = dir.path().join("a.json");
        assert!(arrlink(&["gen", "--family", family, "-o", path_str(&txt)]).status.success());
        assert!(arrlink(&["gen", "--family", family, "--format", "json", "-o", path_str(&js)])
            .status
            .success());
        let written = std::fs::read_to_string(&txt).unwrap();
        let a = Arrangement::parse(&written).unwrap();
        assert_eq!(a.to_text(), written);
        let b = Arrangement::parse(&std::fs::read_to_string(&js).unwrap()).unwrap();
        assert_eq!(b.to_text(), written, "{family}");
        // Regenerating from the file gives the file back.
        let (again, code) = text(&["gen", path_str(&txt)]);
        assert_eq!(code, 0);
        assert_eq!(again, written);
    }
}

#[test]
fn refusals_are_structured() {
    let (j, code) = json(&["verify", "--family", "generic:13"]);
    assert_eq!(code, 3);
    assert_eq!(j["status"], "hypothesis not met");
    assert_eq!(j["kind"], "oracle cap exceeded");

    let (j, code) = json(&["freeness", "--family", "generic:4,3"]);
    assert_eq!(code, 3);
    assert_eq!(j["kind"], "hypothesis not met");

    let (t, code) = text(&["tjurina", "--family", "generic:2"]);
    assert_eq!(code, 3);
    assert!(t.contains("hypothesis not met"));

    // Closed forms need no oracle, so a large instance still gets tables.
    let (j, code) = json(&["betti", "--family", "disconnected:5,5;s=6"]);
    assert_eq!(code, 0);
    assert_eq!(j["rule"], "disconnected pencils closed form");
    assert_eq!(j["milnor_self_dual"], true);
}

#[test]
fn input_errors_name_the_offending_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.arr");
    std::fs::write(&file, "2 3\n1 0 0\n# comment\n2 0 0\n0 1 0\n").unwrap();
    let out = arrlink(&["analyze", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4") && err.contains("proportional"), "{err}");

    std::fs::write(&file, "2 2\n1 0 x\n0 1 0\n").unwrap();
    let out = arrlink(&["analyze", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = arrlink(&["analyze", "--family", "nonsense:3"]);
    assert_eq!(out.status.code(), Some(2));

    // Exactly one input source.
    let out = arrlink(&["analyze", path_str(&file), "--family", "generic:3"]);
    assert!(!out.status.success());
    let out = arrlink(&["analyze"]);
    assert!(!out.status.success());
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 6,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn generated_generic_files_parse_back(d in 3usize..9, seed in 0u64..1000) {
        let family = format!("generic:{d}");
        let seed = seed.to_string();
        let (t, code) = text(&["gen", "--family", &family, "--seed", &seed]);
        prop_assert_eq!(code, 0);
        let a = Arrangement::parse(&t).unwrap();
        prop_assert_eq!(a.d(), d);
        prop_assert_eq!(a.to_text(), t);
        let (j, _) = json(&["tjurina", "--family", &family, "--seed", &seed]);
        prop_assert_eq!(j["tau"].as_u64(), Some((d * (d - 1) / 2) as u64));
    }
}
