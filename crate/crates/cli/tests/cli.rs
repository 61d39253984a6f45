use std::process::Command;

use branchjac_cli::{run, Outcome, EXIT_MISMATCH, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION};
use serde_json::Value;

const EX2: &str = "(y^2-x^3)^2-x^5*y";
const EX1: &str = "(y^3-6*x^3*y-x^4)^2-9*x^9";

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("branchjac").chain(args.iter().copied()))
}

fn json_of(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).expect("stdout is JSON")
}

#[test]
fn semigroup_of_both_examples() {
    let o = cli(&["semigroup", "--f", EX2]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("semigroup: ⟨4,6,13⟩"));
    assert!(o.stdout.contains("milnor: 16"));

    let o = cli(&["semigroup", "--f", EX1, "--json"]);
    let v = json_of(&o);
    assert_eq!(v["semigroup"], serde_json::json!([6, 8, 27]));
    assert_eq!(v["characteristic"], serde_json::json!([6, 8, 11]));
    assert_eq!(v["l"], serde_json::json!([6, 2, 1]));
    assert_eq!(v["n"], serde_json::json!([3, 2]));
    assert_eq!(v["milnor"], 38);
}

#[test]
fn roots_are_printed() {
    let o = cli(&["roots", "--f", EX2]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("f^(0) = y\n"));
    assert!(o.stdout.contains("f^(1) = y^2 - x^3\n"));
}

#[test]
fn jnd_family_json_and_recover_round_trip() {
    let o = cli(&["jnd", "--semigroup", "4,6,13", "--k", "all", "--json"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(
        o.stdout,
        "{\"semigroup\":[4,6,13],\"diagrams\":[{\"k\":0,\"segments\":[[8,2],[13,3]]},{\"k\":1,\"segments\":[[28,14]]}]}\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fam.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let r = cli(&["recover", "--family", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    assert_eq!(r.stdout, "4,6,13\n");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["demo-noninjectivity", "--json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a, b);
    let c = cli(&["jnd", "--f", EX1, "--k", "all", "--verify", "--json"]);
    let d = cli(&["jnd", "--f", EX1, "--k", "all", "--verify", "--json"]);
    assert_eq!(c, d);
}

#[test]
fn recover_rejects_truncated_family() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tail.json");
    std::fs::write(&path, r#"{"diagrams":[{"k":1,"segments":[[72,36]]}]}"#).unwrap();
    let r = cli(&["recover", "--family", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_VALIDATION);
    assert!(r.stderr.contains("labels"), "{}", r.stderr);
}

#[test]
fn recover_flags_inconsistent_claim() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lie.json");
    std::fs::write(
        &path,
        r#"{"semigroup":[4,6,15],"diagrams":[{"k":0,"segments":[[8,2],[13,3]]},{"k":1,"segments":[[28,14]]}]}"#,
    )
    .unwrap();
    let r = cli(&["recover", "--family", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_MISMATCH);
    assert!(r.stdout.starts_with("4,6,13\n"));
}

#[test]
fn recover_reports_malformed_json_as_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{not json").unwrap();
    let r = cli(&["recover", "--family", path.to_str().unwrap(), "--json"]);
    assert_eq!(r.code, EXIT_PARSE);
    let v: Value = serde_json::from_str(&r.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "json");
    assert_eq!(v["error"]["exit_code"], EXIT_PARSE);
}

#[test]
fn jnd_verify_passes_on_examples() {
    for f in [EX2, EX1] {
        let o = cli(&["jnd", "--f", f, "--k", "all", "--verify", "--json"]);
        assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
        let v = json_of(&o);
        assert_eq!(v["pass"], true);
        for entry in v["oracle"].as_array().unwrap() {
            assert_eq!(entry["agrees"], true);
        }
    }
}

#[test]
fn verify_subcommand_text() {
    let o = cli(&["verify", "--f", EX2, "--k", "0"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("Teissier"));
    assert!(o.stdout.ends_with("verification: PASS\n"));
    assert!(!o.stdout.contains("[FAIL]"));
}

#[test]
fn invariants_of_example() {
    let o = cli(&["invariants", "--semigroup", "4,6,13"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("k=0: 4, 13/3\n"));
    assert!(o.stdout.contains("k=1: 2\n"));
}

#[test]
fn demo_prints_both_collisions() {
    let o = cli(&["demo-noninjectivity"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.matches("{72\\36}").count(), 4);
    assert_eq!(o.stdout.matches("{76\\38}").count(), 4);
    assert!(o.stdout.contains("pairwise distinct: yes"));
}

#[test]
fn svg_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("d.svg");
    let o = cli(&[
        "jnd",
        "--semigroup",
        "4,6,13",
        "--svg",
        base.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    for k in 0..2 {
        let svg = std::fs::read_to_string(dir.path().join(format!("d.k{k}.svg"))).unwrap();
        assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
        assert!(svg.contains("</svg>"));
    }
    let one = dir.path().join("one.svg");
    let o = cli(&[
        "jnd",
        "--semigroup",
        "4,6,13",
        "--k",
        "1",
        "--svg",
        one.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert!(one.exists());
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["semigroup", "--f", "y^2-x^"]).code, EXIT_PARSE);
    assert_eq!(cli(&["jnd", "--semigroup", "4,a,13"]).code, EXIT_PARSE);
    assert_eq!(cli(&["jnd", "--semigroup", "4,7,13"]).code, EXIT_VALIDATION);
    assert_eq!(
        cli(&["jnd", "--semigroup", "4,6,13", "--k", "2"]).code,
        EXIT_VALIDATION
    );
    assert_eq!(cli(&["semigroup", "--f", "y^2-x^2"]).code, EXIT_VALIDATION);
    assert_eq!(
        cli(&["jnd", "--semigroup", "4,6,13", "--verify"]).code,
        EXIT_PARSE
    );
    assert_eq!(cli(&["no-such-command"]).code, EXIT_PARSE);
    assert_eq!(cli(&[]).code, EXIT_PARSE);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
    assert_eq!(
        cli(&["--batch", "tasks.txt", "demo-noninjectivity"]).code,
        EXIT_PARSE
    );
}

#[test]
fn parse_error_json_on_stderr() {
    let o = cli(&["semigroup", "--f", "y^2 - x^3 +", "--json"]);
    assert_eq!(o.code, EXIT_PARSE);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("column"));
}

#[test]
fn batch_preserves_order_and_takes_worst_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tasks.txt");
    let mut lines = vec!["# header".to_string(), String::new()];
    for gens in ["4,6,13", "4,14,31", "4,6,35", "6,10,31", "6,8,27"] {
        lines.push(format!("jnd --semigroup {gens} --k all"));
    }
    lines.push(format!("semigroup --f '{EX2}'"));
    lines.push("invariants --semigroup 4,7,13".into());
    std::fs::write(&path, lines.join("\n")).unwrap();

    let o = cli(&["--batch", path.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_VALIDATION);
    let order: Vec<usize> = ["⟨4,6,13⟩", "⟨4,14,31⟩", "⟨4,6,35⟩", "⟨6,10,31⟩", "⟨6,8,27⟩"]
        .iter()
        .map(|s| o.stdout.find(&format!("semigroup: {s}\nN_J")).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{order:?}");
    assert!(o.stdout.contains("milnor: 16"));
    assert!(o.stderr.starts_with("line 9: "), "{}", o.stderr);

    let j = cli(&["--json", "--batch", path.to_str().unwrap()]);
    let first = j.stdout.lines().next().unwrap();
    let v: Value = serde_json::from_str(first).unwrap();
    assert_eq!(v["semigroup"], serde_json::json!([4, 6, 13]));
    assert_eq!(j.stdout.lines().count(), 6);
}

#[test]
fn binary_exit_status_matches() {
    let bin = env!("CARGO_BIN_EXE_branchjac");
    let ok = Command::new(bin)
        .args(["jnd", "--semigroup", "4,6,13", "--k", "0"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("{8\\2} + {13\\3}"));
    let bad = Command::new(bin)
        .args(["semigroup", "--f", "y^^2", "--json"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_PARSE));
    assert!(bad.stdout.is_empty());
}
