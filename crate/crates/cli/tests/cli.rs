use std::path::PathBuf;
use std::process::{Command, Output};

use eqloc::document::{parse, Document};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str], caps: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eqloc"));
    cmd.args(args);
    match caps {
        Some(c) => cmd.env("EQLOC_CAPS", c),
        None => cmd.env_remove("EQLOC_CAPS"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("eqloc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn z2_fixture_parses() {
    let text = std::fs::read_to_string(fixture("z2_example.json")).unwrap();
    let ws = parse(&text, None).unwrap();
    assert_eq!(ws.categories.len(), 1);
    assert_eq!(ws.diagrams.len(), 3);
    assert_eq!(ws.maps.len(), 2);
}

#[test]
fn broken_composition_names_triple() {
    let text = std::fs::read_to_string(fixture("broken_composition.json")).unwrap();
    let err = parse(&text, None).unwrap_err().to_string();
    assert!(err.contains("associativity"), "{err}");
    assert!(err.contains("(a, a, a)"), "{err}");
    assert!(err.contains("line"), "{err}");
    let o = run(&["colim", "--doc", &fixture("broken_composition.json"), "--diagram", "X"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn empty_file_is_empty_workspace() {
    let ws = parse("", None).unwrap();
    assert!(ws.categories.is_empty() && ws.sets.is_empty() && ws.diagrams.is_empty() && ws.maps.is_empty());
    let o = run(&["colim", "--doc", &fixture("empty.json"), "--diagram", "X"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown name"));
}

#[test]
fn syntax_error_has_position() {
    let err = parse("{\n  \"schema\": \"eqloc/1\",\n  \"sets\": [ }\n", None).unwrap_err().to_string();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn pi0_of_connected_complex() {
    let o = run(&["pi", "--doc", &fixture("terminal_maps.json"), "--complex", "S1", "--n", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["pi", "--doc", &fixture("terminal_maps.json"), "--complex", "A", "--n", "0"], None);
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn pi1_rejects_non_kan() {
    let o = run(&["pi", "--doc", &fixture("terminal_maps.json"), "--complex", "S1", "--n", "1"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Kan"));
}

#[test]
fn factorize_emits_trace_and_rlp_report() {
    let out = tmp("fact.json");
    let o = run(
        &["factorize", "--doc", &fixture("terminal_maps.json"), "--map", "f", "--class", "I", "--n-cap", "2", "--stages", "4", "--out", &out],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Document = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rlp = &doc.reports["delta_rlp"];
    assert_eq!(rlp["holds"], true);
    assert_eq!(rlp["n_cap"], 2);
    assert_eq!(doc.reports["trace"]["stop"], "stabilized");
    for r in doc.reports.values() {
        assert!(r.get("truncated").is_some() && r.get("caps").is_some());
    }
    assert!(doc.provenance.contains_key("f.Z"));

    let o = run(&["replay", "--doc", &out], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("identical"));
}

#[test]
fn factorize_budget_is_inconclusive() {
    let o = run(
        &["factorize", "--doc", &fixture("terminal_maps.json"), "--map", "circle_to_point", "--class", "J", "--n-cap", "2", "--stages", "1"],
        None,
    );
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn replay_detects_edits() {
    let out = tmp("colim.json");
    let o = run(&["colim", "--doc", &fixture("z2_example.json"), "--diagram", "X", "--out", &out], None);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let edited = tmp("colim_edited.json");
    std::fs::write(&edited, text.replacen("\"a\"", "\"z\"", 1)).unwrap();
    assert_eq!(run(&["replay", "--doc", &out], None).status.code(), Some(0));
    assert_eq!(run(&["replay", "--doc", &edited], None).status.code(), Some(1));
}

#[test]
fn localize_fixed_pointwise() {
    let out = tmp("loc.json");
    let o = run(
        &[
            "localize",
            "--doc",
            &fixture("z2_example.json"),
            "--diagram",
            "X",
            "--fixedpointwise-f",
            "empty-to-point",
            "--n-cap",
            "2",
            "--stages",
            "3",
            "--out",
            &out,
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Document = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rep = &doc.reports["localization"];
    assert_eq!(rep["stop"], "stabilized");
    assert_eq!(rep["s_local"], "yes");
    for orbit in rep["locality"].as_array().unwrap() {
        assert_eq!(orbit["pi0"], 1);
        assert_eq!(orbit["kan"], true);
    }
    assert!(doc.diagrams.iter().any(|d| d.name == "X.L"));
}

#[test]
fn locality_of_free_orbit() {
    let o = run(
        &["locality", "--doc", &fixture("z2_example.json"), "--diagram", "T_free", "--fixedpointwise-f", "empty-to-point", "--json"],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let doc: Document = serde_json::from_str(&stdout(&o)).unwrap();
    let orbits = doc.reports["locality"]["orbits"].as_array().unwrap();
    assert!(orbits.iter().any(|r| r["pi0"] == 0 && r["local"] == "no"));
}

#[test]
fn caps_variable_sets_defaults() {
    let run_with = |caps: Option<&str>| {
        let o = run(&["factorize", "--doc", &fixture("terminal_maps.json"), "--map", "f", "--class", "I", "--json"], caps);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let doc: Document = serde_json::from_str(&stdout(&o)).unwrap();
        doc.reports["delta_rlp"]["n_cap"].as_u64().unwrap()
    };
    assert_eq!(run_with(None), 2);
    assert_eq!(run_with(Some("n_cap=1")), 1);
    let o = run(&["pi", "--doc", &fixture("terminal_maps.json"), "--complex", "S1", "--n", "0"], Some("depth=3"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_is_seeded() {
    let a = run(&["random", "--seed", "11", "--cells", "8", "--json"], None);
    let b = run(&["random", "--seed", "11", "--cells", "8", "--json"], None);
    assert_eq!(a.stdout, b.stdout);
    let doc: Document = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc.sets.len(), 1);
}

#[test]
fn other_commands_run() {
    let t = fixture("terminal_maps.json");
    let z = fixture("z2_example.json");
    for args in [
        vec!["orbits", "--doc", &z, "--diagram", "X"],
        vec!["homcx", "--doc", &z, "--source", "T_free", "--diagram", "X"],
        vec!["cone", "--doc", &t, "--diagram", "P"],
        vec!["nullcheck", "--doc", &t, "--map", "f"],
        vec!["rlp", "--doc", &t, "--map", "pt_in", "--against", "f"],
    ] {
        let o = run(&args, None);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}
