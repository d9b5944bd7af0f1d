use casson_cli::run;
use casson_core::invariants::{bundled_db, find, render_db, KnotRecord};

fn cli(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("casson").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = cli(args, "");
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

fn temp_path(tag: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("casson-cli-{tag}-{}.json", std::process::id()))
}

#[test]
fn headline_numbers() {
    assert_eq!(ok(&["lambda", "trefoil"]), "3\n");
    assert_eq!(ok(&["lambda", "figure-8"]), "4\n");
    assert_eq!(ok(&["surgery", "intersect", "trefoil", "-p", "1", "-q", "5"]), "total 29\n");
    assert_eq!(ok(&["transversal", "1/0", "0/1"]), "transverse (det=1)\n");
    assert_eq!(ok(&["alexander-double", "-n", "0"]), "1\n");
    assert_eq!(ok(&["lambda", "--ahat", "m^6*l + 1"]), "3\n");
}

#[test]
fn negative_arguments_parse() {
    let out = ok(&["transversal", "-1/2", "3/-5"]);
    assert!(out.starts_with("transverse"), "{out}");
    ok(&["surgery", "intersect", "trefoil", "-p", "-1", "-q", "5"]);
    ok(&["seminorm", "trefoil", "-a", "-1", "-b", "2"]);
}

#[test]
fn points_total_matches_count() {
    let out = ok(&["--json", "surgery", "intersect", "trefoil", "-p", "1", "-q", "5", "--points"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 29);
    let mult: u64 = v["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["mult"].as_u64().unwrap())
        .sum();
    assert_eq!(mult, 29);
}

#[test]
fn csv_sweep() {
    let out = ok(&["--format", "csv", "lambda-asym", "trefoil", "-p", "1", "--q-max", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "q,estimate,decimal");
    assert_eq!(lines[1], "1,5/2,2.5");
    assert_eq!(lines.len(), 5);
    let (code, _, err) = cli(&["--format", "csv", "lambda", "trefoil"], "");
    assert_eq!(code, 2, "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&[], "").0, 2);
    assert_eq!(cli(&["lambda"], "").0, 2);
    assert_eq!(cli(&["lambda", "trefoil", "--ahat", "1"], "").0, 2);
    assert_eq!(cli(&["lambda", "nosuch"], "").0, 1);
    assert_eq!(cli(&["lambda-asym", "trefoil", "-p", "1", "--q-max", "1"], "").0, 2);
    assert_eq!(cli(&["surgery", "intersect", "trefoil", "-p", "2", "-q", "4"], "").0, 1);
    assert_eq!(cli(&["surgery", "intersect", "trefoil", "-p", "1", "-q", "2000000"], "").0, 2);
    assert_eq!(cli(&["seminorm", "trefoil", "-a", "1", "-b", "0", "--trials", "0"], "").0, 2);
    assert_eq!(cli(&["whitehead", "verify", "--samples", "0"], "").0, 2);
    assert_eq!(cli(&["lambda", "--ahat", "m^"], "").0, 1);
    assert_eq!(cli(&["--help"], "").0, 0);
}

#[test]
fn json_errors_go_to_stdout() {
    let (code, out, err) = cli(&["--json", "lambda", "nosuch"], "");
    assert_eq!(code, 1);
    assert!(err.is_empty());
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["exit_code"], 1);
    assert_eq!(v["error"]["kind"], "invariants");
}

#[test]
fn admissible_uses_alexander() {
    // Trefoil Δ vanishes at primitive sixth roots of unity.
    let out = ok(&["admissible", "trefoil", "-p", "12"]);
    assert!(out.starts_with("not admissible"), "{out}");
    assert!(ok(&["admissible", "--alexander", "1", "-p", "12"]).starts_with("admissible"));
}

#[test]
fn apoly_from_stdin() {
    let rec = find(&bundled_db(), "trefoil").unwrap().clone();
    let json = serde_json::to_string(rec.presentation.as_ref().unwrap()).unwrap();
    let (code, out, err) = cli(&["apoly", "--presentation", "-"], &json);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.trim(), rec.ahat.to_string());
    assert_eq!(cli(&["apoly", "--presentation", "-"], "{").0, 1);
}

#[test]
fn whitehead_commands() {
    assert!(ok(&["whitehead", "verify", "--samples", "20"]).contains(" 0 failures"));
    let out = ok(&["--json", "whitehead", "glue", "trefoil", "--seeds", "20"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for s in v["solutions"].as_array().unwrap() {
        assert!(s["residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn db_validate() {
    assert!(ok(&["db", "validate"]).starts_with("8 records"));

    let mut recs = bundled_db();
    recs.push(KnotRecord {
        name: "stray".into(),
        provenance: "hand entered".into(),
        presentation: None,
        ..recs[1].clone()
    });
    let path = temp_path("db");
    std::fs::write(&path, render_db(&recs)).unwrap();
    let (code, out, _) = cli(&["--db", path.to_str().unwrap(), "db", "validate"], "");
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 1);
    assert!(out.contains("stray"), "{out}");

    let path = temp_path("bad");
    std::fs::write(&path, "[{\"name\": 3}]").unwrap();
    let (code, _, _) = cli(&["--db", path.to_str().unwrap(), "lambda", "trefoil"], "");
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 1);
}
