//! Shared runner for the binary and its golden JSON reports.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

/// `(golden name, arguments, expected exit code)` for every command.
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    (
        "count_complete_2_2",
        &["count", "--family", "complete", "--d", "2", "--h", "2"],
        0,
    ),
    (
        "count_cat_3_7",
        &[
            "count", "--family", "cat", "--d", "3", "--n", "7", "--method", "formula",
        ],
        0,
    ),
    (
        "count_c3_2_brute",
        &[
            "count",
            "--newick",
            "fixtures/families/c3_2.nwk",
            "--method",
            "brute",
        ],
        0,
    ),
    (
        "count_corpus_5",
        &[
            "count",
            "--newick",
            "fixtures/corpus/n5.nwk",
            "--method",
            "enumerate",
        ],
        0,
    ),
    (
        "enumerate_c2_3",
        &["enumerate", "--newick", "fixtures/families/c2_3.nwk"],
        0,
    ),
    ("kappa_2_16", &["kappa", "--d", "2", "--digits", "16"], 0),
    ("kappa_7_40", &["kappa", "--d", "7", "--digits", "40"], 0),
    ("table_kappa_10", &["table", "--kappa", "--d-max", "10"], 0),
    (
        "table_complete_3_4",
        &["table", "--complete", "--d", "3", "--h-max", "4"],
        0,
    ),
    ("floor_2_5", &["floor", "--d", "2", "--h", "5"], 0),
    ("floor_3_4", &["floor", "--d", "3", "--h", "4"], 1),
    (
        "verify_theorem1_6",
        &["verify", "--theorem1", "--n-max", "6"],
        0,
    ),
    (
        "verify_prop7_10",
        &["verify", "--prop7", "--d-max", "10"],
        0,
    ),
    (
        "verify_prop8_2_10",
        &["verify", "--prop8", "--d", "2", "--h-max", "10"],
        0,
    ),
    (
        "verify_prop8_3_6",
        &["verify", "--prop8", "--d", "3", "--h-max", "6"],
        1,
    ),
    (
        "verify_lemma1_3_5",
        &["verify", "--lemma1", "--d", "3", "--n", "5"],
        0,
    ),
    (
        "verify_oracle_5",
        &["verify", "--oracle", "--n-max", "5"],
        0,
    ),
];

pub fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_leafsub"))
        .args(args)
        .current_dir(manifest())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

pub fn check_schema(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    if keys != ["checks", "command", "inputs", "results"] {
        return Err(format!("report keys {keys:?}"));
    }
    if !obj["command"].is_string() || !obj["inputs"].is_object() || !obj["results"].is_object() {
        return Err("command, inputs or results has the wrong type".into());
    }
    for check in obj["checks"].as_array().ok_or("checks is not an array")? {
        let c = check.as_object().ok_or("check is not an object")?;
        let mut keys: Vec<&str> = c.keys().map(String::as_str).collect();
        keys.sort_unstable();
        if keys != ["actual", "expected", "name", "pass"] {
            return Err(format!("check keys {keys:?}"));
        }
        if !c["name"].is_string() || !c["pass"].is_boolean() {
            return Err("check name or pass has the wrong type".into());
        }
    }
    Ok(())
}

/// Runs one case with `--json` and compares it with its golden file.
/// `UPDATE_GOLDEN=1` rewrites the file first.
pub fn check_golden(name: &str, args: &[&str], exit: i32) -> Result<(), String> {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, stdout, stderr) = run(&full);
    if code != exit {
        return Err(format!("{name}: exit {code}, expected {exit}: {stderr}"));
    }
    let actual: Value = serde_json::from_str(&stdout).map_err(|e| format!("{name}: {e}"))?;
    check_schema(&actual).map_err(|e| format!("{name}: {e}"))?;
    let passed = actual["checks"]
        .as_array()
        .is_some_and(|cs| cs.iter().all(|c| c["pass"] == true));
    if passed != (exit == 0) {
        return Err(format!("{name}: checks disagree with the exit code"));
    }
    let path = manifest().join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        let text = serde_json::to_string_pretty(&actual).unwrap() + "\n";
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
    }
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let expected: Value = serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
    if actual != expected {
        return Err(format!("{name}: report differs from {}", path.display()));
    }
    Ok(())
}
