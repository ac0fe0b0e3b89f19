// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cliffdepth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

/// A fresh scratch directory per test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cliffdepth-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn p(dir: &Path, file: &str) -> String {
    dir.join(file).to_string_lossy().into_owned()
}

#[test]
fn gen_is_deterministic() {
    for kind in ["cz", "linear", "tableau"] {
        let a = run(&["gen", "--kind", kind, "--n", "5", "--seed", "1"]);
        let b = run(&["gen", "--kind", kind, "--n", "5", "--seed", "1"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{kind}");
        let c = run(&["gen", "--kind", kind, "--n", "5", "--seed", "2"]);
        assert_ne!(a.stdout, c.stdout, "{kind}");
    }
}

#[test]
fn synth_cz_then_phase_verify() {
    let d = scratch("cz");
    let (spec, circ) = (p(&d, "s.mat"), p(&d, "c.circ"));
    assert!(run(&["gen", "--kind", "cz", "--n", "8", "--seed", "3", "--out", &spec]).status.success());
    for strategy in ["auto", "coloring", "onestep", "twostep"] {
        let out = run(&["synth-cz", "--input", &spec, "--out", &circ, "--strategy", strategy]);
        assert_eq!(out.status.code(), Some(0), "{strategy}");
        let line = String::from_utf8(out.stdout).unwrap();
        assert!(line.contains("depth=") && line.contains("bound="), "{line}");
        let v = run(&["verify", "--circuit", &circ, "--against", &spec, "--oracle", "phase"]);
        assert_eq!(v.status.code(), Some(0), "{strategy}");
    }
}

#[test]
fn tampered_circuit_fails_verification() {
    let d = scratch("tamper");
    let (spec, circ) = (p(&d, "s.mat"), p(&d, "c.circ"));
    run(&["gen", "--kind", "cz", "--n", "6", "--seed", "4", "--out", &spec]);
    run(&["synth-cz", "--input", &spec, "--out", &circ]);
    let mut text = std::fs::read_to_string(&circ).unwrap();
    text.push_str("CZ 0 1\n");
    std::fs::write(&circ, text).unwrap();
    for oracle in ["auto", "tableau", "phase"] {
        let v = run(&["verify", "--circuit", &circ, "--against", &spec, "--oracle", oracle]);
        assert_eq!(v.status.code(), Some(1), "{oracle}");
    }
}

#[test]
fn synth_cnot_modes_verify() {
    let d = scratch("cnot");
    let (m, circ) = (p(&d, "r.mat"), p(&d, "c.circ"));
    run(&["gen", "--kind", "linear", "--n", "24", "--seed", "5", "--out", &m]);
    for mode in ["exact", "perm"] {
        let out = run(&["synth-cnot", "--input", &m, "--mode", mode, "--cnot-only", "--out", &circ]);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        let text = std::fs::read_to_string(&circ).unwrap();
        assert!(text.lines().skip(1).all(|l| l.starts_with("CNOT") || l.starts_with("perm")));
        assert_eq!(text.contains("perm"), mode == "perm");
        for oracle in ["auto", "linear", "tableau"] {
            let v = run(&["verify", "--circuit", &circ, "--against", &m, "--oracle", oracle]);
            assert_eq!(v.status.code(), Some(0), "{mode} {oracle}");
        }
    }
}

#[test]
fn synth_clifford_reports_json() {
    let d = scratch("clifford");
    let (t, circ) = (p(&d, "t.tab"), p(&d, "c.circ"));
    run(&["gen", "--kind", "tableau", "--n", "48", "--seed", "6", "--out", &t]);
    let out = run(&["--json", "synth-clifford", "--input", &t, "--out", &circ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["family"], "clifford");
    assert_eq!(v["n"], 48);
    assert_eq!(v["verified"], true);
    assert!(v["depth"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    assert!(v["depth"].as_i64().unwrap() <= v["closed_form"].as_i64().unwrap());
    let check = run(&["verify", "--circuit", &circ, "--against", &t]);
    assert_eq!(check.status.code(), Some(0));
    let self_check = run(&["verify", "--circuit", &circ, "--against", &circ]);
    assert_eq!(self_check.status.code(), Some(0));
}

#[test]
fn bounds_validate_lists_every_claim() {
    let out = run(&["bounds", "--validate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for family in ["cz ", "cz-basic", "cnot ", "clifford"] {
        let line = text.lines().find(|l| l.starts_with(family)).unwrap();
        assert!(line.ends_with("satisfied"), "{line}");
    }
    assert!(text.contains("crossover cnot=70"));
}

#[test]
fn bounds_csv_rows() {
    let d = scratch("csv");
    let csv = p(&d, "cz.csv");
    let out = run(&["bounds", "--family", "cz", "--from", "4", "--to", "100", "--csv", &csv]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,prior,closed_form,recursion"));
    let rows: Vec<Vec<i64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 97);
    assert_eq!(rows[0], vec![4, 3, rows[0][2], 3]);
    for r in rows.iter().filter(|r| r[0] >= 39) {
        assert!(r[3] <= r[2] && r[3] <= r[1], "{r:?}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["synth-cz"]).status.code(), Some(2));
    assert_eq!(run(&["synth-cz", "--input", "/nonexistent/x.mat"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--kind", "cz", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--from", "10", "--to", "5"]).status.code(), Some(2));
    assert_eq!(run(&["synth-cz", "--input", "x", "--strategy", "bogus"]).status.code(), Some(2));
}
