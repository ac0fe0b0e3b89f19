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

//! Browser bindings. Every export returns a JSON string; errors come back
//! as a thrown string.
//!
//! The `*_json` functions hold the logic so they can be tested natively.

use cliffdepth::bounds::{prior_art_bound, MAX_N};
use cliffdepth::random::{random_cz_spec, random_invertible, rng_from_seed};
use cliffdepth::verify::{implements_cz_spec, linear_action_clifford};
use cliffdepth::{
    synth_cz_with, synth_linear, Circuit, DepthTables, Family, Gate, LinearReversible,
    StrategyChoice, SynthMode,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest instance the page will synthesize.
pub const DEMO_MAX_QUBITS: usize = 256;

/// Largest `to` accepted by [`depth_curves_json`].
pub const CURVE_MAX_N: usize = 100_000;

fn check_size(n: usize, lo: usize) -> Result<(), String> {
    if (lo..=DEMO_MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must be between {lo} and {DEMO_MAX_QUBITS}"))
    }
}

/// Gates with the ASAP layer of each two-qubit gate (single-qubit gates get
/// the layer of the next two-qubit gate on their qubit).
fn layered(c: &Circuit) -> Value {
    let mut level = vec![0usize; c.qubit_count()];
    let gates: Vec<Value> = c
        .gates()
        .iter()
        .map(|g| {
            let layer = match g.pair() {
                Some((a, b)) => {
                    let l = level[a].max(level[b]);
                    level[a] = l + 1;
                    level[b] = l + 1;
                    l
                }
                None => level[g.max_qubit()],
            };
            let (name, qubits) = match *g {
                Gate::Cz(a, b) => ("CZ", vec![a, b]),
                Gate::Cnot { control, target } => ("CNOT", vec![control, target]),
                Gate::H(q) => ("H", vec![q]),
                Gate::P(q) => ("P", vec![q]),
                Gate::X(q) => ("X", vec![q]),
                Gate::Z(q) => ("Z", vec![q]),
            };
            json!({ "name": name, "qubits": qubits, "layer": layer })
        })
        .collect();
    Value::Array(gates)
}

pub fn synthesize_cz_json(n: usize, seed: u64, strategy: &str) -> Result<String, String> {
    check_size(n, 2)?;
    let choice: StrategyChoice = strategy.parse()?;
    let spec = random_cz_spec(n, &mut rng_from_seed(seed));
    let tables = DepthTables::new(n);
    let c = synth_cz_with(&spec, choice);
    let top = match choice {
        StrategyChoice::Auto => tables.cz_strategy(n).map_err(|e| e.to_string())?,
        StrategyChoice::Force(s) => s,
    };
    let verified = implements_cz_spec(&c, &spec).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "strategy": top.to_string(),
        "cz_gates": spec.gate_count(),
        "depth": c.two_qubit_depth(),
        "bound": tables.cz_forced(n, top).map_err(|e| e.to_string())?,
        "coloring": prior_art_bound(Family::Cz, n),
        "verified": verified,
        "gates": layered(&c),
    })
    .to_string())
}

pub fn synthesize_cnot_json(n: usize, seed: u64, mode: &str) -> Result<String, String> {
    check_size(n, 1)?;
    let mode: SynthMode = mode.parse()?;
    let m = random_invertible(n, &mut rng_from_seed(seed));
    let r = LinearReversible::new(m.clone()).map_err(|e| e.to_string())?;
    let s = synth_linear(&r, mode).map_err(|e| e.to_string())?;
    let tables = DepthTables::new(n);
    let bound = match mode {
        SynthMode::Exact => tables.cnot_exact(n),
        SynthMode::UpToReordering => tables.cnot_up_to_reordering(n),
    }
    .map_err(|e| e.to_string())?;
    let verified = linear_action_clifford(&s.circuit)
        .and_then(|a| a.relabel_rows(&s.output_perm))
        .is_ok_and(|a| a == m);
    Ok(json!({
        "n": n,
        "depth": s.circuit.two_qubit_depth(),
        "bound": bound,
        "prior": prior_art_bound(Family::Cnot, n),
        "perm": s.output_perm.as_slice(),
        "verified": verified,
        "gates": layered(&s.circuit),
    })
    .to_string())
}

/// Recursion values and reference bounds for every family, sampled at up
/// to `points` values of `n` in `from..=to`.
pub fn depth_curves_json(from: usize, to: usize, points: usize) -> Result<String, String> {
    if from < 2 || from > to || to > CURVE_MAX_N.min(MAX_N) || points < 2 {
        return Err(format!("need 2 <= from <= to <= {CURVE_MAX_N} and points >= 2"));
    }
    let tables = DepthTables::new(to);
    let span = to - from;
    let mut ns: Vec<usize> = (0..points).map(|i| from + span * i / (points - 1)).collect();
    ns.dedup();
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(ns));
    for family in Family::ALL {
        let ours: Vec<u64> = ns.iter().map(|&n| tables.value(family, n).unwrap()).collect();
        let prior: Vec<u64> = ns.iter().map(|&n| prior_art_bound(family, n)).collect();
        out.insert(family.name().into(), json!({ "recursion": ours, "prior": prior }));
    }
    Ok(Value::Object(out).to_string())
}

#[wasm_bindgen]
pub fn synthesize_cz(n: usize, seed: u32, strategy: &str) -> Result<String, JsValue> {
    synthesize_cz_json(n, u64::from(seed), strategy).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn synthesize_cnot(n: usize, seed: u32, mode: &str) -> Result<String, JsValue> {
    synthesize_cnot_json(n, u64::from(seed), mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn depth_curves(from: usize, to: usize, points: usize) -> Result<String, JsValue> {
    depth_curves_json(from, to, points).map_err(|e| JsValue::from_str(&e))
}
