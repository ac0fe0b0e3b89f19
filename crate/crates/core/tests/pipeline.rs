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

use cliffdepth::bounds::MAX_N;
use cliffdepth::cz::CzStrategy;
use cliffdepth::random::{random_cz_spec, random_invertible, random_tableau, rng_from_seed};
use cliffdepth::verify::{implements_cz_spec, linear_action_clifford};
use cliffdepth::{
    linear_action, remove_hadamards, synth_clifford, synth_cz_with, synth_linear, BitMatrix,
    CircuitFile, CliffordTableau, DepthTables, Gate, LinearReversible, StrategyChoice, SynthMode,
};

fn fourteen_qubit_example() -> BitMatrix {
    BitMatrix::from_fn(14, 14, |i, j| i == j || (i < 7 && j >= 7))
}

#[test]
fn fourteen_qubit_example_has_the_expected_gate_list() {
    let s = synth_linear(&LinearReversible::new(fourteen_qubit_example()).unwrap(), SynthMode::Exact).unwrap();
    let text = s.circuit.to_text(None);
    let mut expected = String::from("qubits 14\n");
    let h: String = (0..7).map(|q| format!("H {q}\n")).collect();
    expected += &h;
    let trees = [(0, 1), (2, 3), (4, 5), (1, 3), (5, 6), (7, 8), (9, 10), (11, 12), (8, 10), (12, 13)];
    for (c, t) in trees {
        expected += &format!("CNOT {c} {t}\n");
    }
    expected += "CZ 3 13\nCZ 6 10\nCZ 3 10\nCZ 6 13\n";
    for (c, t) in [(12, 13), (8, 10), (11, 12), (9, 10), (7, 8), (5, 6), (1, 3), (4, 5), (2, 3), (0, 1)] {
        expected += &format!("CNOT {c} {t}\n");
    }
    expected += &h;
    assert_eq!(text, expected);

    let cnots = remove_hadamards(&s.circuit).unwrap();
    assert_eq!(cnots.two_qubit_count(), s.circuit.two_qubit_count());
    assert_eq!(cnots.two_qubit_depth(), 6);
    assert_eq!(linear_action(&cnots).unwrap(), fourteen_qubit_example());
    // Trees on A run in the opposite direction once the Hadamards are gone.
    assert_eq!(cnots.gates()[0], Gate::cnot(1, 0));
}

#[test]
fn linear_synthesis_at_64_and_128() {
    let tables = DepthTables::new(128);
    for n in [64, 128] {
        let m = random_invertible(n, &mut rng_from_seed(n as u64));
        let r = LinearReversible::new(m.clone()).unwrap();
        let exact = synth_linear(&r, SynthMode::Exact).unwrap();
        let loose = synth_linear(&r, SynthMode::UpToReordering).unwrap();
        assert_eq!(linear_action_clifford(&exact.circuit).unwrap(), m);
        assert_eq!(
            linear_action_clifford(&loose.circuit)
                .unwrap()
                .relabel_rows(&loose.output_perm)
                .unwrap(),
            m
        );
        assert!(exact.circuit.two_qubit_depth() <= loose.circuit.two_qubit_depth() + 6);
        assert!(exact.circuit.two_qubit_depth() as u32 <= tables.cnot_exact(n).unwrap());
    }
}

#[test]
fn clifford_synthesis_small_and_medium() {
    let tables = DepthTables::new(64);
    for n in [6, 64] {
        for seed in 0..4 {
            let t = random_tableau(n, &mut rng_from_seed(seed));
            let c = synth_clifford(&t).unwrap();
            assert_eq!(CliffordTableau::from_circuit(&c), t);
            assert!(c.two_qubit_depth() as u32 <= tables.clifford(n).unwrap());
        }
    }
}

#[test]
fn forced_cz_strategies_at_larger_sizes() {
    let mut rng = rng_from_seed(21);
    for n in [40, 77, 128] {
        let spec = random_cz_spec(n, &mut rng);
        for s in [CzStrategy::ColoringBase, CzStrategy::OneStep, CzStrategy::TwoStep] {
            let c = synth_cz_with(&spec, StrategyChoice::Force(s));
            assert!(implements_cz_spec(&c, &spec).unwrap(), "n={n} {s}");
        }
    }
}

#[test]
fn first_branch_stays_close_to_n() {
    let tables = DepthTables::new(MAX_N);
    for n in 3..=MAX_N {
        let star = tables.cnot_first_branch(n).unwrap() as usize;
        let limit = n + (n - 1).ilog2() as usize - 2;
        assert!(star <= limit, "n={n}: {star} > {limit}");
    }
}

#[test]
fn circuit_text_survives_a_round_trip_through_synthesis() {
    let m = random_invertible(20, &mut rng_from_seed(4));
    let s = synth_linear(&LinearReversible::new(m.clone()).unwrap(), SynthMode::UpToReordering).unwrap();
    let file = CircuitFile::parse(&s.circuit.to_text(Some(&s.output_perm))).unwrap();
    assert_eq!(file.perm.as_ref(), Some(&s.output_perm));
    let action = linear_action_clifford(&file.circuit).unwrap();
    assert_eq!(action.relabel_rows(&file.perm.unwrap()).unwrap(), m);
}

#[test]
fn forced_strategies_meet_their_own_bounds() {
    let tables = DepthTables::new(96);
    let mut rng = rng_from_seed(22);
    for n in 2..=96 {
        let spec = random_cz_spec(n, &mut rng);
        let full = cliffdepth::CzSpec::all_ones(n);
        for s in [CzStrategy::ColoringBase, CzStrategy::OneStep, CzStrategy::TwoStep] {
            let bound = tables.cz_forced(n, s).unwrap() as usize;
            for sp in [&spec, &full] {
                let d = synth_cz_with(sp, StrategyChoice::Force(s)).two_qubit_depth();
                assert!(d <= bound, "n={n} {s}: {d} > {bound}");
            }
        }
        assert_eq!(tables.cz_forced(n, tables.cz_strategy(n).unwrap()).unwrap(), tables.cz(n).unwrap());
    }
}

#[test]
fn thousand_random_tableaux_recompose() {
    let mut rng = rng_from_seed(23);
    for i in 0..1000 {
        let n = 4 + i % 61;
        let t = random_tableau(n, &mut rng);
        let layers = cliffdepth::decompose_tableau(&t).unwrap();
        assert_eq!(layers.tableau().unwrap(), t, "instance {i}, n={n}");
    }
}

#[test]
fn linear_action_composes_right_to_left() {
    let mut rng = rng_from_seed(24);
    for n in 2..12 {
        let a = synth_linear(
            &LinearReversible::new(random_invertible(n, &mut rng)).unwrap(),
            SynthMode::Exact,
        )
        .unwrap()
        .circuit;
        let b = synth_linear(
            &LinearReversible::new(random_invertible(n, &mut rng)).unwrap(),
            SynthMode::Exact,
        )
        .unwrap()
        .circuit;
        let (a, b) = (remove_hadamards(&a).unwrap(), remove_hadamards(&b).unwrap());
        let whole = linear_action(&a.compose(&b).unwrap()).unwrap();
        let product = linear_action(&b).unwrap().mul(&linear_action(&a).unwrap()).unwrap();
        assert_eq!(whole, product);
    }
}

#[test]
fn cz_closed_form_approaches_half_of_colouring() {
    use cliffdepth::bounds::{coloring_depth, CZ_BOUND};
    for n in 39..=2000 {
        assert!(CZ_BOUND.floor(n) <= coloring_depth(n) as i64, "n={n}");
    }
    let ratio = CZ_BOUND.floor(100_000) as f64 / coloring_depth(100_000) as f64;
    assert!(ratio < 0.55, "{ratio}");
}
