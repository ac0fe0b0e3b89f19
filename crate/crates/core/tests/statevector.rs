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

//! Checks tableau semantics against a dense statevector simulation: for
//! every generator `G`, `U G |psi> = P_G U |psi>` where `P_G` is the Pauli
//! the tableau stores for `G`.

use cliffdepth::random::{random_clifford_circuit, random_tableau, rng_from_seed};
use cliffdepth::{synth_clifford, Circuit, CliffordTableau, Gate};
use num_complex::Complex64;
use rand::Rng;

type State = Vec<Complex64>;

fn apply_gate(state: &mut State, g: Gate) {
    let i = Complex64::i();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match g {
        Gate::H(q) => {
            for x in 0..state.len() {
                if x >> q & 1 == 0 {
                    let y = x | 1 << q;
                    let (a, b) = (state[x], state[y]);
                    state[x] = (a + b) * h;
                    state[y] = (a - b) * h;
                }
            }
        }
        Gate::P(q) => {
            for (x, amp) in state.iter_mut().enumerate() {
                if x >> q & 1 == 1 {
                    *amp *= i;
                }
            }
        }
        Gate::Z(q) => {
            for (x, amp) in state.iter_mut().enumerate() {
                if x >> q & 1 == 1 {
                    *amp = -*amp;
                }
            }
        }
        Gate::X(q) => {
            for x in 0..state.len() {
                if x >> q & 1 == 0 {
                    state.swap(x, x | 1 << q);
                }
            }
        }
        Gate::Cnot { control, target } => {
            for x in 0..state.len() {
                if x >> control & 1 == 1 && x >> target & 1 == 0 {
                    state.swap(x, x | 1 << target);
                }
            }
        }
        Gate::Cz(a, b) => {
            for (x, amp) in state.iter_mut().enumerate() {
                if x >> a & 1 == 1 && x >> b & 1 == 1 {
                    *amp = -*amp;
                }
            }
        }
    }
}

fn run(c: &Circuit, mut state: State) -> State {
    for &g in c.gates() {
        apply_gate(&mut state, g);
    }
    state
}

/// Applies the Pauli stored in tableau row `row` (Y for x = z = 1).
fn apply_row(t: &CliffordTableau, row: usize, state: &State) -> State {
    let mut s = state.clone();
    for q in 0..t.n() {
        match (t.x_bit(row, q), t.z_bit(row, q)) {
            (false, false) => {}
            (true, false) => apply_gate(&mut s, Gate::X(q)),
            (false, true) => apply_gate(&mut s, Gate::Z(q)),
            (true, true) => {
                // Y = i X Z
                apply_gate(&mut s, Gate::Z(q));
                apply_gate(&mut s, Gate::X(q));
                s.iter_mut().for_each(|a| *a *= Complex64::i());
            }
        }
    }
    if t.sign(row) {
        s.iter_mut().for_each(|a| *a = -*a);
    }
    s
}

fn random_state(n: usize, seed: u64) -> State {
    let mut rng = rng_from_seed(seed);
    (0..1 << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

fn close(a: &State, b: &State) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-9)
}

/// Whether `t` describes the conjugation action of `c`.
fn tableau_matches(c: &Circuit, t: &CliffordTableau, seed: u64) -> bool {
    let n = c.qubit_count();
    let psi = random_state(n, seed);
    let out = run(c, psi.clone());
    (0..2 * n).all(|row| {
        let mut g = psi.clone();
        let q = row % n;
        apply_gate(&mut g, if row < n { Gate::X(q) } else { Gate::Z(q) });
        close(&run(c, g), &apply_row(t, row, &out))
    })
}

#[test]
fn single_gates_match_statevector() {
    let gates = [
        Gate::H(0),
        Gate::P(1),
        Gate::X(0),
        Gate::Z(1),
        Gate::cnot(0, 1),
        Gate::cnot(1, 0),
        Gate::cz(0, 1),
    ];
    for (i, &g) in gates.iter().enumerate() {
        let c = Circuit::from_gates(2, vec![g]).unwrap();
        assert!(tableau_matches(&c, &CliffordTableau::from_circuit(&c), i as u64), "{g}");
    }
}

#[test]
fn random_circuits_match_statevector() {
    let mut rng = rng_from_seed(11);
    for n in 1..=8 {
        for trial in 0..20 {
            let c = random_clifford_circuit(n, 6 * n, &mut rng);
            let t = CliffordTableau::from_circuit(&c);
            assert!(tableau_matches(&c, &t, trial), "n={n} trial={trial}");
        }
    }
}

#[test]
fn synthesized_circuits_realize_the_target_unitary_up_to_phase() {
    let mut rng = rng_from_seed(12);
    for n in 1..=7 {
        for trial in 0..5 {
            let source = random_clifford_circuit(n, 10 * n, &mut rng);
            let t = CliffordTableau::from_circuit(&source);
            let synth = synth_clifford(&t).unwrap();
            let psi = random_state(n, trial);
            let a = run(&source, psi.clone());
            let b = run(&synth, psi);
            // Same tableau means equal up to a global phase.
            let k = a.iter().zip(&b).find(|(x, _)| x.norm() > 1e-6).map(|(x, y)| y / x).unwrap();
            assert!((k.norm() - 1.0).abs() < 1e-9);
            let scaled: State = a.iter().map(|x| x * k).collect();
            assert!(close(&scaled, &b), "n={n} trial={trial}");
        }
    }
}

#[test]
fn random_tableaux_are_realized_by_their_synthesis() {
    let mut rng = rng_from_seed(13);
    for n in 1..=6 {
        let t = random_tableau(n, &mut rng);
        let c = synth_clifford(&t).unwrap();
        assert!(tableau_matches(&c, &t, n as u64));
    }
}
