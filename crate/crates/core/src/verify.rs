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

//! Independent correctness oracles.
//!
//! Circuits act left to right. For CNOT circuits the action is the matrix
//! `R` with `x -> R x`, so `linear_action(a then b) = linear_action(b) *
//! linear_action(a)`.

use crate::circuit::{Circuit, Gate};
use crate::cz::CzSpec;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::tableau::CliffordTableau;

/// Qubit limit for [`phase_oracle`] and [`cz_spec_phases`].
pub const PHASE_ORACLE_MAX_QUBITS: usize = 12;

/// The matrix of a CNOT-only circuit, by propagating basis labels.
pub fn linear_action(c: &Circuit) -> Result<BitMatrix> {
    if c.qubit_count() == 0 {
        return Err(Error::DimensionMismatch("circuit has no qubits".into()));
    }
    let mut r = BitMatrix::identity(c.qubit_count());
    for g in c.gates() {
        match *g {
            Gate::Cnot { control, target } => r.xor_row_into(control, target),
            other => {
                return Err(Error::UnsupportedGate {
                    gate: other.to_string(),
                    reason: "linear_action accepts CNOT gates only".into(),
                })
            }
        }
    }
    Ok(r)
}

/// The matrix of any Clifford circuit that permutes basis states linearly
/// without phases, read off its tableau.
pub fn linear_action_clifford(c: &Circuit) -> Result<BitMatrix> {
    let t = CliffordTableau::from_circuit(c);
    let n = t.n();
    let clean = (0..n).all(|i| {
        !t.sign(i) && !t.sign(n + i) && (0..n).all(|q| !t.z_bit(i, q) && !t.x_bit(n + i, q))
    });
    if !clean {
        return Err(Error::NotLinear);
    }
    // Row i of the tableau is the image of X_i, i.e. column i of R.
    Ok(BitMatrix::from_fn(n, n, |q, i| t.x_bit(i, q)))
}

/// For every basis state `x` (qubit `q` is bit `q` of the index), whether the
/// circuit multiplies it by `-1`. The circuit must return every basis label
/// to itself.
pub fn phase_oracle(c: &Circuit) -> Result<Vec<bool>> {
    let n = c.qubit_count();
    if n > PHASE_ORACLE_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            limit: PHASE_ORACLE_MAX_QUBITS,
        });
    }
    if let Some(g) = c.gates().iter().find(|g| matches!(g, Gate::H(_) | Gate::P(_))) {
        return Err(Error::UnsupportedGate {
            gate: g.to_string(),
            reason: "the phase oracle tracks basis labels and signs only".into(),
        });
    }
    let mut out = Vec::with_capacity(1 << n);
    for x0 in 0u32..(1 << n) {
        let mut x = x0;
        let mut neg = false;
        for g in c.gates() {
            match *g {
                Gate::Cnot { control, target } => x ^= (x >> control & 1) << target,
                Gate::Cz(a, b) => neg ^= (x >> a) & (x >> b) & 1 == 1,
                Gate::X(q) => x ^= 1 << q,
                Gate::Z(q) => neg ^= (x >> q) & 1 == 1,
                Gate::H(_) | Gate::P(_) => unreachable!("rejected above"),
            }
        }
        if x != x0 {
            return Err(Error::NotDiagonal);
        }
        out.push(neg);
    }
    Ok(out)
}

/// `(-1)^{sum_{i<j} m_ij x_i x_j}` for every basis state, straight from the spec.
pub fn cz_spec_phases(spec: &CzSpec) -> Result<Vec<bool>> {
    let n = spec.n();
    if n > PHASE_ORACLE_MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            limit: PHASE_ORACLE_MAX_QUBITS,
        });
    }
    Ok((0u32..(1 << n))
        .map(|x| {
            let mut parity = false;
            for i in 0..n {
                for j in (i + 1)..n {
                    parity ^= spec.get(i, j) && (x >> i) & (x >> j) & 1 == 1;
                }
            }
            parity
        })
        .collect())
}

/// Bitwise equality of symplectic parts and phases.
pub fn tableaux_equal(a: &CliffordTableau, b: &CliffordTableau) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!(
            "comparing {}-qubit and {}-qubit tableaux",
            a.n(),
            b.n()
        )));
    }
    Ok(a == b)
}

/// Whether `c` implements the diagonal unitary of `spec`, via tableaux.
pub fn implements_cz_spec(c: &Circuit, spec: &CzSpec) -> Result<bool> {
    if c.qubit_count() != spec.n() {
        return Err(Error::DimensionMismatch(format!(
            "{}-qubit circuit against a {}-qubit spec",
            c.qubit_count(),
            spec.n()
        )));
    }
    tableaux_equal(
        &CliffordTableau::from_circuit(c),
        &CliffordTableau::from_circuit(&spec.literal_circuit()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single_gates() {
        assert!(linear_action(&Circuit::new(3)).unwrap().is_identity());
        let c = Circuit::from_gates(2, vec![Gate::cnot(0, 1)]).unwrap();
        assert_eq!(
            linear_action(&c).unwrap(),
            BitMatrix::from_row_strings(&["10", "11"]).unwrap()
        );
        assert!(phase_oracle(&Circuit::new(3)).unwrap().iter().all(|&b| !b));
        let cz = Circuit::from_gates(2, vec![Gate::cz(0, 1)]).unwrap();
        assert_eq!(phase_oracle(&cz).unwrap(), vec![false, false, false, true]);
    }

    #[test]
    fn oracle_errors() {
        let h = Circuit::from_gates(1, vec![Gate::H(0)]).unwrap();
        assert!(matches!(linear_action(&h), Err(Error::UnsupportedGate { .. })));
        assert!(matches!(phase_oracle(&h), Err(Error::UnsupportedGate { .. })));
        let x = Circuit::from_gates(1, vec![Gate::X(0)]).unwrap();
        assert_eq!(phase_oracle(&x), Err(Error::NotDiagonal));
        assert!(matches!(
            phase_oracle(&Circuit::new(13)),
            Err(Error::TooManyQubits { .. })
        ));
        assert!(tableaux_equal(&CliffordTableau::identity(1), &CliffordTableau::identity(2)).is_err());
    }

    #[test]
    fn tableau_distinguishes_single_h() {
        let t = CliffordTableau::identity(2);
        let h = CliffordTableau::from_circuit(&Circuit::from_gates(2, vec![Gate::H(1)]).unwrap());
        assert!(tableaux_equal(&t, &t).unwrap());
        assert!(!tableaux_equal(&t, &h).unwrap());
    }

    #[test]
    fn clifford_linear_action_sees_through_hadamards() {
        let c = Circuit::from_gates(2, vec![Gate::H(0), Gate::cz(0, 1), Gate::H(0)]).unwrap();
        assert_eq!(
            linear_action_clifford(&c).unwrap(),
            BitMatrix::from_row_strings(&["11", "01"]).unwrap()
        );
        let p = Circuit::from_gates(1, vec![Gate::P(0)]).unwrap();
        assert_eq!(linear_action_clifford(&p), Err(Error::NotLinear));
    }
}
