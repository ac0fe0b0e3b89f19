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

//! Clifford synthesis through the layered form
//! `X Z P CX CZ H CZ H P` (layers listed in the order they act).

use crate::circuit::{Circuit, Gate};
use crate::cnot::{synth_linear, LinearReversible, SynthMode};
use crate::cz::{synth_cz, synth_cz_parts, CzSpec, StrategyChoice};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::tableau::CliffordTableau;

/// A Clifford operator split into layers. Masks are indexed by qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordLayers {
    pub x_mask: Vec<bool>,
    pub z_mask: Vec<bool>,
    pub p1_mask: Vec<bool>,
    pub cx: LinearReversible,
    pub cz1: CzSpec,
    pub h_mask1: Vec<bool>,
    pub cz2: CzSpec,
    pub h_mask2: Vec<bool>,
    pub p2_mask: Vec<bool>,
}

fn mask_gates(mask: &[bool], gate: fn(usize) -> Gate, out: &mut Vec<Gate>) {
    out.extend(mask.iter().enumerate().filter(|(_, &b)| b).map(|(q, _)| gate(q)));
}

impl CliffordLayers {
    #[must_use]
    pub fn n(&self) -> usize {
        self.x_mask.len()
    }

    /// The layers as gates, with each CZ layer written out gate by gate.
    pub fn literal_circuit(&self) -> Result<Circuit> {
        let mut g = Vec::new();
        mask_gates(&self.x_mask, Gate::X, &mut g);
        mask_gates(&self.z_mask, Gate::Z, &mut g);
        mask_gates(&self.p1_mask, Gate::P, &mut g);
        g.extend(synth_linear(&self.cx, SynthMode::Exact)?.circuit.into_gates());
        g.extend(self.cz1.literal_circuit().into_gates());
        mask_gates(&self.h_mask1, Gate::H, &mut g);
        g.extend(self.cz2.literal_circuit().into_gates());
        mask_gates(&self.h_mask2, Gate::H, &mut g);
        mask_gates(&self.p2_mask, Gate::P, &mut g);
        Ok(Circuit::from_trusted(self.n(), g))
    }

    /// Recomposes the layers into a tableau.
    pub fn tableau(&self) -> Result<CliffordTableau> {
        Ok(CliffordTableau::from_circuit(&self.literal_circuit()?))
    }

    /// Depth-optimized circuit. With `merge`, the leading parity trees of
    /// the first CZ stage are folded into the linear stage before it.
    pub fn synthesize(&self, merge: bool) -> Result<Circuit> {
        let n = self.n();
        let mut g = Vec::new();
        mask_gates(&self.x_mask, Gate::X, &mut g);
        mask_gates(&self.z_mask, Gate::Z, &mut g);
        mask_gates(&self.p1_mask, Gate::P, &mut g);
        let parts = synth_cz_parts(&self.cz1, StrategyChoice::Auto);
        let (linear, tail) = if merge {
            let mut t = BitMatrix::identity(n);
            for gate in &parts.prefix {
                if let Gate::Cnot { control, target } = *gate {
                    t.xor_row_into(control, target);
                }
            }
            (LinearReversible::new(t.mul(self.cx.matrix())?)?, parts.body)
        } else {
            let mut all = parts.prefix;
            all.extend(parts.body);
            (self.cx.clone(), all)
        };
        g.extend(synth_linear(&linear, SynthMode::Exact)?.circuit.into_gates());
        g.extend(tail);
        mask_gates(&self.h_mask1, Gate::H, &mut g);
        g.extend(synth_cz(&self.cz2).into_gates());
        mask_gates(&self.h_mask2, Gate::H, &mut g);
        mask_gates(&self.p2_mask, Gate::P, &mut g);
        Ok(Circuit::from_trusted(n, g))
    }
}

fn internal(msg: &str) -> Error {
    Error::Decomposition(msg.into())
}

/// Splits a tableau into the layered form.
///
/// The trailing `H CZ H P` layers are chosen so that undoing them maps every
/// `Z_i` image to a product of `Z`s. What remains fixes the `Z` subgroup and
/// is read off as `P CX CZ`, and a leading Pauli layer repairs the signs.
pub fn decompose_tableau(t: &CliffordTableau) -> Result<CliffordLayers> {
    if !t.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let n = t.n();
    let zx = BitMatrix::from_fn(n, n, |i, q| t.x_bit(n + i, q));
    let zz = BitMatrix::from_fn(n, n, |i, q| t.z_bit(n + i, q));

    // Qubits whose columns carry the pivots of the X part start as X-type;
    // the rest are Hadamard-conjugated (Z-type).
    let mut xtype = pivot_columns(&zx);
    let gamma = loop {
        let xp = BitMatrix::from_fn(n, n, |i, q| if xtype[q] { zx.get(i, q) } else { zz.get(i, q) });
        let zp = BitMatrix::from_fn(n, n, |i, q| if xtype[q] { zz.get(i, q) } else { zx.get(i, q) });
        let gamma = xp
            .inverse()
            .map_err(|_| internal("local frame is not invertible"))?
            .mul(&zp)?;
        // A Z-type qubit with a diagonal one cannot be fixed by a phase gate
        // before the Hadamard; making it X-type keeps the frame invertible.
        match (0..n).find(|&q| !xtype[q] && gamma.get(q, q)) {
            Some(q) => xtype[q] = true,
            None => break gamma,
        }
    };
    let p2_mask: Vec<bool> = (0..n).map(|q| xtype[q] && gamma.get(q, q)).collect();
    let h_mask2: Vec<bool> = xtype.iter().map(|&x| !x).collect();
    let cz2 = CzSpec::from_matrix(&BitMatrix::from_fn(n, n, |i, j| i != j && gamma.get(i, j)))?;

    // Undo the trailing layers.
    let mut rest = t.clone();
    for q in 0..n {
        if p2_mask[q] {
            rest.apply_unchecked(Gate::P(q));
        }
        if h_mask2[q] {
            rest.apply_unchecked(Gate::H(q));
        }
    }
    for g in cz2.literal_circuit().gates() {
        rest.apply_unchecked(*g);
    }
    for q in 0..n {
        rest.apply_unchecked(Gate::H(q));
    }
    if (0..n).any(|i| (0..n).any(|q| rest.x_bit(n + i, q))) {
        return Err(internal("Z images still contain X after undoing the final layers"));
    }

    // `rest` acts as P(d) CX(R) CZ(B): X rows are (R^T | R^T B + D R^-1).
    let xx = BitMatrix::from_fn(n, n, |i, q| rest.x_bit(i, q));
    let e = BitMatrix::from_fn(n, n, |i, q| rest.z_bit(i, q));
    let xx_inv = xx.inverse().map_err(|_| internal("linear part is singular"))?;
    let gamma_f = xx_inv.mul(&e)?;
    let diag = BitMatrix::from_fn(n, 1, |k, _| gamma_f.get(k, k));
    let d = xx.mul(&diag)?;
    let d_mat = BitMatrix::from_fn(n, n, |i, j| i == j && d.get(i, 0));
    let correction = xx_inv.mul(&d_mat)?.mul(&xx_inv.transpose())?;
    let b = gamma_f.xor(&correction)?;
    let cz1 = CzSpec::from_matrix(&b).map_err(|_| internal("CZ part is not symmetric"))?;
    let p1_mask: Vec<bool> = (0..n).map(|q| d.get(q, 0)).collect();
    let cx = LinearReversible::new(xx.transpose())?;

    let mut layers = CliffordLayers {
        x_mask: vec![false; n],
        z_mask: vec![false; n],
        p1_mask,
        cx,
        cz1,
        h_mask1: vec![true; n],
        cz2,
        h_mask2,
        p2_mask,
    };
    let reference = layers.tableau()?;
    if reference.symplectic_matrix() != t.symplectic_matrix() {
        return Err(internal("recomposed symplectic part differs"));
    }
    for i in 0..n {
        layers.z_mask[i] = reference.sign(i) != t.sign(i);
        layers.x_mask[i] = reference.sign(n + i) != t.sign(n + i);
    }
    Ok(layers)
}

/// Columns holding the pivots of a row echelon form of `m`.
#[allow(clippy::needless_range_loop)]
fn pivot_columns(m: &BitMatrix) -> Vec<bool> {
    let mut a = m.clone();
    let mut pivots = vec![false; m.cols()];
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        if let Some(p) = (row..m.rows()).find(|&r| a.get(r, col)) {
            a.swap_rows(row, p);
            for r in (row + 1)..m.rows() {
                if a.get(r, col) {
                    a.xor_row_into(row, r);
                }
            }
            pivots[col] = true;
            row += 1;
        }
    }
    pivots
}

/// Decomposes `t` and synthesizes it with the CX/CZ merge.
pub fn synth_clifford(t: &CliffordTableau) -> Result<Circuit> {
    decompose_tableau(t)?.synthesize(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(n: usize, gates: Vec<Gate>) -> CliffordTableau {
        CliffordTableau::from_circuit(&Circuit::from_gates(n, gates).unwrap())
    }

    #[test]
    fn identity_is_trivial() {
        let t = CliffordTableau::identity(4);
        let l = decompose_tableau(&t).unwrap();
        assert!(l.cx.matrix().is_identity());
        assert_eq!(l.cz1.gate_count() + l.cz2.gate_count(), 0);
        assert!(l.x_mask.iter().chain(&l.z_mask).chain(&l.p1_mask).all(|&b| !b));
        let c = synth_clifford(&t).unwrap();
        assert_eq!(c.two_qubit_count(), 0);
        assert_eq!(CliffordTableau::from_circuit(&c), t);
    }

    #[test]
    fn single_cnot() {
        let t = tab(2, vec![Gate::cnot(0, 1)]);
        let l = decompose_tableau(&t).unwrap();
        assert_eq!(l.tableau().unwrap(), t);
        assert_eq!(CliffordTableau::from_circuit(&synth_clifford(&t).unwrap()), t);
    }

    #[test]
    fn single_qubit_cliffords() {
        let words: [&[Gate]; 6] = [
            &[Gate::H(0)],
            &[Gate::P(0)],
            &[Gate::H(0), Gate::P(0)],
            &[Gate::P(0), Gate::H(0)],
            &[Gate::P(0), Gate::H(0), Gate::P(0)],
            &[Gate::X(0), Gate::P(0), Gate::Z(0)],
        ];
        for w in words {
            let t = tab(1, w.to_vec());
            let c = synth_clifford(&t).unwrap();
            assert_eq!(CliffordTableau::from_circuit(&c), t, "{w:?}");
        }
    }

    #[test]
    fn mixed_small_circuit() {
        let t = tab(
            3,
            vec![
                Gate::H(0),
                Gate::cnot(0, 1),
                Gate::P(1),
                Gate::cz(1, 2),
                Gate::H(2),
                Gate::X(0),
                Gate::cnot(2, 0),
                Gate::P(0),
            ],
        );
        let l = decompose_tableau(&t).unwrap();
        assert_eq!(l.tableau().unwrap(), t);
        for merge in [false, true] {
            let c = l.synthesize(merge).unwrap();
            assert_eq!(CliffordTableau::from_circuit(&c), t);
        }
    }
}
