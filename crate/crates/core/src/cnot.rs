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

//! Linear reversible (CNOT) synthesis through LU decomposition and a
//! recursive block factorization of triangular matrices.

use std::str::FromStr;

use crate::circuit::{two_qubit_depth_of, Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, Permutation};
use crate::m01::{emit_colored, emit_m01};
use crate::rectangle::Split;

/// An invertible matrix acting as `x -> R x` on basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearReversible {
    matrix: BitMatrix,
}

impl LinearReversible {
    pub fn new(matrix: BitMatrix) -> Result<Self> {
        matrix.inverse()?;
        Ok(LinearReversible { matrix })
    }

    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SynthMode {
    /// Realize `R` exactly, finishing with SWAP layers.
    #[default]
    Exact,
    /// Realize `R` up to a reported relabeling of the output qubits.
    UpToReordering,
}

impl FromStr for SynthMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(SynthMode::Exact),
            "perm" | "reorder" => Ok(SynthMode::UpToReordering),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// A synthesized linear map. After the circuit runs, qubit `i` holds output
/// bit `output_perm[i]` of `R x`; the permutation is the identity in exact mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSynthesis {
    pub circuit: Circuit,
    pub output_perm: Permutation,
}

/// Synthesizes an upper unitriangular matrix over {CNOT, CZ, H}.
pub fn synth_triangular(u: &BitMatrix) -> Result<Circuit> {
    check_unit_upper(u)?;
    let n = u.rows();
    let qs: Vec<usize> = (0..n).collect();
    let mut gates = Vec::new();
    Triangular { n }.emit(u, &qs, &mut gates);
    Ok(Circuit::from_trusted(n, gates))
}

fn check_unit_upper(u: &BitMatrix) -> Result<()> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "triangular synthesis needs a square matrix, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    if !u.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    if (0..u.rows()).any(|i| !u.get(i, i)) {
        return Err(Error::Singular);
    }
    Ok(())
}

struct Triangular {
    n: usize,
}

impl Triangular {
    fn emit(&self, u: &BitMatrix, qs: &[usize], out: &mut Vec<Gate>) {
        let n = qs.len();
        match n {
            0 | 1 => {}
            2 => {
                if u.get(0, 1) {
                    out.push(Gate::cnot(qs[1], qs[0]));
                }
            }
            3 => emit_three(u, qs, out),
            _ => {
                let h = n.div_ceil(2);
                let ra = u.submatrix(0..h, 0..h);
                let rb = u.submatrix(h..n, h..n);
                let w = u.submatrix(0..h, h..n);
                let v = ra
                    .inverse()
                    .expect("unit triangular blocks are invertible")
                    .mul(&w)
                    .expect("block shapes agree");
                let (a, b) = qs.split_at(h);
                self.emit_straddling(a, b, &v, out);
                self.emit(&ra, a, out);
                self.emit(&rb, b, out);
            }
        }
    }

    /// `x_A += V x_B`, as CZ gates conjugated by Hadamards on `a`. The CZ
    /// pattern is colored directly or via weight halving, whichever measures
    /// shallower.
    fn emit_straddling(&self, a: &[usize], b: &[usize], v: &BitMatrix, out: &mut Vec<Gate>) {
        if v.is_zero() {
            return;
        }
        let mut colored = Vec::new();
        emit_colored(a, b, v, &mut colored);
        let mut halved = Split::default();
        emit_m01(a, b, v, &mut halved);
        let halved = halved.into_gates();
        let stage = if two_qubit_depth_of(self.n, &halved) < two_qubit_depth_of(self.n, &colored) {
            halved
        } else {
            colored
        };
        out.extend(a.iter().map(|&q| Gate::H(q)));
        out.extend(stage);
        out.extend(a.iter().map(|&q| Gate::H(q)));
    }
}

/// Depth-2 circuits for every 3x3 upper unitriangular matrix.
fn emit_three(u: &BitMatrix, qs: &[usize], out: &mut Vec<Gate>) {
    let (a, b, c) = (u.get(0, 1), u.get(0, 2), u.get(1, 2));
    let g = |ctl: usize, tgt: usize| Gate::cnot(qs[ctl], qs[tgt]);
    if !a {
        if b {
            out.push(g(2, 0));
        }
        if c {
            out.push(g(2, 1));
        }
    } else if b == c {
        if c {
            out.push(g(2, 1));
        }
        out.push(g(1, 0));
    } else if c {
        out.extend([g(1, 0), g(2, 1)]);
    } else {
        out.extend([g(1, 0), g(2, 0)]);
    }
}

/// Synthesizes `r` as `U` followed by `L` (and the SWAP layers in exact mode).
///
/// The lower factor reuses the upper-triangular synthesizer: conjugating
/// the reversed circuit for `L^T` by Hadamards on every qubit implements `L`.
pub fn synth_linear(r: &LinearReversible, mode: SynthMode) -> Result<LinearSynthesis> {
    let n = r.n();
    let lu = r.matrix.lu_decompose()?;
    let mut gates = synth_triangular(&lu.upper)?.into_gates();
    let lt = synth_triangular(&lu.lower.transpose())?;
    gates.extend((0..n).map(Gate::H));
    gates.extend(lt.gates().iter().rev().copied());
    gates.extend((0..n).map(Gate::H));
    let output_perm = match mode {
        SynthMode::Exact => {
            for layer in lu.perm.transposition_layers() {
                for (x, y) in layer {
                    gates.extend([Gate::cnot(x, y), Gate::cnot(y, x), Gate::cnot(x, y)]);
                }
            }
            Permutation::identity(n)
        }
        SynthMode::UpToReordering => lu.perm,
    };
    Ok(LinearSynthesis {
        circuit: Circuit::from_trusted(n, cancel_hadamard_pairs(n, gates)),
        output_perm,
    })
}

/// Drops pairs of `H` gates on the same qubit with nothing between them.
fn cancel_hadamard_pairs(n: usize, gates: Vec<Gate>) -> Vec<Gate> {
    let mut kept: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in gates {
        if let Gate::H(q) = g {
            if let Some(&top) = stacks[q].last() {
                if kept[top] == Some(Gate::H(q)) {
                    kept[top] = None;
                    stacks[q].pop();
                    continue;
                }
            }
        }
        let idx = kept.len();
        kept.push(Some(g));
        match g.pair() {
            Some((x, y)) => {
                stacks[x].push(idx);
                stacks[y].push(idx);
            }
            None => stacks[g.max_qubit()].push(idx),
        }
    }
    kept.into_iter().flatten().collect()
}

/// Rewrites a {CNOT, CZ, H} linear circuit into CNOTs only.
///
/// Walking left to right with a per-qubit Hadamard flag, a CNOT between two
/// flagged qubits has its direction reversed, and a CZ with exactly one
/// flagged qubit becomes a CNOT targeting that qubit. Gate count and depth
/// are unchanged. Any other flag pattern, any `P`/`X`/`Z`, or a flag left set
/// at the end is reported as an error.
pub fn remove_hadamards(c: &Circuit) -> Result<Circuit> {
    let mut flag = vec![false; c.qubit_count()];
    let mut out = Vec::with_capacity(c.two_qubit_count());
    for (pos, &g) in c.gates().iter().enumerate() {
        match g {
            Gate::H(q) => flag[q] ^= true,
            Gate::Cnot { control, target } => match (flag[control], flag[target]) {
                (false, false) => out.push(g),
                (true, true) => out.push(Gate::cnot(target, control)),
                _ => {
                    return Err(Error::HadamardStructure(format!(
                        "gate {pos} ({g}) has exactly one Hadamard-conjugated qubit"
                    )))
                }
            },
            Gate::Cz(x, y) => match (flag[x], flag[y]) {
                (true, false) => out.push(Gate::cnot(y, x)),
                (false, true) => out.push(Gate::cnot(x, y)),
                _ => {
                    return Err(Error::HadamardStructure(format!(
                        "gate {pos} ({g}) is not conjugated on exactly one qubit"
                    )))
                }
            },
            Gate::P(_) | Gate::X(_) | Gate::Z(_) => {
                return Err(Error::UnsupportedGate {
                    gate: g.to_string(),
                    reason: "linear circuits contain only CNOT, CZ and H".into(),
                })
            }
        }
    }
    if let Some(q) = flag.iter().position(|&f| f) {
        return Err(Error::HadamardStructure(format!(
            "qubit {q} ends with an unmatched Hadamard"
        )));
    }
    Ok(Circuit::from_trusted(c.qubit_count(), out))
}
