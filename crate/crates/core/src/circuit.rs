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

//! Gate-level circuits and the two-qubit depth metric.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::gf2::Permutation;

/// A Clifford gate. Two-qubit gates always act on distinct qubits and
/// `Cz(i, j)` is kept with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Cz(usize, usize),
    Cnot { control: usize, target: usize },
    H(usize),
    P(usize),
    X(usize),
    Z(usize),
}

impl Gate {
    #[inline]
    #[must_use]
    pub fn cz(a: usize, b: usize) -> Gate {
        Gate::Cz(a.min(b), a.max(b))
    }

    #[inline]
    #[must_use]
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    /// The qubits a two-qubit gate touches, or `None` for single-qubit gates.
    #[inline]
    #[must_use]
    pub fn pair(&self) -> Option<(usize, usize)> {
        match *self {
            Gate::Cz(a, b) => Some((a, b)),
            Gate::Cnot { control, target } => Some((control, target)),
            _ => None,
        }
    }

    #[must_use]
    pub fn is_two_qubit(&self) -> bool {
        self.pair().is_some()
    }

    #[must_use]
    pub fn max_qubit(&self) -> usize {
        match *self {
            Gate::Cz(a, b) => a.max(b),
            Gate::Cnot { control, target } => control.max(target),
            Gate::H(q) | Gate::P(q) | Gate::X(q) | Gate::Z(q) => q,
        }
    }

    fn canonical(self) -> Gate {
        match self {
            Gate::Cz(a, b) => Gate::cz(a, b),
            g => g,
        }
    }

    fn check(&self, qubits: usize) -> Result<()> {
        let q = self.max_qubit();
        if q >= qubits {
            return Err(Error::QubitOutOfRange { qubit: q, qubits });
        }
        if let Some((a, b)) = self.pair() {
            if a == b {
                return Err(Error::RepeatedQubit(a));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::H(q) => write!(f, "H {q}"),
            Gate::P(q) => write!(f, "P {q}"),
            Gate::X(q) => write!(f, "X {q}"),
            Gate::Z(q) => write!(f, "Z {q}"),
        }
    }
}

/// An ordered list of gates on `qubit_count` qubits. Gates act left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    #[must_use]
    pub fn new(qubits: usize) -> Self {
        Circuit {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let gates: Vec<Gate> = gates.into_iter().map(Gate::canonical).collect();
        for g in &gates {
            g.check(qubits)?;
        }
        Ok(Circuit { qubits, gates })
    }

    /// Builds a circuit from gates the caller already knows to be valid.
    pub(crate) fn from_trusted(qubits: usize, gates: Vec<Gate>) -> Self {
        debug_assert!(gates.iter().all(|g| g.check(qubits).is_ok()));
        Circuit { qubits, gates }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let gate = gate.canonical();
        gate.check(self.qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    #[inline]
    #[must_use]
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    #[inline]
    #[must_use]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    #[must_use]
    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// ASAP schedule length counting only two-qubit gates.
    #[must_use]
    pub fn two_qubit_depth(&self) -> usize {
        two_qubit_depth_of(self.qubits, &self.gates)
    }

    #[must_use]
    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    #[must_use]
    pub fn is_cnot_only(&self) -> bool {
        self.gates.iter().all(|g| matches!(g, Gate::Cnot { .. }))
    }

    /// Gates of `self` followed by gates of `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        let mut out = self.clone();
        out.append(other)?;
        Ok(out)
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(Error::DimensionMismatch(format!(
                "composing {}-qubit and {}-qubit circuits",
                self.qubits, other.qubits
            )));
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// The inverse circuit: reversed order, with each `P` replaced by `P P P`.
    #[must_use]
    pub fn inverse(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for &g in self.gates.iter().rev() {
            match g {
                Gate::P(q) => gates.extend([Gate::P(q); 3]),
                g => gates.push(g),
            }
        }
        Circuit {
            qubits: self.qubits,
            gates,
        }
    }

    /// Text form: `qubits n`, an optional `perm ...` line, then one gate per line.
    #[must_use]
    pub fn to_text(&self, perm: Option<&Permutation>) -> String {
        let mut s = format!("qubits {}\n", self.qubits);
        if let Some(p) = perm {
            s.push_str("perm");
            for &x in p.as_slice() {
                s.push_str(&format!(" {x}"));
            }
            s.push('\n');
        }
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    /// OpenQASM 2 export. An output permutation, if any, is recorded as a comment.
    #[must_use]
    pub fn to_qasm2(&self, perm: Option<&Permutation>) -> String {
        let mut s = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
        if let Some(p) = perm {
            let items: Vec<String> = p.as_slice().iter().map(ToString::to_string).collect();
            s.push_str(&format!("// output permutation: {}\n", items.join(" ")));
        }
        s.push_str(&format!("qreg q[{}];\n", self.qubits));
        for g in &self.gates {
            let line = match *g {
                Gate::Cz(a, b) => format!("cz q[{a}],q[{b}];"),
                Gate::Cnot { control, target } => format!("cx q[{control}],q[{target}];"),
                Gate::H(q) => format!("h q[{q}];"),
                Gate::P(q) => format!("s q[{q}];"),
                Gate::X(q) => format!("x q[{q}];"),
                Gate::Z(q) => format!("z q[{q}];"),
            };
            s.push_str(&line);
            s.push('\n');
        }
        s
    }
}

/// A parsed circuit file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitFile {
    pub circuit: Circuit,
    pub perm: Option<Permutation>,
}

impl CircuitFile {
    pub fn parse(text: &str) -> Result<CircuitFile> {
        let mut qubits = None;
        let mut perm = None;
        let mut gates = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = ln + 1;
            let mut toks = line.split_whitespace();
            let head = toks.next().unwrap_or_default();
            let args: Vec<usize> = toks
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| parse_err(lineno, format!("{e}")))?;
            let arity = |k: usize| -> Result<()> {
                if args.len() == k {
                    Ok(())
                } else {
                    Err(parse_err(lineno, format!("{head} takes {k} argument(s)")))
                }
            };
            match head {
                "qubits" => {
                    arity(1)?;
                    if qubits.is_some() || !gates.is_empty() {
                        return Err(parse_err(lineno, "`qubits` must be the first line"));
                    }
                    qubits = Some(args[0]);
                }
                "perm" => {
                    if perm.is_some() {
                        return Err(parse_err(lineno, "duplicate `perm` line"));
                    }
                    perm = Some(
                        Permutation::new(args).map_err(|e| parse_err(lineno, e.to_string()))?,
                    );
                }
                "CZ" => {
                    arity(2)?;
                    gates.push(Gate::cz(args[0], args[1]));
                }
                "CNOT" => {
                    arity(2)?;
                    gates.push(Gate::cnot(args[0], args[1]));
                }
                "H" | "P" | "X" | "Z" => {
                    arity(1)?;
                    let q = args[0];
                    gates.push(match head {
                        "H" => Gate::H(q),
                        "P" => Gate::P(q),
                        "X" => Gate::X(q),
                        _ => Gate::Z(q),
                    });
                }
                other => return Err(parse_err(lineno, format!("unknown gate {other:?}"))),
            }
        }
        let qubits = qubits.ok_or_else(|| parse_err(1, "missing `qubits n` header"))?;
        if let Some(p) = &perm {
            if p.len() != qubits {
                return Err(parse_err(1, "permutation size differs from qubit count"));
            }
        }
        Ok(CircuitFile {
            circuit: Circuit::from_gates(qubits, gates)?,
            perm,
        })
    }
}

pub(crate) fn two_qubit_depth_of(qubits: usize, gates: &[Gate]) -> usize {
    let mut d = vec![0usize; qubits];
    let mut best = 0;
    for g in gates {
        if let Some((a, b)) = g.pair() {
            let t = d[a].max(d[b]) + 1;
            d[a] = t;
            d[b] = t;
            best = best.max(t);
        }
    }
    best
}
