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

//! All-pairs CZ rectangles between two disjoint qubit sets, built from
//! logarithmic-depth parity trees.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// An ordered, non-empty list of distinct qubit indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitSet(Vec<usize>);

impl QubitSet {
    pub fn new(qubits: Vec<usize>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::InvalidQubitSet("empty set".into()));
        }
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidQubitSet(format!("qubit {} repeated", w[0])));
        }
        Ok(QubitSet(qubits))
    }

    /// The set `start..end`.
    ///
    /// # Panics
    /// Panics if the range is empty.
    #[must_use]
    pub fn range(start: usize, end: usize) -> Self {
        assert!(start < end, "empty qubit range");
        QubitSet((start..end).collect())
    }

    #[must_use]
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[must_use]
    pub fn max_qubit(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

pub(crate) fn check_disjoint(a: &QubitSet, b: &QubitSet) -> Result<()> {
    match a.as_slice().iter().find(|q| b.as_slice().contains(q)) {
        Some(&q) => Err(Error::OverlappingSets(q)),
        None => Ok(()),
    }
}

/// `ceil(log2(x))` for `x >= 1`, with `clog2(1) == 0`.
#[inline]
#[must_use]
pub fn clog2(x: usize) -> usize {
    debug_assert!(x >= 1);
    (usize::BITS - (x.max(1) - 1).leading_zeros()) as usize
}

/// CNOT layers of a parity tree over `s`. Each level pairs up consecutive
/// survivors and keeps the target; an odd survivor passes through. The last
/// element of `s` ends up holding the parity of the whole set.
pub(crate) fn tree_layers(s: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut layers = Vec::new();
    let mut alive = s.to_vec();
    while alive.len() > 1 {
        let mut layer = Vec::with_capacity(alive.len() / 2);
        let mut next = Vec::with_capacity(alive.len().div_ceil(2));
        for pair in alive.chunks(2) {
            if let [c, t] = *pair {
                layer.push((c, t));
                next.push(t);
            } else {
                next.push(pair[0]);
            }
        }
        layers.push(layer);
        alive = next;
    }
    layers
}

pub(crate) fn tree_gates(s: &[usize]) -> Vec<Gate> {
    tree_layers(s)
        .into_iter()
        .flatten()
        .map(|(c, t)| Gate::cnot(c, t))
        .collect()
}

/// A parity tree over a qubit set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityTree {
    pub circuit: Circuit,
    pub representative: usize,
}

/// CNOT tree of depth `ceil(log2 |s|)` after which the last qubit of `s`
/// holds the XOR of all qubits in `s`. The circuit spans `max(s) + 1` qubits.
#[must_use]
pub fn parity_tree(s: &QubitSet) -> ParityTree {
    ParityTree {
        circuit: Circuit::from_trusted(s.max_qubit() + 1, tree_gates(s.as_slice())),
        representative: *s.as_slice().last().expect("qubit sets are non-empty"),
    }
}

/// Gates of a synthesized block split into the leading CNOTs that only
/// compute parities (`prefix`) and everything after them (`body`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Split {
    pub prefix: Vec<Gate>,
    pub body: Vec<Gate>,
}

impl Split {
    pub fn into_gates(mut self) -> Vec<Gate> {
        self.prefix.append(&mut self.body);
        self.prefix
    }
}

/// Emits the rectangle `a x b`. The two parity trees minus their final
/// level go to `out.prefix`; the depth-2 middle fragment and the uncompute
/// go to `out.body`.
pub(crate) fn emit_rectangle(a: &[usize], b: &[usize], out: &mut Split) {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 && b.len() == 1 {
        out.body.push(Gate::cz(a[0], b[0]));
        return;
    }
    let mut ta = tree_layers(a);
    let mut tb = tree_layers(b);
    let mut pre: Vec<(usize, usize)> = Vec::new();
    let mid: Vec<Gate> = match ta.len().cmp(&tb.len()) {
        std::cmp::Ordering::Equal => {
            let (ca, ra) = ta.pop().expect("non-trivial tree")[0];
            let (cb, rb) = tb.pop().expect("non-trivial tree")[0];
            vec![
                Gate::cz(ca, rb),
                Gate::cz(ra, cb),
                Gate::cz(ca, cb),
                Gate::cz(ra, rb),
            ]
        }
        std::cmp::Ordering::Greater => {
            let (ca, ra) = ta.pop().expect("non-trivial tree")[0];
            let rb = *b.last().expect("non-empty");
            vec![Gate::cz(ca, rb), Gate::cz(ra, rb)]
        }
        std::cmp::Ordering::Less => {
            let (cb, rb) = tb.pop().expect("non-trivial tree")[0];
            let ra = *a.last().expect("non-empty");
            vec![Gate::cz(ra, cb), Gate::cz(ra, rb)]
        }
    };
    pre.extend(ta.into_iter().flatten());
    pre.extend(tb.into_iter().flatten());
    out.prefix.extend(pre.iter().map(|&(c, t)| Gate::cnot(c, t)));
    out.body.extend(mid);
    out.body
        .extend(pre.iter().rev().map(|&(c, t)| Gate::cnot(c, t)));
}

/// Implements every `CZ(x, y)` with `x` in `a` and `y` in `b` in two-qubit
/// depth `2 * max(ceil(log2 k), ceil(log2 m))` (depth 1 when `k = m = 1`).
/// The circuit spans `max(a, b) + 1` qubits.
pub fn synth_rectangle(a: &QubitSet, b: &QubitSet) -> Result<Circuit> {
    check_disjoint(a, b)?;
    let mut split = Split::default();
    emit_rectangle(a.as_slice(), b.as_slice(), &mut split);
    let n = a.max_qubit().max(b.max_qubit()) + 1;
    Ok(Circuit::from_trusted(n, split.into_gates()))
}

/// The depth guaranteed for a `k x m` rectangle.
#[must_use]
pub fn rectangle_depth_bound(k: usize, m: usize) -> usize {
    if k.max(m) <= 1 {
        1
    } else {
        2 * clog2(k).max(clog2(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{linear_action, phase_oracle};

    #[test]
    fn clog2_values() {
        let expect = [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (1024, 10)];
        for (x, v) in expect {
            assert_eq!(clog2(x), v, "clog2({x})");
        }
    }

    #[test]
    fn qubit_set_validation() {
        assert!(QubitSet::new(vec![]).is_err());
        assert!(QubitSet::new(vec![1, 2, 1]).is_err());
        let a = QubitSet::new(vec![0, 1]).unwrap();
        let b = QubitSet::new(vec![1, 2]).unwrap();
        assert_eq!(synth_rectangle(&a, &b), Err(Error::OverlappingSets(1)));
    }

    #[test]
    fn small_trees() {
        let t = parity_tree(&QubitSet::new(vec![3]).unwrap());
        assert!(t.circuit.is_empty());
        assert_eq!(t.representative, 3);
        let t = parity_tree(&QubitSet::new(vec![0, 1]).unwrap());
        assert_eq!(t.circuit.gates(), &[Gate::cnot(0, 1)]);
        assert_eq!(t.circuit.two_qubit_depth(), 1);
    }

    #[test]
    fn five_way_parity() {
        let t = parity_tree(&QubitSet::range(0, 5));
        assert_eq!(t.circuit.two_qubit_depth(), 3);
        assert_eq!(t.representative, 4);
        let r = linear_action(&t.circuit).unwrap();
        assert!((0..5).all(|j| r.get(4, j)));
    }

    #[test]
    fn figure_one_layout() {
        // a1..a4 on qubits 0..3, b1..b5 on qubits 4..8.
        let c = synth_rectangle(&QubitSet::range(0, 4), &QubitSet::range(4, 9)).unwrap();
        assert_eq!(c.two_qubit_depth(), 6);
        let tree = vec![
            Gate::cnot(0, 1),
            Gate::cnot(2, 3),
            Gate::cnot(1, 3),
            Gate::cnot(4, 5),
            Gate::cnot(6, 7),
            Gate::cnot(5, 7),
        ];
        let mut expect = tree.clone();
        expect.extend([Gate::cz(3, 7), Gate::cz(3, 8)]);
        expect.extend(tree.iter().rev());
        assert_eq!(c.gates(), &expect[..]);
    }

    #[test]
    fn three_by_three_phases() {
        let c = synth_rectangle(&QubitSet::range(0, 3), &QubitSet::range(3, 6)).unwrap();
        assert!(c.two_qubit_depth() <= 4);
        let phases = phase_oracle(&c).unwrap();
        for (x, &neg) in phases.iter().enumerate() {
            let pa = (x & 0b000111).count_ones() % 2;
            let pb = (x & 0b111000).count_ones() % 2;
            assert_eq!(neg, pa * pb == 1, "state {x:06b}");
        }
    }

    #[test]
    fn single_pair_is_one_cz() {
        let c = synth_rectangle(&QubitSet::new(vec![2]).unwrap(), &QubitSet::new(vec![0]).unwrap())
            .unwrap();
        assert_eq!(c.gates(), &[Gate::cz(0, 2)]);
        assert_eq!(rectangle_depth_bound(1, 1), 1);
    }
}
