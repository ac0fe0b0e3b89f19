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

//! Depth-optimized synthesis of diagonal CZ circuits.
//!
//! Each recursion level picks the cheapest of three constructions according
//! to the memoized depth recursion: direct edge colouring of the complete
//! graph, a one-level split into halves, or a two-level split into quarters
//! whose weight-halving corrections are implemented jointly.

use std::fmt;
use std::str::FromStr;

use crate::bounds::cz_branch_table;
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::m01::{emit_colored, emit_m01, halve_weights, HalvingResult, M01Pattern};
use crate::rectangle::{emit_rectangle, tree_gates, Split};

/// Which CZ gates to apply: entry `(i, j)` with `i < j` set means `CZ(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CzSpec {
    upper: BitMatrix,
}

impl CzSpec {
    /// The empty spec on `n >= 1` qubits.
    #[must_use]
    pub fn new(n: usize) -> Self {
        CzSpec {
            upper: BitMatrix::zeros(n, n),
        }
    }

    /// Every pair of qubits.
    #[must_use]
    pub fn all_ones(n: usize) -> Self {
        CzSpec {
            upper: BitMatrix::from_fn(n, n, |i, j| i < j),
        }
    }

    /// Accepts a strictly upper-triangular matrix, or a symmetric matrix with
    /// zero diagonal.
    pub fn from_matrix(m: &BitMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "CZ spec must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        if (0..n).any(|i| m.get(i, i)) {
            return Err(Error::DimensionMismatch("CZ spec has a nonzero diagonal".into()));
        }
        let strictly_upper = m.is_upper_triangular();
        let symmetric = *m == m.transpose();
        if !strictly_upper && !symmetric {
            return Err(Error::DimensionMismatch(
                "CZ spec must be strictly upper triangular or symmetric".into(),
            ));
        }
        Ok(CzSpec {
            upper: BitMatrix::from_fn(n, n, |i, j| i < j && m.get(i, j)),
        })
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.upper.rows()
    }

    /// Whether `CZ(i, j)` is present; symmetric in its arguments.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        i != j && self.upper.get(i.min(j), i.max(j))
    }

    /// # Panics
    /// Panics if `i == j`.
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert_ne!(i, j, "CZ needs two distinct qubits");
        self.upper.set(i.min(j), i.max(j), v);
    }

    #[must_use]
    pub fn upper(&self) -> &BitMatrix {
        &self.upper
    }

    #[must_use]
    pub fn gate_count(&self) -> usize {
        self.upper.count_ones()
    }

    /// The pattern between qubit lists `a` (rows) and `b` (columns).
    #[must_use]
    pub fn cross_block(&self, a: &[usize], b: &[usize]) -> M01Pattern {
        M01Pattern::new(BitMatrix::from_fn(a.len(), b.len(), |i, j| {
            self.get(a[i], b[j])
        }))
    }

    /// One CZ per set entry, in row-major order.
    #[must_use]
    pub fn literal_circuit(&self) -> Circuit {
        let gates = (0..self.n())
            .flat_map(|i| self.upper.row_ones(i).map(move |j| Gate::cz(i, j)))
            .collect();
        Circuit::from_trusted(self.n(), gates)
    }
}

/// One of the three constructions available at each recursion level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CzStrategy {
    ColoringBase,
    OneStep,
    TwoStep,
}

impl fmt::Display for CzStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CzStrategy::ColoringBase => "coloring",
            CzStrategy::OneStep => "onestep",
            CzStrategy::TwoStep => "twostep",
        })
    }
}

/// Top-level strategy selection; deeper levels always follow the table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StrategyChoice {
    #[default]
    Auto,
    Force(CzStrategy),
}

impl FromStr for StrategyChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "auto" => StrategyChoice::Auto,
            "coloring" => StrategyChoice::Force(CzStrategy::ColoringBase),
            "onestep" => StrategyChoice::Force(CzStrategy::OneStep),
            "twostep" => StrategyChoice::Force(CzStrategy::TwoStep),
            other => return Err(format!("unknown strategy {other:?}")),
        })
    }
}

/// A synthesized CZ circuit split into its leading parity-tree CNOTs and the
/// remainder, plus the strategy used at the top level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CzParts {
    pub prefix: Vec<Gate>,
    pub body: Vec<Gate>,
    pub strategy: CzStrategy,
}

/// Schedules the present gates into the round-robin colouring of the
/// complete graph: `n - 1` layers for even `n`, `n` for odd `n`.
#[must_use]
pub fn synth_cz_coloring(spec: &CzSpec) -> Circuit {
    let qs: Vec<usize> = (0..spec.n()).collect();
    let mut gates = Vec::new();
    emit_round_robin(spec, &qs, &mut gates);
    Circuit::from_trusted(spec.n(), gates)
}

/// Synthesizes `spec` choosing the cheapest strategy at every level.
#[must_use]
pub fn synth_cz(spec: &CzSpec) -> Circuit {
    synth_cz_with(spec, StrategyChoice::Auto)
}

#[must_use]
pub fn synth_cz_with(spec: &CzSpec, choice: StrategyChoice) -> Circuit {
    let parts = synth_cz_parts(spec, choice);
    let mut gates = parts.prefix;
    gates.extend(parts.body);
    Circuit::from_trusted(spec.n(), gates)
}

/// The strategy the recursion table selects for `n` qubits.
#[must_use]
pub fn auto_strategy(n: usize) -> CzStrategy {
    cz_branch_table(n)[n]
}

pub fn synth_cz_parts(spec: &CzSpec, choice: StrategyChoice) -> CzParts {
    let n = spec.n();
    let builder = Builder {
        spec,
        branch: cz_branch_table(n),
    };
    let strategy = match choice {
        StrategyChoice::Auto => builder.branch[n],
        StrategyChoice::Force(s) => s,
    };
    let qs: Vec<usize> = (0..n).collect();
    let mut out = Split::default();
    builder.emit(&qs, strategy, &mut out);
    CzParts {
        prefix: out.prefix,
        body: out.body,
        strategy,
    }
}

fn emit_round_robin(spec: &CzSpec, qs: &[usize], out: &mut Vec<Gate>) {
    let s = qs.len();
    if s < 2 {
        return;
    }
    let v = s + s % 2;
    let hub = v - 1;
    let mut push = |x: usize, y: usize| {
        if x < s && y < s && spec.get(qs[x], qs[y]) {
            out.push(Gate::cz(qs[x], qs[y]));
        }
    };
    for r in 0..hub {
        push(hub, r);
        for i in 1..v / 2 {
            push((r + i) % hub, (r + hub - i) % hub);
        }
    }
}

struct Builder<'a> {
    spec: &'a CzSpec,
    branch: Vec<CzStrategy>,
}

impl Builder<'_> {
    fn emit(&self, qs: &[usize], strategy: CzStrategy, out: &mut Split) {
        if qs.len() < 2 {
            return;
        }
        match strategy {
            CzStrategy::ColoringBase => emit_round_robin(self.spec, qs, &mut out.body),
            CzStrategy::OneStep => self.one_step(qs, out),
            CzStrategy::TwoStep => self.two_step(qs, out),
        }
    }

    fn recurse(&self, qs: &[usize], body: &mut Vec<Gate>) {
        let mut inner = Split::default();
        self.emit(qs, self.branch[qs.len()], &mut inner);
        body.extend(inner.into_gates());
    }

    fn one_step(&self, qs: &[usize], out: &mut Split) {
        let (a, b) = qs.split_at(qs.len().div_ceil(2));
        let p = self.spec.cross_block(a, b);
        emit_m01(a, b, p.bits(), out);
        self.recurse(a, &mut out.body);
        self.recurse(b, &mut out.body);
    }

    fn halve(&self, a: &[usize], b: &[usize]) -> Option<HalvingResult> {
        (!a.is_empty() && !b.is_empty()).then(|| halve_weights(&self.spec.cross_block(a, b)))
    }

    fn two_step(&self, qs: &[usize], out: &mut Split) {
        let n = qs.len();
        let h = n.div_ceil(2);
        let sides = [&qs[..h], &qs[h..]];
        let quarters: Vec<(&[usize], &[usize])> = sides
            .iter()
            .map(|s| s.split_at(s.len().div_ceil(2)))
            .collect();

        let level1 = self.halve(sides[0], sides[1]);
        let level2: Vec<Option<HalvingResult>> =
            quarters.iter().map(|&(x, y)| self.halve(x, y)).collect();

        // Marks for every qubit position in `qs`.
        let mut prime1 = vec![false; n];
        let mut prime2 = vec![false; n];
        if let Some(hr) = &level1 {
            hr.row_flips.iter().for_each(|&i| prime1[i] = true);
            hr.col_flips.iter().for_each(|&j| prime1[h + j] = true);
        }
        for (side, hr) in level2.iter().enumerate() {
            let base = if side == 0 { 0 } else { h };
            let first = quarters[side].0.len();
            if let Some(hr) = hr {
                hr.row_flips.iter().for_each(|&i| prime2[base + i] = true);
                hr.col_flips.iter().for_each(|&j| prime2[base + first + j] = true);
            }
        }

        // sets[i][j][k]: side i; j = 0 for flipped at level one; k orders the
        // quarter-level classes as (first', first \ first', second', second \ second').
        let mut sets = vec![vec![vec![Vec::new(); 4]; 2]; 2];
        for (pos, &q) in qs.iter().enumerate() {
            let (i, offset) = if pos < h { (0, pos) } else { (1, pos - h) };
            let second_half = offset >= quarters[i].0.len();
            let j = usize::from(!prime1[pos]);
            let k = 2 * usize::from(second_half) + usize::from(!prime2[pos]);
            sets[i][j][k].push(q);
        }

        let start = out.prefix.len();
        let mut reps = [[[None; 4]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..4 {
                    let s = &sets[i][j][k];
                    if let Some(&last) = s.last() {
                        out.prefix.extend(tree_gates(s));
                        reps[i][j][k] = Some(last);
                    }
                }
            }
        }

        let collect = |picks: &[(usize, usize, usize)]| -> Vec<usize> {
            picks.iter().filter_map(|&(i, j, k)| reps[i][j][k]).collect()
        };
        let all_k = |i: usize, j: usize| -> Vec<(usize, usize, usize)> {
            (0..4).map(|k| (i, j, k)).collect()
        };
        let mut rects: Vec<(Vec<usize>, Vec<usize>)> = vec![
            (collect(&all_k(0, 0)), collect(&all_k(1, 1))),
            (collect(&all_k(0, 1)), collect(&all_k(1, 0))),
        ];
        for i in 0..2 {
            rects.push((collect(&[(i, 0, 0), (i, 1, 0)]), collect(&[(i, 0, 3), (i, 1, 3)])));
            rects.push((collect(&[(i, 0, 1), (i, 1, 1)]), collect(&[(i, 0, 2), (i, 1, 2)])));
        }
        for (x, y) in rects.iter().filter(|(x, y)| !x.is_empty() && !y.is_empty()) {
            let mut r = Split::default();
            emit_rectangle(x, y, &mut r);
            out.body.extend(r.into_gates());
        }
        let uncompute: Vec<Gate> = out.prefix[start..]
            .iter()
            .rev()
            .copied()
            .collect();
        out.body.extend(uncompute);

        if let Some(hr) = &level1 {
            emit_colored(sides[0], sides[1], hr.reduced.bits(), &mut out.body);
        }
        for (side, hr) in level2.iter().enumerate() {
            if let Some(hr) = hr {
                let (x, y) = quarters[side];
                emit_colored(x, y, hr.reduced.bits(), &mut out.body);
            }
        }
        for &(x, y) in &quarters {
            self.recurse(x, &mut out.body);
            self.recurse(y, &mut out.body);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::cz_depth_recursion;
    use crate::verify::{cz_spec_phases, phase_oracle};

    fn pseudo_spec(n: usize, seed: u64) -> CzSpec {
        let mut s = seed | 1;
        let mut spec = CzSpec::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                spec.set(i, j, s & 1 == 1);
            }
        }
        spec
    }

    #[test]
    fn spec_from_matrix_forms() {
        let upper = BitMatrix::from_row_strings(&["011", "001", "000"]).unwrap();
        let sym = BitMatrix::from_row_strings(&["011", "101", "110"]).unwrap();
        assert_eq!(CzSpec::from_matrix(&upper).unwrap(), CzSpec::all_ones(3));
        assert_eq!(CzSpec::from_matrix(&sym).unwrap(), CzSpec::all_ones(3));
        let bad = BitMatrix::from_row_strings(&["010", "000", "100"]).unwrap();
        assert!(CzSpec::from_matrix(&bad).is_err());
        let diag = BitMatrix::identity(2);
        assert!(CzSpec::from_matrix(&diag).is_err());
    }

    #[test]
    fn coloring_depths() {
        let mut two = CzSpec::new(2);
        two.set(0, 1, true);
        assert_eq!(synth_cz_coloring(&two).two_qubit_depth(), 1);
        assert_eq!(synth_cz_coloring(&CzSpec::all_ones(4)).two_qubit_depth(), 3);
        assert_eq!(synth_cz_coloring(&CzSpec::all_ones(5)).two_qubit_depth(), 5);
    }

    #[test]
    fn small_cases() {
        assert!(synth_cz(&CzSpec::new(1)).is_empty());
        assert_eq!(synth_cz(&CzSpec::all_ones(3)).two_qubit_depth(), 3);
    }

    #[test]
    fn every_strategy_is_correct_on_small_specs() {
        for n in 2..=10 {
            for seed in 0..4 {
                let spec = pseudo_spec(n, 17 * n as u64 + seed);
                let expect = cz_spec_phases(&spec).unwrap();
                for s in [CzStrategy::ColoringBase, CzStrategy::OneStep, CzStrategy::TwoStep] {
                    let c = synth_cz_with(&spec, StrategyChoice::Force(s));
                    assert_eq!(phase_oracle(&c).unwrap(), expect, "n={n} strategy={s}");
                }
            }
        }
    }

    #[test]
    fn auto_depth_within_recursion() {
        for n in [4, 9, 16, 33, 40, 64] {
            let c = synth_cz(&CzSpec::all_ones(n));
            assert!(c.two_qubit_depth() <= cz_depth_recursion(n).unwrap() as usize, "n={n}");
        }
    }

    #[test]
    fn parts_prefix_is_cnot_only() {
        let spec = CzSpec::all_ones(48);
        for s in [CzStrategy::OneStep, CzStrategy::TwoStep] {
            let parts = synth_cz_parts(&spec, StrategyChoice::Force(s));
            assert!(!parts.prefix.is_empty());
            assert!(parts.prefix.iter().all(|g| matches!(g, Gate::Cnot { .. })));
        }
        let parts = synth_cz_parts(&spec, StrategyChoice::Force(CzStrategy::ColoringBase));
        assert!(parts.prefix.is_empty());
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("auto".parse(), Ok(StrategyChoice::Auto));
        assert_eq!(
            "twostep".parse(),
            Ok(StrategyChoice::Force(CzStrategy::TwoStep))
        );
        assert!("fast".parse::<StrategyChoice>().is_err());
    }
}
