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

//! Arbitrary 0/1 CZ patterns between two disjoint qubit sets: greedy weight
//! halving followed by bipartite edge colouring.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::rectangle::{check_disjoint, clog2, emit_rectangle, QubitSet, Split};

/// A `k x m` pattern; entry `(i, j)` set means `CZ(a_i, b_j)` is wanted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct M01Pattern {
    bits: BitMatrix,
}

impl M01Pattern {
    #[must_use]
    pub fn new(bits: BitMatrix) -> Self {
        M01Pattern { bits }
    }

    #[must_use]
    pub fn zeros(k: usize, m: usize) -> Self {
        M01Pattern {
            bits: BitMatrix::zeros(k, m),
        }
    }

    #[must_use]
    pub fn k(&self) -> usize {
        self.bits.rows()
    }

    #[must_use]
    pub fn m(&self) -> usize {
        self.bits.cols()
    }

    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits.get(i, j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits.set(i, j, v);
    }

    #[must_use]
    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    #[must_use]
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.k())
            .flat_map(|i| self.bits.row_ones(i).map(move |j| (i, j)))
            .collect()
    }

    /// Largest row or column weight.
    #[must_use]
    pub fn max_degree(&self) -> usize {
        let r = (0..self.k()).map(|i| self.bits.row_weight(i)).max().unwrap_or(0);
        let c = (0..self.m()).map(|j| self.bits.col_weight(j)).max().unwrap_or(0);
        r.max(c)
    }
}

/// Output of [`halve_weights`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalvingResult {
    pub reduced: M01Pattern,
    /// Rows complemented an odd number of times, ascending.
    pub row_flips: Vec<usize>,
    /// Columns complemented an odd number of times, ascending.
    pub col_flips: Vec<usize>,
    /// Number of line complements performed.
    pub flips: usize,
    /// Number of line weights inspected.
    pub inspections: usize,
}

/// Greedily complements rows and columns until every row has at most
/// `floor(m/2)` ones and every column at most `floor(k/2)`.
///
/// Lines are visited cyclically (rows in order, then columns) and a line is
/// complemented only when that strictly lowers the number of ones. The sweep
/// stops once `k + m` consecutive inspections make no change.
#[must_use]
pub fn halve_weights(p: &M01Pattern) -> HalvingResult {
    let (k, m) = (p.k(), p.m());
    let mut bits = p.bits.clone();
    let mut row_flag = vec![false; k];
    let mut col_flag = vec![false; m];
    let (mut flips, mut inspections, mut quiet) = (0, 0, 0);
    let lines = k + m;
    let mut line = 0;
    while quiet < lines {
        inspections += 1;
        let flipped = if line < k {
            let w = bits.row_weight(line);
            if 2 * w > m {
                bits.complement_row(line);
                row_flag[line] ^= true;
                true
            } else {
                false
            }
        } else {
            let j = line - k;
            let w = bits.col_weight(j);
            if 2 * w > k {
                bits.complement_col(j);
                col_flag[j] ^= true;
                true
            } else {
                false
            }
        };
        if flipped {
            flips += 1;
            quiet = 0;
        } else {
            quiet += 1;
        }
        line = (line + 1) % lines;
    }
    let pick = |f: &[bool]| f.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect();
    HalvingResult {
        reduced: M01Pattern { bits },
        row_flips: pick(&row_flag),
        col_flips: pick(&col_flag),
        flips,
        inspections,
    }
}

const NONE: usize = usize::MAX;

/// Proper edge colouring of a bipartite graph with `max degree` colours,
/// using alternating-path recolouring. Edges are `(left, right)` pairs with
/// `left < k` and `right < m`; the returned classes are non-empty matchings.
#[must_use]
pub fn edge_color_bipartite(k: usize, m: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut deg_l = vec![0usize; k];
    let mut deg_r = vec![0usize; m];
    for &(u, v) in edges {
        deg_l[u] += 1;
        deg_r[v] += 1;
    }
    let d = deg_l.iter().chain(&deg_r).copied().max().unwrap_or(0);
    if d == 0 {
        return Vec::new();
    }
    // left[u * d + c] is the right endpoint of u's edge of colour c.
    let mut left = vec![NONE; k * d];
    let mut right = vec![NONE; m * d];
    let mut path: Vec<(usize, usize, usize)> = Vec::new();
    for &(u, v) in edges {
        let a = (0..d).find(|&c| left[u * d + c] == NONE).expect("degree bound");
        let b = (0..d).find(|&c| right[v * d + c] == NONE).expect("degree bound");
        if right[v * d + a] != NONE {
            // Swap colours a and b along the a/b path that starts at v. In a
            // bipartite graph this path cannot reach u, which lacks colour a.
            path.clear();
            let (mut cur, mut on_right, mut col) = (v, true, a);
            loop {
                let next = if on_right { right[cur * d + col] } else { left[cur * d + col] };
                if next == NONE {
                    break;
                }
                if on_right {
                    path.push((next, cur, col));
                } else {
                    path.push((cur, next, col));
                }
                cur = next;
                on_right = !on_right;
                col = if col == a { b } else { a };
            }
            for &(l, r, c) in &path {
                left[l * d + c] = NONE;
                right[r * d + c] = NONE;
            }
            for &(l, r, c) in &path {
                let c = if c == a { b } else { a };
                left[l * d + c] = r;
                right[r * d + c] = l;
            }
        }
        left[u * d + a] = v;
        right[v * d + a] = u;
    }
    (0..d)
        .map(|c| {
            (0..k)
                .filter(|&u| left[u * d + c] != NONE)
                .map(|u| (u, left[u * d + c]))
                .collect::<Vec<_>>()
        })
        .filter(|class| !class.is_empty())
        .collect()
}

/// Colours a halved pattern. Fails if some row has more than `floor(m/2)`
/// ones or some column more than `floor(k/2)`.
pub fn bipartite_edge_color(p: &M01Pattern) -> Result<Vec<Vec<(usize, usize)>>> {
    let (k, m) = (p.k(), p.m());
    for i in 0..k {
        let w = p.bits.row_weight(i);
        if w > m / 2 {
            return Err(Error::DegreeTooHigh { degree: w, limit: m / 2 });
        }
    }
    for j in 0..m {
        let w = p.bits.col_weight(j);
        if w > k / 2 {
            return Err(Error::DegreeTooHigh { degree: w, limit: k / 2 });
        }
    }
    Ok(edge_color_bipartite(k, m, &p.edges()))
}

/// Emits CZ layers, one per colour class, for a pattern on `a x b`.
pub(crate) fn emit_colored(a: &[usize], b: &[usize], p: &BitMatrix, out: &mut Vec<Gate>) {
    let edges: Vec<(usize, usize)> = (0..p.rows())
        .flat_map(|i| p.row_ones(i).map(move |j| (i, j)))
        .collect();
    for class in edge_color_bipartite(p.rows(), p.cols(), &edges) {
        out.extend(class.into_iter().map(|(i, j)| Gate::cz(a[i], b[j])));
    }
}

/// Emits the two flip-correction rectangles for a halving result.
pub(crate) fn emit_flip_rectangles(a: &[usize], b: &[usize], h: &HalvingResult, out: &mut Split) {
    let (a_in, a_out) = partition(a, &h.row_flips);
    let (b_in, b_out) = partition(b, &h.col_flips);
    for (x, y) in [(&a_in, &b_out), (&a_out, &b_in)] {
        if !x.is_empty() && !y.is_empty() {
            emit_rectangle(x, y, out);
        }
    }
}

/// Splits `qs` into the entries at the (sorted) positions `idx` and the rest.
pub(crate) fn partition(qs: &[usize], idx: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut inside = Vec::with_capacity(idx.len());
    let mut outside = Vec::with_capacity(qs.len() - idx.len());
    let mut it = idx.iter().peekable();
    for (i, &q) in qs.iter().enumerate() {
        if it.peek() == Some(&&i) {
            it.next();
            inside.push(q);
        } else {
            outside.push(q);
        }
    }
    (inside, outside)
}

/// Full pattern synthesis: rectangles for the flips, then colour layers.
pub(crate) fn emit_m01(a: &[usize], b: &[usize], p: &BitMatrix, out: &mut Split) {
    let h = halve_weights(&M01Pattern::new(p.clone()));
    emit_flip_rectangles(a, b, &h, out);
    emit_colored(a, b, h.reduced.bits(), &mut out.body);
}

/// Implements exactly the CZ gates marked in `p` between `a` and `b`.
/// The circuit spans `max(a, b) + 1` qubits.
pub fn synth_m01(a: &QubitSet, b: &QubitSet, p: &M01Pattern) -> Result<Circuit> {
    check_disjoint(a, b)?;
    if p.k() != a.len() || p.m() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} pattern on sets of size {} and {}",
            p.k(),
            p.m(),
            a.len(),
            b.len()
        )));
    }
    let mut split = Split::default();
    emit_m01(a.as_slice(), b.as_slice(), &p.bits, &mut split);
    let n = a.max_qubit().max(b.max_qubit()) + 1;
    Ok(Circuit::from_trusted(n, split.into_gates()))
}

/// The depth guaranteed for a `k x m` pattern.
#[must_use]
pub fn m01_depth_bound(k: usize, m: usize) -> usize {
    if k.max(m) <= 1 {
        1
    } else {
        (k / 2).max(m / 2) + 2 * clog2(k).max(clog2(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::phase_oracle;

    #[test]
    fn all_zero_needs_no_flips() {
        let h = halve_weights(&M01Pattern::zeros(4, 6));
        assert_eq!(h.flips, 0);
        assert!(h.reduced.bits().is_zero());
        assert_eq!(h.inspections, 10);
    }

    #[test]
    fn all_ones_clears_completely() {
        let p = M01Pattern::new(BitMatrix::from_fn(4, 5, |_, _| true));
        let h = halve_weights(&p);
        assert!(h.reduced.bits().is_zero());
        assert_eq!(h.row_flips, vec![0, 1, 2, 3]);
        assert!(h.col_flips.is_empty());
    }

    #[test]
    fn reduced_matches_flip_sets() {
        let p = M01Pattern::new(BitMatrix::from_fn(7, 9, |i, j| (i * 7 + j * 3) % 5 < 3));
        let h = halve_weights(&p);
        for i in 0..7 {
            for j in 0..9 {
                let expect =
                    p.get(i, j) ^ h.row_flips.contains(&i) ^ h.col_flips.contains(&j);
                assert_eq!(h.reduced.get(i, j), expect);
            }
        }
        assert!(bipartite_edge_color(&h.reduced).is_ok());
    }

    #[test]
    fn coloring_rejects_heavy_patterns() {
        let p = M01Pattern::new(BitMatrix::from_fn(2, 2, |i, _| i == 0));
        assert_eq!(
            bipartite_edge_color(&p),
            Err(Error::DegreeTooHigh { degree: 2, limit: 1 })
        );
    }

    #[test]
    fn trivial_colorings() {
        assert!(bipartite_edge_color(&M01Pattern::zeros(3, 3)).unwrap().is_empty());
        let ident = M01Pattern::new(BitMatrix::from_fn(4, 6, |i, j| i == j));
        // Identity rows have weight 1 <= 3 and columns weight 1 <= 2.
        assert_eq!(bipartite_edge_color(&ident).unwrap().len(), 1);
    }

    #[test]
    fn dense_three_by_three_uses_three_colours() {
        let edges = [(0, 0), (1, 1), (0, 1), (1, 2), (2, 2), (2, 0), (0, 2), (1, 0), (2, 1)];
        let classes = edge_color_bipartite(3, 3, &edges);
        assert_eq!(classes.len(), 3);
        let total: usize = classes.iter().map(Vec::len).sum();
        assert_eq!(total, edges.len());
        for class in &classes {
            let mut l = [false; 3];
            let mut r = [false; 3];
            for &(u, v) in class {
                assert!(!l[u] && !r[v]);
                l[u] = true;
                r[v] = true;
            }
        }
    }

    #[test]
    fn single_edge_is_single_cz() {
        let mut p = M01Pattern::zeros(3, 4);
        p.set(1, 2, true);
        let c = synth_m01(&QubitSet::range(0, 3), &QubitSet::range(3, 7), &p).unwrap();
        assert_eq!(c.gates(), &[Gate::cz(1, 5)]);
    }

    #[test]
    fn all_ones_four_by_five_is_one_rectangle() {
        let p = M01Pattern::new(BitMatrix::from_fn(4, 5, |_, _| true));
        let c = synth_m01(&QubitSet::range(0, 4), &QubitSet::range(4, 9), &p).unwrap();
        assert!(c.two_qubit_depth() <= 6);
        let ph = phase_oracle(&c).unwrap();
        for (x, &neg) in ph.iter().enumerate() {
            let pa = (x & 0xF).count_ones() % 2;
            let pb = (x >> 4).count_ones() % 2;
            assert_eq!(neg, pa & pb == 1);
        }
    }

    #[test]
    fn dimension_checks() {
        let p = M01Pattern::zeros(2, 2);
        assert!(synth_m01(&QubitSet::range(0, 3), &QubitSet::range(3, 5), &p).is_err());
        assert!(synth_m01(&QubitSet::range(0, 2), &QubitSet::range(1, 3), &p).is_err());
    }
}
