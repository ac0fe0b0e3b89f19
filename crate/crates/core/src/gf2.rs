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

//! Dense bit-packed matrices over GF(2) and permutations.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A dense matrix over GF(2), stored row-major with 64 bits per word.
///
/// Padding bits beyond `cols` in every row are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    /// All-zero `rows x cols` matrix.
    ///
    /// # Panics
    /// Panics if either dimension is zero.
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "BitMatrix dimensions must be positive");
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    #[must_use]
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows written as strings of `0`/`1`.
    pub fn from_row_strings(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || cols == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(parse_err(i + 1, "ragged row"));
            }
            for (j, ch) in r.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(parse_err(i + 1, format!("bad character {ch:?}"))),
                }
            }
        }
        Ok(m)
    }

    #[inline]
    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    #[must_use]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    #[inline]
    #[must_use]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Row `dst` ^= row `src`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        if src == dst {
            self.data[dst * self.stride..(dst + 1) * self.stride].fill(0);
            return;
        }
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= *x;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Flips every entry of row `i`.
    pub fn complement_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self.flip(i, j);
        }
    }

    /// Flips every entry of column `j`.
    pub fn complement_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self.flip(i, j);
        }
    }

    #[must_use]
    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// True when every entry strictly below the diagonal is zero.
    #[must_use]
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| !self.get(i, j)))
    }

    /// True when every entry strictly above the diagonal is zero.
    #[must_use]
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| !self.get(i, j)))
    }

    /// Column indices of the ones in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(i)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in self.row_ones(i) {
                for (d, x) in dst.iter_mut().zip(other.row_words(k)) {
                    *d ^= *x;
                }
            }
        }
        Ok(out)
    }

    /// Entrywise sum (XOR) with a matrix of the same shape.
    pub fn xor(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (d, x) in out.data.iter_mut().zip(&other.data) {
            *d ^= *x;
        }
        Ok(out)
    }

    /// Inverse over GF(2) by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<BitMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| a.get(r, c)).ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for r in 0..n {
                if r != c && a.get(r, c) {
                    a.xor_row_into(c, r);
                    inv.xor_row_into(c, r);
                }
            }
        }
        Ok(inv)
    }

    /// LU decomposition with row pivoting.
    ///
    /// The result satisfies `r[perm[i]] == (l * u)[i]` for every row `i`.
    pub fn lu_decompose(&self) -> Result<LuDecomposition> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot factor a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut u = self.clone();
        // Strictly lower part of L; rows travel with their pivots.
        let mut l = Self::zeros(n, n);
        let mut perm: Vec<usize> = (0..n).collect();
        for j in 0..n {
            let p = (j..n).find(|&r| u.get(r, j)).ok_or(Error::Singular)?;
            u.swap_rows(j, p);
            l.swap_rows(j, p);
            perm.swap(j, p);
            for i in (j + 1)..n {
                if u.get(i, j) {
                    u.xor_row_into(j, i);
                    l.set(i, j, true);
                }
            }
        }
        for i in 0..n {
            l.set(i, i, true);
        }
        Ok(LuDecomposition {
            perm: Permutation { map: perm },
            lower: l,
            upper: u,
        })
    }

    /// Returns `out` with `out[perm[i]] = self[i]`.
    pub fn relabel_rows(&self, perm: &Permutation) -> Result<BitMatrix> {
        if perm.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "permutation of size {} applied to {} rows",
                perm.len(),
                self.rows
            )));
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let d = perm.apply(i);
            out.data[d * self.stride..(d + 1) * self.stride].copy_from_slice(self.row_words(i));
        }
        Ok(out)
    }

    /// The block with the given row and column ranges.
    #[must_use]
    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> BitMatrix {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j))
    }

    /// Serializes to the text format: a `rows cols` header then one line per row.
    #[must_use]
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1) + 16);
        s.push_str(&format!("{} {}\n", self.rows, self.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text format produced by [`BitMatrix::to_text`].
    pub fn parse_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(hl + 1, e.to_string()))?;
        let [rows, cols] = dims[..] else {
            return Err(parse_err(hl + 1, "header must be `rows cols`"));
        };
        if rows == 0 || cols == 0 {
            return Err(parse_err(hl + 1, "dimensions must be positive"));
        }
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hl + 2 + i, "missing matrix row"))?;
            let line = line.trim();
            if line.len() != cols {
                return Err(parse_err(ln + 1, format!("expected {cols} bits")));
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => return Err(parse_err(ln + 1, format!("bad character {ch:?}"))),
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln + 1, "trailing data"));
        }
        Ok(m)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BitMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

/// Iterator over set bit positions of a word.
pub(crate) struct BitIter(pub(crate) u64);

impl Iterator for BitIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Output of [`BitMatrix::lu_decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LuDecomposition {
    pub perm: Permutation,
    /// Lower unitriangular factor.
    pub lower: BitMatrix,
    /// Upper unitriangular factor.
    pub upper: BitMatrix,
}

impl LuDecomposition {
    /// Recombines the factors into the original matrix.
    pub fn reconstruct(&self) -> Result<BitMatrix> {
        self.lower.mul(&self.upper)?.relabel_rows(&self.perm)
    }
}

/// A bijection on `0..n`, stored as `i -> map[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n {
                return Err(Error::InvalidPermutation(format!("{x} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{x} repeated")));
            }
        }
        Ok(Permutation { map })
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    #[inline]
    #[must_use]
    pub fn len(&self) -> usize {
        self.map.len()
    }

    #[inline]
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    #[must_use]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    #[must_use]
    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    /// The map `i -> other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutations of size {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    /// Cycles of length at least two, each starting at its smallest element
    /// and listed so that `cycle[i] -> cycle[i + 1]`.
    #[must_use]
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Writes the permutation as at most two layers of disjoint transpositions.
    ///
    /// Swapping the contents of each pair in layer one and then layer two moves
    /// whatever sat at position `i` to position `self.apply(i)`.
    #[must_use]
    pub fn transposition_layers(&self) -> Vec<Vec<(usize, usize)>> {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for c in self.cycles() {
            let l = c.len();
            // Reflections i <-> -i and i <-> 1-i (indices mod l); their product
            // sends c[i] to c[i + 1].
            for i in 0..l {
                let p = (l - i) % l;
                if i < p {
                    first.push((c[i], c[p]));
                }
                let q = (l + 1 - i) % l;
                if i < q {
                    second.push((c[i], c[q]));
                }
            }
        }
        [first, second].into_iter().filter(|l| !l.is_empty()).collect()
    }
}
