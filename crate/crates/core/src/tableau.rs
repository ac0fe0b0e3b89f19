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

//! Stabilizer tableaux: the conjugation action of a Clifford unitary on the
//! Pauli generators `X_0..X_{n-1}, Z_0..Z_{n-1}`.

use std::fmt;

use crate::circuit::{Circuit, Gate};
use crate::error::{parse_err, Error, Result};
use crate::gf2::{BitIter, BitMatrix};

/// Row `i < n` is the image of `X_i`, row `n + i` the image of `Z_i`. Each
/// row is a Pauli `(-1)^sign * prod_q sigma(x_q, z_q)` with `sigma(1,1) = Y`.
///
/// Bits are stored per qubit column so gate updates touch whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordTableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    r: Vec<u64>,
}

#[inline]
fn bit(v: &[u64], i: usize) -> bool {
    (v[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
fn put(v: &mut [u64], i: usize, b: bool) {
    let m = 1u64 << (i % 64);
    if b {
        v[i / 64] |= m;
    } else {
        v[i / 64] &= !m;
    }
}

/// A Pauli in product form `i^e * X^x * Z^z` over packed qubit vectors.
struct ProductPauli {
    e: u32,
    x: Vec<u64>,
    z: Vec<u64>,
}

impl ProductPauli {
    fn mul_assign(&mut self, e: u32, x: &[u64], z: &[u64]) {
        let cross: u32 = self.z.iter().zip(x).map(|(a, b)| (a & b).count_ones()).sum();
        self.e = (self.e + e + 2 * cross) % 4;
        for (d, s) in self.x.iter_mut().zip(x) {
            *d ^= s;
        }
        for (d, s) in self.z.iter_mut().zip(z) {
            *d ^= s;
        }
    }
}

fn overlap(x: &[u64], z: &[u64]) -> u32 {
    x.iter().zip(z).map(|(a, b)| (a & b).count_ones()).sum()
}

/// Row-major copy: per generator, packed x and z qubit vectors and a sign.
struct Rows {
    x: Vec<Vec<u64>>,
    z: Vec<Vec<u64>>,
    sign: Vec<bool>,
}

impl CliffordTableau {
    /// The tableau of the empty circuit on `n >= 1` qubits.
    #[must_use]
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "tableaux need at least one qubit");
        let words = (2 * n).div_ceil(64);
        let mut t = CliffordTableau {
            n,
            words,
            x: vec![0; n * words],
            z: vec![0; n * words],
            r: vec![0; words],
        };
        for q in 0..n {
            put(&mut t.x[q * words..(q + 1) * words], q, true);
            put(&mut t.z[q * words..(q + 1) * words], n + q, true);
        }
        t
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// x-bit of qubit `q` in generator row `row`.
    #[must_use]
    pub fn x_bit(&self, row: usize, q: usize) -> bool {
        bit(&self.x[q * self.words..(q + 1) * self.words], row)
    }

    #[must_use]
    pub fn z_bit(&self, row: usize, q: usize) -> bool {
        bit(&self.z[q * self.words..(q + 1) * self.words], row)
    }

    #[must_use]
    pub fn sign(&self, row: usize) -> bool {
        bit(&self.r, row)
    }

    /// The tableau of `c` applied to the identity.
    #[must_use]
    pub fn from_circuit(c: &Circuit) -> Self {
        let mut t = Self::identity(c.qubit_count().max(1));
        for &g in c.gates() {
            t.apply_unchecked(g);
        }
        t
    }

    /// Appends `c` (acting after everything already recorded).
    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.qubit_count() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit circuit on a {}-qubit tableau",
                c.qubit_count(),
                self.n
            )));
        }
        for &g in c.gates() {
            self.apply_unchecked(g);
        }
        Ok(())
    }

    /// Appends one gate.
    pub fn apply(&mut self, g: Gate) -> Result<()> {
        if g.max_qubit() >= self.n {
            return Err(Error::QubitOutOfRange {
                qubit: g.max_qubit(),
                qubits: self.n,
            });
        }
        if let Some((a, b)) = g.pair() {
            if a == b {
                return Err(Error::RepeatedQubit(a));
            }
        }
        self.apply_unchecked(g);
        Ok(())
    }

    pub(crate) fn apply_unchecked(&mut self, g: Gate) {
        let w = self.words;
        match g {
            Gate::H(q) => {
                for i in q * w..(q + 1) * w {
                    self.r[i - q * w] ^= self.x[i] & self.z[i];
                    std::mem::swap(&mut self.x[i], &mut self.z[i]);
                }
            }
            Gate::P(q) => {
                for i in q * w..(q + 1) * w {
                    self.r[i - q * w] ^= self.x[i] & self.z[i];
                    self.z[i] ^= self.x[i];
                }
            }
            Gate::X(q) => {
                for k in 0..w {
                    self.r[k] ^= self.z[q * w + k];
                }
            }
            Gate::Z(q) => {
                for k in 0..w {
                    self.r[k] ^= self.x[q * w + k];
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (control * w, target * w);
                for k in 0..w {
                    let (xc, zc, xt, zt) = (self.x[c + k], self.z[c + k], self.x[t + k], self.z[t + k]);
                    self.r[k] ^= xc & zt & !(xt ^ zc);
                    self.x[t + k] = xt ^ xc;
                    self.z[c + k] = zc ^ zt;
                }
            }
            Gate::Cz(a, b) => {
                self.apply_unchecked(Gate::H(b));
                self.apply_unchecked(Gate::cnot(a, b));
                self.apply_unchecked(Gate::H(b));
            }
        }
    }

    fn rows(&self) -> Rows {
        let n = self.n;
        let qw = n.div_ceil(64);
        let mut x = vec![vec![0u64; qw]; 2 * n];
        let mut z = vec![vec![0u64; qw]; 2 * n];
        for q in 0..n {
            for (wi, &word) in self.x[q * self.words..(q + 1) * self.words].iter().enumerate() {
                for b in BitIter(word) {
                    put(&mut x[wi * 64 + b], q, true);
                }
            }
            for (wi, &word) in self.z[q * self.words..(q + 1) * self.words].iter().enumerate() {
                for b in BitIter(word) {
                    put(&mut z[wi * 64 + b], q, true);
                }
            }
        }
        Rows {
            x,
            z,
            sign: (0..2 * n).map(|g| self.sign(g)).collect(),
        }
    }

    /// The tableau of "`self`, then `other`".
    pub fn then(&self, other: &CliffordTableau) -> Result<CliffordTableau> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "composing {}-qubit and {}-qubit tableaux",
                self.n, other.n
            )));
        }
        let n = self.n;
        let a = self.rows();
        let b = other.rows();
        let b_e: Vec<u32> = (0..2 * n)
            .map(|g| (2 * u32::from(b.sign[g]) + overlap(&b.x[g], &b.z[g])) % 4)
            .collect();
        let mut out = CliffordTableau::identity(n);
        out.x.fill(0);
        out.z.fill(0);
        let qw = n.div_ceil(64);
        for g in 0..2 * n {
            let mut acc = ProductPauli {
                e: (2 * u32::from(a.sign[g]) + overlap(&a.x[g], &a.z[g])) % 4,
                x: vec![0; qw],
                z: vec![0; qw],
            };
            for q in 0..n {
                if bit(&a.x[g], q) {
                    acc.mul_assign(b_e[q], &b.x[q], &b.z[q]);
                }
                if bit(&a.z[g], q) {
                    acc.mul_assign(b_e[n + q], &b.x[n + q], &b.z[n + q]);
                }
            }
            let phase = (acc.e + 4 - overlap(&acc.x, &acc.z) % 4) % 4;
            debug_assert!(phase.is_multiple_of(2), "images of Hermitian Paulis are Hermitian");
            out.set_row(g, &acc.x, &acc.z, phase == 2);
        }
        Ok(out)
    }

    fn set_row(&mut self, g: usize, x: &[u64], z: &[u64], sign: bool) {
        let w = self.words;
        for q in 0..self.n {
            put(&mut self.x[q * w..(q + 1) * w], g, bit(x, q));
            put(&mut self.z[q * w..(q + 1) * w], g, bit(z, q));
        }
        put(&mut self.r, g, sign);
    }

    /// The `2n x 2n` matrix whose row `g` is `(x bits | z bits)` of generator `g`.
    #[must_use]
    pub fn symplectic_matrix(&self) -> BitMatrix {
        let n = self.n;
        let mut m = BitMatrix::zeros(2 * n, 2 * n);
        for q in 0..n {
            for g in 0..2 * n {
                if self.x_bit(g, q) {
                    m.set(g, q, true);
                }
                if self.z_bit(g, q) {
                    m.set(g, n + q, true);
                }
            }
        }
        m
    }

    #[must_use]
    pub fn phases(&self) -> Vec<bool> {
        (0..2 * self.n).map(|g| self.sign(g)).collect()
    }

    /// Builds a tableau from its matrix and phase bits, checking the
    /// symplectic condition.
    #[allow(clippy::needless_range_loop)]
    pub fn from_parts(symplectic: &BitMatrix, phases: &[bool]) -> Result<Self> {
        let m = symplectic.rows();
        if !m.is_multiple_of(2) || !symplectic.is_square() || phases.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "tableau needs a 2n x 2n matrix and 2n phases, got {}x{} and {}",
                symplectic.rows(),
                symplectic.cols(),
                phases.len()
            )));
        }
        let n = m / 2;
        let mut t = Self::identity(n);
        t.x.fill(0);
        t.z.fill(0);
        let w = t.words;
        for g in 0..m {
            for q in 0..n {
                put(&mut t.x[q * w..(q + 1) * w], g, symplectic.get(g, q));
                put(&mut t.z[q * w..(q + 1) * w], g, symplectic.get(g, n + q));
            }
            put(&mut t.r, g, phases[g]);
        }
        if !t.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(t)
    }

    /// Checks that generator images keep the Pauli commutation relations.
    #[must_use]
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        let rows = self.rows();
        for i in 0..2 * n {
            for j in i..2 * n {
                let form = (overlap(&rows.x[i], &rows.z[j]) + overlap(&rows.z[i], &rows.x[j])) % 2;
                let expect = u32::from(j == i + n && i < n);
                if form != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Text form: `n`, then `2n` rows of `2n` bits, then `2n` phase bits.
    #[must_use]
    pub fn to_text(&self) -> String {
        let m = self.symplectic_matrix();
        let mut s = format!("{}\n", self.n);
        for g in 0..2 * self.n {
            for j in 0..2 * self.n {
                s.push(if m.get(g, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        for g in 0..2 * self.n {
            s.push(if self.sign(g) { '1' } else { '0' });
        }
        s.push('\n');
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let (hl, head) = *lines.first().ok_or_else(|| parse_err(1, "missing qubit count"))?;
        let n: usize = head.parse().map_err(|_| parse_err(hl, "expected qubit count"))?;
        if n == 0 {
            return Err(parse_err(hl, "qubit count must be positive"));
        }
        if lines.len() != 2 * n + 2 {
            return Err(parse_err(
                lines.last().map_or(hl, |l| l.0),
                format!("expected {} bit rows", 2 * n + 1),
            ));
        }
        let bits = |ln: usize, l: &str| -> Result<Vec<bool>> {
            if l.len() != 2 * n {
                return Err(parse_err(ln, format!("expected {} bits", 2 * n)));
            }
            l.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(parse_err(ln, format!("bad character {c:?}"))),
                })
                .collect()
        };
        let mut m = BitMatrix::zeros(2 * n, 2 * n);
        for (g, &(ln, l)) in lines[1..=2 * n].iter().enumerate() {
            for (j, b) in bits(ln, l)?.into_iter().enumerate() {
                m.set(g, j, b);
            }
        }
        let (ln, l) = lines[2 * n + 1];
        let phases = bits(ln, l)?;
        Self::from_parts(&m, &phases)
    }
}

impl fmt::Debug for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CliffordTableau(\n{})", self.to_text())
    }
}

/// The tableau of a Clifford circuit.
#[must_use]
pub fn tableau_of_circuit(c: &Circuit) -> CliffordTableau {
    CliffordTableau::from_circuit(c)
}
