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

//! Seeded random instances. All generators draw from [`ChaCha8Rng`] seeded
//! with `seed_from_u64`, so a seed gives the same instance on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::cz::CzSpec;
use crate::gf2::{BitMatrix, Permutation};
use crate::m01::M01Pattern;
use crate::tableau::CliffordTableau;

#[must_use]
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each of the `n(n-1)/2` gates present with probability 1/2.
pub fn random_cz_spec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CzSpec {
    let mut spec = CzSpec::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            spec.set(i, j, rng.gen());
        }
    }
    spec
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::new(map).expect("a shuffle is a bijection")
}

/// `L * P * U` with random unit-triangular `L`, `U` and a random permutation.
pub fn random_invertible<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BitMatrix {
    let l = BitMatrix::from_fn(n, n, |i, j| i == j || (j < i && rng.gen()));
    let u = BitMatrix::from_fn(n, n, |i, j| i == j || (j > i && rng.gen()));
    let p = random_permutation(n, rng);
    let pu = u.relabel_rows(&p).expect("sizes agree");
    l.mul(&pu).expect("sizes agree")
}

/// Each entry set with probability `density`.
pub fn random_m01<R: Rng + ?Sized>(k: usize, m: usize, density: f64, rng: &mut R) -> M01Pattern {
    M01Pattern::new(BitMatrix::from_fn(k, m, |_, _| rng.gen_bool(density)))
}

/// `len` gates: CNOT on a random ordered pair with probability 1/2 (when
/// `n >= 2`), otherwise `H` or `P` on a random qubit with equal odds.
pub fn random_clifford_circuit<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> Circuit {
    let mut gates = Vec::with_capacity(len + 2 * n);
    for _ in 0..len {
        if n >= 2 && rng.gen_bool(0.5) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            gates.push(Gate::cnot(a, b));
        } else {
            let q = rng.gen_range(0..n);
            gates.push(if rng.gen() { Gate::H(q) } else { Gate::P(q) });
        }
    }
    Circuit::from_trusted(n, gates)
}

/// Tableau of a random circuit of `10n` gates followed by a random Pauli.
pub fn random_tableau<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CliffordTableau {
    let mut c = random_clifford_circuit(n, 10 * n, rng).into_gates();
    for q in 0..n {
        if rng.gen() {
            c.push(Gate::X(q));
        }
        if rng.gen() {
            c.push(Gate::Z(q));
        }
    }
    CliffordTableau::from_circuit(&Circuit::from_trusted(n, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = random_invertible(20, &mut rng_from_seed(5));
        let b = random_invertible(20, &mut rng_from_seed(5));
        assert_eq!(a, b);
        assert!(a.inverse().is_ok());
        let c = random_cz_spec(9, &mut rng_from_seed(1));
        assert_eq!(c, random_cz_spec(9, &mut rng_from_seed(1)));
    }

    #[test]
    fn random_tableaux_are_valid() {
        let mut rng = rng_from_seed(3);
        for n in 1..6 {
            assert!(random_tableau(n, &mut rng).is_symplectic());
        }
    }
}
