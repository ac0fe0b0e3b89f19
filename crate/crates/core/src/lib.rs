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

//! Depth-optimized synthesis of CZ, CNOT and Clifford circuits.
//!
//! Depth always means two-qubit gate depth: single-qubit gates are free and
//! gates are scheduled as soon as possible in list order. The synthesizers
//! emit gate orders whose ASAP schedule meets the recursion bounds in
//! [`bounds`].

pub mod bounds;
pub mod circuit;
pub mod clifford;
pub mod cnot;
pub mod cz;
pub mod error;
pub mod gf2;
pub mod m01;
pub mod random;
pub mod rectangle;
pub mod tableau;
pub mod verify;

pub use bounds::{
    cnot_depth_recursion, cz_depth_recursion, crossover_scan, prior_art_bound,
    validate_closed_form, BoundFormula, DepthTables, Family,
};
pub use circuit::{Circuit, CircuitFile, Gate};
pub use clifford::{decompose_tableau, synth_clifford, CliffordLayers};
pub use cnot::{remove_hadamards, synth_linear, synth_triangular, LinearReversible, LinearSynthesis, SynthMode};
pub use cz::{synth_cz, synth_cz_coloring, synth_cz_with, CzSpec, CzStrategy, StrategyChoice};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, LuDecomposition, Permutation};
pub use m01::{bipartite_edge_color, halve_weights, synth_m01, HalvingResult, M01Pattern};
pub use rectangle::{parity_tree, synth_rectangle, ParityTree, QubitSet};
pub use tableau::{tableau_of_circuit, CliffordTableau};
pub use verify::{linear_action, phase_oracle, tableaux_equal};
