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

use thiserror::Error;

/// Errors reported by the synthesis, verification and parsing routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular over GF(2)")]
    Singular,
    #[error("matrix is not upper triangular")]
    NotUpperTriangular,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid qubit set: {0}")]
    InvalidQubitSet(String),
    #[error("qubit sets overlap at qubit {0}")]
    OverlappingSets(usize),
    #[error("qubit {qubit} out of range for a {qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, qubits: usize },
    #[error("two-qubit gate acts twice on qubit {0}")]
    RepeatedQubit(usize),
    #[error("pattern degree {degree} exceeds the half bound {limit}")]
    DegreeTooHigh { degree: usize, limit: usize },
    #[error("gate {gate} is not allowed here: {reason}")]
    UnsupportedGate { gate: String, reason: String },
    #[error("circuit does not act as the identity on basis labels")]
    NotDiagonal,
    #[error("tableau is not symplectic")]
    NotSymplectic,
    #[error("circuit is not a linear reversible map on basis labels")]
    NotLinear,
    #[error("layered decomposition failed: {0}")]
    Decomposition(String),
    #[error("unexpected hadamard structure: {0}")]
    HadamardStructure(String),
    #[error("n = {n} is outside the supported range {lo}..={hi}")]
    OutOfRange { n: usize, lo: usize, hi: usize },
    #[error("{n} qubits is too many for the exhaustive oracle (limit {limit})")]
    TooManyQubits { n: usize, limit: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
