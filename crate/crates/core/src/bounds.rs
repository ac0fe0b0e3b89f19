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

//! Exact solutions of the depth recursions, their closed-form envelopes,
//! prior-art reference bounds and crossover scans.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::cz::CzStrategy;
use crate::error::{Error, Result};
use crate::rectangle::clog2;

/// Largest qubit count covered by the tables.
pub const MAX_N: usize = 1_345_000;

/// Circuit families with a depth recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// CZ circuits with all three strategies.
    Cz,
    /// CZ circuits restricted to colouring and the one-step split.
    CzBasic,
    /// Linear reversible circuits, synthesized exactly (including SWAPs).
    Cnot,
    /// Full Clifford circuits.
    Clifford,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Cz, Family::CzBasic, Family::Cnot, Family::Clifford];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Family::Cz => "cz",
            Family::CzBasic => "cz-basic",
            Family::Cnot => "cnot",
            Family::Clifford => "clifford",
        }
    }

    /// The closed-form envelope claimed for this family.
    #[must_use]
    pub fn formula(self) -> BoundFormula {
        match self {
            Family::Cz => CZ_BOUND,
            Family::CzBasic => CZ_BASIC_BOUND,
            Family::Cnot => CNOT_EXACT_BOUND,
            Family::Clifford => CLIFFORD_BOUND,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// `floor(linear*n + log2_sq*log2(n)^2 + log2*log2(n) + constant)`, claimed
/// for `n` in `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundFormula {
    pub name: &'static str,
    pub linear: f64,
    pub log2_sq: f64,
    pub log2: f64,
    pub constant: f64,
    pub lo: usize,
    pub hi: usize,
}

pub const CZ_BOUND: BoundFormula = BoundFormula {
    name: "cz",
    linear: 0.5,
    log2_sq: 0.4993,
    log2: 3.0191,
    constant: -10.9139,
    lo: 39,
    hi: MAX_N,
};

pub const CZ_BASIC_BOUND: BoundFormula = BoundFormula {
    name: "cz-basic",
    linear: 0.5,
    log2_sq: 0.9937,
    log2: 1.1882,
    constant: -14.6772,
    lo: 43,
    hi: MAX_N,
};

/// Bound on one triangular factor.
pub const CNOT_TRIANGULAR_BOUND: BoundFormula = BoundFormula {
    name: "cnot-triangular",
    linear: 0.5,
    log2_sq: 0.9748,
    log2: 1.7538,
    constant: -14.7134,
    lo: 70,
    hi: MAX_N,
};

pub const CNOT_EXACT_BOUND: BoundFormula = BoundFormula {
    name: "cnot-exact",
    linear: 1.0,
    log2_sq: 1.9496,
    log2: 3.5075,
    constant: -23.4269,
    lo: 70,
    hi: MAX_N,
};

/// The exact bound minus the depth 6 of the final permutation.
pub const CNOT_REORDERING_BOUND: BoundFormula = BoundFormula {
    name: "cnot-reordering",
    linear: 1.0,
    log2_sq: 1.9496,
    log2: 3.5075,
    constant: -29.4269,
    lo: 70,
    hi: MAX_N,
};

pub const CLIFFORD_BOUND: BoundFormula = BoundFormula {
    name: "clifford",
    linear: 2.0,
    log2_sq: 2.9487,
    log2: 8.4909,
    constant: -44.4798,
    lo: 43,
    hi: MAX_N,
};

const NEAR_INTEGER: f64 = 1e-6;

impl BoundFormula {
    #[must_use]
    pub fn eval(&self, n: usize) -> f64 {
        let l = (n as f64).log2();
        self.linear * n as f64 + self.log2_sq * l * l + self.log2 * l + self.constant
    }

    #[must_use]
    pub fn floor(&self, n: usize) -> i64 {
        self.eval(n).floor() as i64
    }

    /// True when the real value is within `1e-6` of an integer, where the
    /// floor could depend on rounding.
    #[must_use]
    pub fn near_integer(&self, n: usize) -> bool {
        let v = self.eval(n);
        (v - v.round()).abs() < NEAR_INTEGER
    }
}

/// `n - ceil(ceil((n+1)/2) - (n+1)/2)`: `n - 1` for even `n`, `n` for odd.
#[inline]
#[must_use]
pub fn coloring_depth(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        _ if n.is_multiple_of(2) => n - 1,
        _ => n,
    }
}

/// Memoized recursion values for every `n` up to `max_n`.
#[derive(Clone, Debug)]
pub struct DepthTables {
    max_n: usize,
    cz: Vec<u32>,
    cz_basic: Vec<u32>,
    cz_branch: Vec<CzStrategy>,
    cnot: Vec<u32>,
    cnot_first_branch: Vec<u32>,
}

impl DepthTables {
    /// Fills all tables bottom-up for `1 <= n <= max_n`.
    #[must_use]
    pub fn new(max_n: usize) -> Self {
        let size = max_n.max(3) + 1;
        let mut cz = vec![0u32; size];
        let mut cz_basic = vec![0u32; size];
        let mut cz_branch = vec![CzStrategy::ColoringBase; size];
        let mut cnot = vec![0u32; size];
        let mut star = vec![0u32; size];
        for (n, v) in [(2, 1), (3, 3)] {
            cz[n] = v;
            cz_basic[n] = v;
        }
        cnot[2] = 1;
        cnot[3] = 2;
        star[2] = 1;
        star[3] = 2;
        for n in 4..size {
            let h = n.div_ceil(2);
            let q = h.div_ceil(2);
            let color = coloring_depth(n) as u32;
            let split = (h / 2 + 2 * clog2(h)) as u32;
            let one = cz[h] + split;
            let two = cz[q] + (h / 2 + q / 2 + 2 * clog2(q) + 6) as u32;
            let (best, branch) = if color <= one && color <= two {
                (color, CzStrategy::ColoringBase)
            } else if one <= two {
                (one, CzStrategy::OneStep)
            } else {
                (two, CzStrategy::TwoStep)
            };
            cz[n] = best;
            cz_branch[n] = branch;
            cz_basic[n] = color.min(cz_basic[h] + split);
            cnot[n] = cnot[h] + (h as u32).min(split);
            star[n] = star[h] + h as u32;
        }
        DepthTables {
            max_n: size - 1,
            cz,
            cz_basic,
            cz_branch,
            cnot,
            cnot_first_branch: star,
        }
    }

    /// Tables over the full supported range, built once per process.
    pub fn global() -> &'static DepthTables {
        static TABLES: OnceLock<DepthTables> = OnceLock::new();
        TABLES.get_or_init(|| DepthTables::new(MAX_N))
    }

    #[must_use]
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.max_n {
            Err(Error::OutOfRange {
                n,
                lo: 1,
                hi: self.max_n,
            })
        } else {
            Ok(())
        }
    }

    pub fn cz(&self, n: usize) -> Result<u32> {
        self.check(n).map(|()| self.cz[n])
    }

    pub fn cz_basic(&self, n: usize) -> Result<u32> {
        self.check(n).map(|()| self.cz_basic[n])
    }

    pub fn cz_strategy(&self, n: usize) -> Result<CzStrategy> {
        self.check(n).map(|()| self.cz_branch[n])
    }

    /// Recursion bound when the top level uses `strategy` and every lower
    /// level picks the cheapest branch.
    pub fn cz_forced(&self, n: usize, strategy: CzStrategy) -> Result<u32> {
        self.check(n)?;
        if n < 2 {
            return Ok(0);
        }
        let h = n.div_ceil(2);
        let q = h.div_ceil(2);
        Ok(match strategy {
            CzStrategy::ColoringBase => coloring_depth(n) as u32,
            CzStrategy::OneStep => (self.cz[h] + (h / 2 + 2 * clog2(h)) as u32).max(1),
            CzStrategy::TwoStep => self.cz[q] + (h / 2 + q / 2 + 2 * clog2(q) + 6) as u32,
        })
    }

    /// Depth of one triangular factor.
    pub fn cnot_triangular(&self, n: usize) -> Result<u32> {
        self.check(n).map(|()| self.cnot[n])
    }

    /// The triangular recursion restricted to plain colouring at every level.
    pub fn cnot_first_branch(&self, n: usize) -> Result<u32> {
        self.check(n).map(|()| self.cnot_first_branch[n])
    }

    /// Two triangular factors.
    pub fn cnot_up_to_reordering(&self, n: usize) -> Result<u32> {
        self.cnot_triangular(n).map(|d| 2 * d)
    }

    /// Two triangular factors plus at most two SWAP layers of depth 3.
    pub fn cnot_exact(&self, n: usize) -> Result<u32> {
        self.cnot_triangular(n).map(|d| 2 * d + 6)
    }

    /// Depth removed by folding the leading parity trees of the first CZ
    /// stage into the preceding linear stage.
    pub fn merge_saving(&self, n: usize) -> Result<u32> {
        let h = n.div_ceil(2);
        Ok(match self.cz_strategy(n)? {
            CzStrategy::ColoringBase => 0,
            CzStrategy::OneStep => (clog2(h) as u32).saturating_sub(1),
            CzStrategy::TwoStep => clog2(h.div_ceil(2)) as u32,
        })
    }

    /// `cnot_exact + 2 * cz - merge_saving`.
    pub fn clifford(&self, n: usize) -> Result<u32> {
        Ok(self.cnot_exact(n)? + 2 * self.cz(n)? - self.merge_saving(n)?)
    }

    /// The recursion value compared against `family`'s closed form.
    pub fn value(&self, family: Family, n: usize) -> Result<u64> {
        let v = match family {
            Family::Cz => self.cz(n)?,
            Family::CzBasic => self.cz_basic(n)?,
            Family::Cnot => self.cnot_exact(n)?,
            Family::Clifford => self.clifford(n)?,
        };
        Ok(u64::from(v))
    }

    /// First `n` at which `family`'s values decrease, if any.
    #[must_use]
    pub fn first_decrease(&self, family: Family) -> Option<usize> {
        (2..=self.max_n).find(|&n| self.value(family, n).ok() < self.value(family, n - 1).ok())
    }
}

/// CZ recursion value (all three branches), from the shared full-range table.
pub fn cz_depth_recursion(n: usize) -> Result<u32> {
    range_check(n)?;
    DepthTables::global().cz(n)
}

/// Depth of one triangular factor, from the shared full-range table.
pub fn cnot_depth_recursion(n: usize) -> Result<u32> {
    range_check(n)?;
    DepthTables::global().cnot_triangular(n)
}

fn range_check(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange { n, lo: 1, hi: MAX_N })
    }
}

/// Strategy per size `0..=n` for the synthesizers. Small sizes are cheap to
/// recompute, so only large requests touch the shared table.
pub(crate) fn cz_branch_table(n: usize) -> Vec<CzStrategy> {
    if n > 1 << 16 && n <= MAX_N {
        DepthTables::global().cz_branch[..=n].to_vec()
    } else {
        let t = DepthTables::new(n);
        t.cz_branch
    }
}

/// `min(2n, floor(4n/3 + 8 ceil(log2 n)))`.
#[must_use]
pub fn prior_cnot(n: usize) -> u64 {
    if n <= 1 {
        return 0;
    }
    let n = n as u64;
    (2 * n).min(4 * n / 3 + 8 * clog2(n as usize) as u64)
}

/// Reference depths predating the recursive constructions. The Clifford
/// value is a reconstruction: one linear stage plus two CZ stages, each at
/// its reference depth.
#[must_use]
pub fn prior_art_bound(family: Family, n: usize) -> u64 {
    match family {
        Family::Cz | Family::CzBasic => coloring_depth(n) as u64,
        Family::Cnot => prior_cnot(n),
        Family::Clifford => prior_cnot(n) + 2 * coloring_depth(n) as u64,
    }
}

/// Result of checking a closed form against a recursion table.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub family: Family,
    pub formula: BoundFormula,
    pub lo: usize,
    pub hi: usize,
    pub checked: usize,
    /// Values of `n` where the recursion exceeds the floored formula.
    pub violations: Vec<usize>,
    /// Smallest and largest `floor(formula) - recursion` seen.
    pub min_slack: i64,
    pub max_slack: i64,
    /// Values of `n` where the formula is within `1e-6` of an integer.
    pub near_integer: Vec<usize>,
    /// Near-integer points where the recursion equals the rounded formula
    /// value, so the verdict hinges on floating-point rounding.
    pub ambiguous: Vec<usize>,
}

impl ValidationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.ambiguous.is_empty()
    }
}

/// Checks `floor(formula(n)) >= recursion(n)` over the formula's range,
/// clipped to the table size.
#[must_use]
pub fn validate_closed_form(
    tables: &DepthTables,
    family: Family,
    formula: &BoundFormula,
) -> ValidationReport {
    validate_series(tables, family, formula, |n| tables.value(family, n))
}

/// Checks the single-factor closed form against the triangular table.
#[must_use]
pub fn validate_triangular(tables: &DepthTables) -> ValidationReport {
    validate_series(tables, Family::Cnot, &CNOT_TRIANGULAR_BOUND, |n| {
        tables.cnot_triangular(n).map(u64::from)
    })
}

fn validate_series(
    tables: &DepthTables,
    family: Family,
    formula: &BoundFormula,
    value: impl Fn(usize) -> Result<u64>,
) -> ValidationReport {
    let lo = formula.lo.max(1);
    let hi = formula.hi.min(tables.max_n());
    let mut report = ValidationReport {
        family,
        formula: *formula,
        lo,
        hi,
        checked: 0,
        violations: Vec::new(),
        min_slack: i64::MAX,
        max_slack: i64::MIN,
        near_integer: Vec::new(),
        ambiguous: Vec::new(),
    };
    for n in lo..=hi {
        let rec = value(n).expect("n within table") as i64;
        let slack = formula.floor(n) - rec;
        report.checked += 1;
        report.min_slack = report.min_slack.min(slack);
        report.max_slack = report.max_slack.max(slack);
        if slack < 0 {
            report.violations.push(n);
        }
        if formula.near_integer(n) {
            report.near_integer.push(n);
            if formula.eval(n).round() as i64 == rec {
                report.ambiguous.push(n);
            }
        }
    }
    report
}

/// Smallest `n0 >= 2` such that `better(n)` holds for every `n` in
/// `n0..=max_n`, or `None` if it fails at `max_n`.
fn stable_start(max_n: usize, better: impl Fn(usize) -> bool) -> Option<usize> {
    let mut n = max_n;
    if !better(n) {
        return None;
    }
    while n > 2 && better(n - 1) {
        n -= 1;
    }
    Some(n)
}

/// Where the recursive constructions start to beat the reference bounds.
///
/// Every field is the smallest `n0` from which the stated comparison holds
/// strictly for all larger `n` in the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossoverReport {
    /// Exact linear synthesis versus `min(2n, floor(4n/3 + 8 ceil(log2 n)))`.
    pub cnot: Option<usize>,
    /// First `n` at which exact linear synthesis wins at all.
    pub cnot_first_win: Option<usize>,
    /// `floor(4n/3 + 8 ceil(log2 n))` versus `2n`.
    pub prior_internal: Option<usize>,
    pub cz: Option<usize>,
    pub cz_basic: Option<usize>,
    /// Against the reconstructed Clifford reference.
    pub clifford: Option<usize>,
}

#[must_use]
pub fn crossover_scan(tables: &DepthTables) -> CrossoverReport {
    let max = tables.max_n();
    let beats = |family: Family| {
        move |n: usize| tables.value(family, n).expect("in table") < prior_art_bound(family, n)
    };
    CrossoverReport {
        cnot: stable_start(max, beats(Family::Cnot)),
        cnot_first_win: (2..=max).find(|&n| beats(Family::Cnot)(n)),
        prior_internal: stable_start(max, |n| {
            let n64 = n as u64;
            (4 * n64 / 3 + 8 * clog2(n) as u64) < 2 * n64
        }),
        cz: stable_start(max, beats(Family::Cz)),
        cz_basic: stable_start(max, beats(Family::CzBasic)),
        clifford: stable_start(max, beats(Family::Clifford)),
    }
}

/// One row of a comparison table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparisonRow {
    pub n: usize,
    pub prior: u64,
    pub closed_form: i64,
    pub recursion: u64,
}

pub fn comparison_rows(
    tables: &DepthTables,
    family: Family,
    from: usize,
    to: usize,
) -> Result<Vec<ComparisonRow>> {
    let f = family.formula();
    (from..=to)
        .map(|n| {
            Ok(ComparisonRow {
                n,
                prior: prior_art_bound(family, n),
                closed_form: f.floor(n),
                recursion: tables.value(family, n)?,
            })
        })
        .collect()
}

/// Writes `n,prior,closed_form,recursion` rows. The Clifford prior column is
/// headed `prior_reconstructed`.
pub fn write_comparison_csv<W: Write>(
    rows: &[ComparisonRow],
    family: Family,
    writer: W,
) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let prior = if family == Family::Clifford {
        "prior_reconstructed"
    } else {
        "prior"
    };
    w.write_record(["n", prior, "closed_form", "recursion"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.prior.to_string(),
            r.closed_form.to_string(),
            r.recursion.to_string(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let t = DepthTables::new(64);
        let cz: Vec<u32> = (1..=12).map(|n| t.cz(n).unwrap()).collect();
        assert_eq!(cz, [0, 1, 3, 3, 5, 5, 7, 7, 9, 9, 11, 11]);
        let cnot: Vec<u32> = (1..=12).map(|n| t.cnot_triangular(n).unwrap()).collect();
        assert_eq!(cnot, [0, 1, 2, 3, 5, 5, 7, 7, 10, 10, 11, 11]);
    }

    #[test]
    fn out_of_range() {
        let t = DepthTables::new(10);
        assert!(t.cz(0).is_err());
        assert!(t.cz(11).is_err());
        assert!(cz_depth_recursion(MAX_N + 1).is_err());
        assert!(cnot_depth_recursion(0).is_err());
    }

    #[test]
    fn prior_values() {
        assert_eq!(prior_art_bound(Family::Cz, 4), 3);
        assert_eq!(prior_art_bound(Family::Cz, 5), 5);
        assert_eq!(prior_art_bound(Family::Cnot, 64), 128);
        assert_eq!(prior_art_bound(Family::Cnot, 1024), 1445);
    }

    #[test]
    fn csv_layout() {
        let t = DepthTables::new(20);
        let rows = comparison_rows(&t, Family::Clifford, 5, 5).unwrap();
        let mut buf = Vec::new();
        write_comparison_csv(&rows, Family::Clifford, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,prior_reconstructed,closed_form,recursion"));
        assert!(lines.next().unwrap().starts_with("5,"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn stable_start_semantics() {
        assert_eq!(stable_start(10, |n| n >= 7), Some(7));
        assert_eq!(stable_start(10, |n| n != 10), None);
        assert_eq!(stable_start(10, |n| n != 5), Some(6));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>(), Ok(f));
        }
    }
}
