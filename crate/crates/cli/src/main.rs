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

//! `cliffdepth` command-line tool.
//!
//! Exit status: 0 on success, 1 when a verification or bound check fails,
//! 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use cliffdepth::bounds::{
    comparison_rows, crossover_scan, validate_triangular, write_comparison_csv, ValidationReport,
    CNOT_EXACT_BOUND, CNOT_REORDERING_BOUND, MAX_N,
};
use cliffdepth::random::{random_cz_spec, random_invertible, random_tableau, rng_from_seed};
use cliffdepth::verify::{cz_spec_phases, linear_action_clifford, PHASE_ORACLE_MAX_QUBITS};
use cliffdepth::{
    phase_oracle, remove_hadamards, synth_clifford, synth_cz_with, synth_linear,
    validate_closed_form, BitMatrix, Circuit, CircuitFile, CliffordTableau, CzSpec, DepthTables,
    Family, Gate, LinearReversible, Permutation, StrategyChoice, SynthMode,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cliffdepth", version, about = "Depth-optimized CZ, CNOT and Clifford synthesis")]
struct Cli {
    /// Print summaries as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Circ,
    Qasm2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Auto,
    Tableau,
    Phase,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Cz,
    Linear,
    Tableau,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a CZ circuit from a symmetric or strictly upper matrix.
    SynthCz {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// auto, coloring, onestep or twostep.
        #[arg(long, default_value = "auto")]
        strategy: StrategyChoice,
        #[arg(long, value_enum, default_value = "circ")]
        format: Format,
    },
    /// Synthesize a linear reversible map from an invertible matrix.
    SynthCnot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// exact, or perm to leave the output qubits relabeled.
        #[arg(long, default_value = "exact")]
        mode: SynthMode,
        /// Rewrite the result without Hadamard or CZ gates.
        #[arg(long)]
        cnot_only: bool,
        #[arg(long, value_enum, default_value = "circ")]
        format: Format,
    },
    /// Synthesize a Clifford circuit from a tableau.
    SynthClifford {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "circ")]
        format: Format,
    },
    /// Check a circuit against another circuit, a matrix or a tableau.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        oracle: Oracle,
    },
    /// Print recursion values next to closed forms and reference bounds.
    Bounds {
        /// cz, cz-basic, cnot or clifford.
        #[arg(long, default_value = "cz")]
        family: Family,
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 100)]
        to: usize,
        /// Write the rows to this CSV file instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Check every closed form over its full range instead.
        #[arg(long)]
        validate: bool,
    },
    /// Emit a random instance (ChaCha8 seeded from `--seed`).
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a subcommand that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    match &cli.command {
        Command::SynthCz { input, out, strategy, format } => {
            let m = BitMatrix::parse_text(&read(input)?)?;
            let spec = CzSpec::from_matrix(&m)?;
            let n = spec.n();
            let tables = tables_for(n)?;
            let c = synth_cz_with(&spec, *strategy);
            let top = match strategy {
                StrategyChoice::Auto => tables.cz_strategy(n)?,
                StrategyChoice::Force(s) => *s,
            };
            let report = Report {
                family: "cz",
                n,
                depth: c.two_qubit_depth(),
                bound: tables.cz_forced(n, top)? as usize,
                closed_form: closed_form(Family::Cz.formula(), n),
                verified: cliffdepth::verify::implements_cz_spec(&c, &spec)?,
                extra: format!("strategy={top}"),
            };
            emit_circuit(&c, None, *format, out.as_deref())?;
            Ok(report.print(cli.json, out.is_some()))
        }
        Command::SynthCnot { input, out, mode, cnot_only, format } => {
            let m = BitMatrix::parse_text(&read(input)?)?;
            let r = LinearReversible::new(m.clone())?;
            let n = r.n();
            let tables = tables_for(n)?;
            let s = synth_linear(&r, *mode)?;
            let action = linear_action_clifford(&s.circuit)?.relabel_rows(&s.output_perm)?;
            let circuit = if *cnot_only { remove_hadamards(&s.circuit)? } else { s.circuit };
            let (bound, formula) = match mode {
                SynthMode::Exact => (tables.cnot_exact(n)?, CNOT_EXACT_BOUND),
                SynthMode::UpToReordering => (tables.cnot_up_to_reordering(n)?, CNOT_REORDERING_BOUND),
            };
            let perm = (*mode == SynthMode::UpToReordering).then_some(&s.output_perm);
            let report = Report {
                family: "cnot",
                n,
                depth: circuit.two_qubit_depth(),
                bound: bound as usize,
                closed_form: closed_form(formula, n),
                verified: action == m,
                extra: format!("mode={}", if perm.is_some() { "perm" } else { "exact" }),
            };
            emit_circuit(&circuit, perm, *format, out.as_deref())?;
            Ok(report.print(cli.json, out.is_some()))
        }
        Command::SynthClifford { input, out, format } => {
            let t = CliffordTableau::parse_text(&read(input)?)?;
            let n = t.n();
            let tables = tables_for(n)?;
            let c = synth_clifford(&t)?;
            let report = Report {
                family: "clifford",
                n,
                depth: c.two_qubit_depth(),
                bound: tables.clifford(n)? as usize,
                closed_form: closed_form(Family::Clifford.formula(), n),
                verified: CliffordTableau::from_circuit(&c) == t,
                extra: String::new(),
            };
            emit_circuit(&c, None, *format, out.as_deref())?;
            Ok(report.print(cli.json, out.is_some()))
        }
        Command::Verify { circuit, against, oracle } => verify(cli.json, circuit, against, *oracle),
        Command::Bounds { family, from, to, csv, validate } => {
            if *validate {
                return Ok(validate_all(cli.json));
            }
            if *from < 1 || from > to || *to > MAX_N {
                bail!("need 1 <= from <= to <= {MAX_N}");
            }
            let tables = DepthTables::new(*to);
            let rows = comparison_rows(&tables, *family, *from, *to)?;
            match csv {
                Some(path) => {
                    let file = fs::File::create(path)
                        .with_context(|| format!("creating {}", path.display()))?;
                    write_comparison_csv(&rows, *family, file)?;
                }
                None => write_comparison_csv(&rows, *family, std::io::stdout().lock())?,
            }
            Ok(Status::Ok)
        }
        Command::Gen { kind, n, seed, out } => {
            if *n == 0 {
                bail!("--n must be positive");
            }
            let mut rng = rng_from_seed(*seed);
            let text = match kind {
                Kind::Cz => {
                    if *n < 2 {
                        bail!("a CZ instance needs at least 2 qubits");
                    }
                    random_cz_spec(*n, &mut rng).upper().to_text()
                }
                Kind::Linear => random_invertible(*n, &mut rng).to_text(),
                Kind::Tableau => random_tableau(*n, &mut rng).to_text(),
            };
            write_output(out.as_deref(), &text)?;
            Ok(Status::Ok)
        }
    }
}

struct Report {
    family: &'static str,
    n: usize,
    depth: usize,
    bound: usize,
    closed_form: Option<i64>,
    verified: bool,
    extra: String,
}

impl Report {
    /// Prints to standard output when the circuit went to a file, otherwise
    /// to standard error so the circuit text stays clean.
    fn print(&self, as_json: bool, circuit_in_file: bool) -> Status {
        let within = self.depth <= self.bound
            && self.closed_form.is_none_or(|f| self.depth as i64 <= f);
        let line = if as_json {
            json!({
                "family": self.family,
                "n": self.n,
                "depth": self.depth,
                "bound": self.bound,
                "closed_form": self.closed_form,
                "verified": self.verified,
            })
            .to_string()
        } else {
            let cf = self.closed_form.map_or_else(|| "n/a".to_string(), |f| f.to_string());
            format!(
                "{}: n={} depth={} bound={} closed_form={} verified={} {}",
                self.family, self.n, self.depth, self.bound, cf, self.verified, self.extra
            )
            .trim_end()
            .to_string()
        };
        if circuit_in_file {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
        if self.verified && within {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

fn closed_form(f: cliffdepth::BoundFormula, n: usize) -> Option<i64> {
    (f.lo..=f.hi).contains(&n).then(|| f.floor(n))
}

fn tables_for(n: usize) -> anyhow::Result<DepthTables> {
    if n > MAX_N {
        bail!("{n} qubits exceeds the supported maximum {MAX_N}");
    }
    Ok(DepthTables::new(n))
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_circuit(
    c: &Circuit,
    perm: Option<&Permutation>,
    format: Format,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let text = match format {
        Format::Circ => c.to_text(perm),
        Format::Qasm2 => c.to_qasm2(perm),
    };
    write_output(out, &text)
}

/// What a `--against` file turned out to contain.
enum Target {
    Circuit(Circuit),
    Matrix(BitMatrix),
    Tableau(CliffordTableau),
}

/// Sniffs the format from the first non-empty line: `qubits n` is a
/// circuit, a single integer a tableau, two integers a matrix.
fn load_target(path: &Path) -> anyhow::Result<Target> {
    let text = read(path)?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let tokens: Vec<&str> = first.split_whitespace().collect();
    match tokens.as_slice() {
        ["qubits", _] => Ok(Target::Circuit(materialize(CircuitFile::parse(&text)?)?)),
        [_] => Ok(Target::Tableau(CliffordTableau::parse_text(&text)?)),
        [_, _] => Ok(Target::Matrix(BitMatrix::parse_text(&text)?)),
        _ => bail!("cannot tell what {} contains", path.display()),
    }
}

/// Appends SWAPs so that a circuit with a `perm` line acts exactly.
fn materialize(file: CircuitFile) -> anyhow::Result<Circuit> {
    let mut c = file.circuit;
    if let Some(p) = file.perm {
        if p.len() != c.qubit_count() {
            bail!("perm line has {} entries for {} qubits", p.len(), c.qubit_count());
        }
        for layer in p.transposition_layers() {
            for (x, y) in layer {
                for g in [Gate::cnot(x, y), Gate::cnot(y, x), Gate::cnot(x, y)] {
                    c.push(g)?;
                }
            }
        }
    }
    Ok(c)
}

fn verify(as_json: bool, circuit: &Path, against: &Path, oracle: Oracle) -> anyhow::Result<Status> {
    let c = materialize(CircuitFile::parse(&read(circuit)?)?)?;
    let n = c.qubit_count();
    let target = load_target(against)?;
    let (used, ok) = match target {
        Target::Circuit(other) => {
            same_width(n, other.qubit_count())?;
            match oracle {
                Oracle::Auto | Oracle::Tableau => (
                    "tableau",
                    CliffordTableau::from_circuit(&c) == CliffordTableau::from_circuit(&other),
                ),
                Oracle::Phase => {
                    phase_width(n)?;
                    ("phase", phase_oracle(&c)? == phase_oracle(&other)?)
                }
                Oracle::Linear => (
                    "linear",
                    linear_action_clifford(&c)? == linear_action_clifford(&other)?,
                ),
            }
        }
        Target::Tableau(t) => {
            same_width(n, t.n())?;
            match oracle {
                Oracle::Auto | Oracle::Tableau => ("tableau", CliffordTableau::from_circuit(&c) == t),
                _ => bail!("a tableau can only be checked with the tableau oracle"),
            }
        }
        Target::Matrix(m) => {
            same_width(n, m.rows())?;
            let as_cz = CzSpec::from_matrix(&m);
            let linear = match oracle {
                Oracle::Linear => true,
                Oracle::Phase => false,
                Oracle::Auto | Oracle::Tableau => as_cz.is_err(),
            };
            if linear {
                let expect = LinearReversible::new(m)?;
                let got = linear_action_clifford(&c);
                ("linear", got.is_ok_and(|g| &g == expect.matrix()))
            } else {
                let spec = as_cz.map_err(|e| anyhow!("matrix is not a CZ pattern: {e}"))?;
                if matches!(oracle, Oracle::Phase) {
                    phase_width(n)?;
                    ("phase", phase_oracle(&c).is_ok_and(|p| p == cz_spec_phases(&spec).unwrap()))
                } else {
                    ("tableau", cliffdepth::verify::implements_cz_spec(&c, &spec)?)
                }
            }
        }
    };
    if as_json {
        println!("{}", json!({ "n": n, "oracle": used, "verified": ok }));
    } else {
        println!("{}: {}", used, if ok { "equivalent" } else { "NOT equivalent" });
    }
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn same_width(a: usize, b: usize) -> anyhow::Result<()> {
    if a != b {
        bail!("qubit counts differ: {a} vs {b}");
    }
    Ok(())
}

fn phase_width(n: usize) -> anyhow::Result<()> {
    if n > PHASE_ORACLE_MAX_QUBITS {
        bail!("the phase oracle is limited to {PHASE_ORACLE_MAX_QUBITS} qubits");
    }
    Ok(())
}

/// Runs every range claim and the crossover scan.
fn validate_all(as_json: bool) -> Status {
    let tables = DepthTables::global();
    let mut reports: Vec<(String, ValidationReport)> = Family::ALL
        .iter()
        .map(|&f| (f.name().to_string(), validate_closed_form(tables, f, &f.formula())))
        .collect();
    reports.push(("cnot-triangular".into(), validate_triangular(tables)));
    let scan = crossover_scan(tables);
    let all_ok = reports.iter().all(|(_, r)| r.passed());
    if as_json {
        let items: Vec<_> = reports
            .iter()
            .map(|(name, r)| {
                json!({
                    "family": name,
                    "lo": r.lo,
                    "hi": r.hi,
                    "checked": r.checked,
                    "violations": r.violations.len(),
                    "ambiguous": r.ambiguous.len(),
                    "min_slack": r.min_slack,
                    "satisfied": r.passed(),
                })
            })
            .collect();
        let crossover = json!({
            "cnot": scan.cnot,
            "cnot_first_win": scan.cnot_first_win,
            "prior_internal": scan.prior_internal,
            "cz": scan.cz,
            "cz_basic": scan.cz_basic,
            "clifford": scan.clifford,
        });
        println!("{}", json!({ "claims": items, "crossover": crossover }));
    } else {
        for (name, r) in &reports {
            println!(
                "{:<16} [{}..{}] checked={} violations={} ambiguous={} min_slack={} {}",
                name,
                r.lo,
                r.hi,
                r.checked,
                r.violations.len(),
                r.ambiguous.len(),
                r.min_slack,
                if r.passed() { "satisfied" } else { "VIOLATED" }
            );
        }
        let show = |v: Option<usize>| v.map_or_else(|| "none".into(), |x| x.to_string());
        println!(
            "crossover cnot={} (first win {}) cz={} cz-basic={} clifford={} reference-internal={}",
            show(scan.cnot),
            show(scan.cnot_first_win),
            show(scan.cz),
            show(scan.cz_basic),
            show(scan.clifford),
            show(scan.prior_internal)
        );
    }
    if all_ok {
        Status::Ok
    } else {
        Status::Failed
    }
}
