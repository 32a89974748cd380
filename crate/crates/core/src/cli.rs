//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 an identity check
//! failed, 3 the enumeration budget would be exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::engine::{self, Budget};
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::permutation::Permutation;
use crate::reconstruction::{probe_signs, reconstruct, SignProbe};
use crate::report::{big_json, to_json};
use crate::search::{self, SearchOptions};
use crate::transforms::{reduce_to_01, standardize};
use crate::{contributor::TailClassId, Integer};

#[derive(Debug, Parser)]
#[command(name = "ohdet", version, about = "Exact {±1}-matrix determinants via oriented-hypergraph contributors")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Maximum number of contributors (or search evaluations) one run may visit.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Worker threads for enumeration and search.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Oracle determinants and the contributor evaluation of det(L).
    Det { input: Option<PathBuf> },
    /// Edge-monic class tallies, or one class with --class.
    Classes {
        input: Option<PathBuf>,
        /// Identifier in cycle notation, e.g. "(1 2 3)", or a 1-based image array.
        #[arg(long)]
        class: Option<String>,
        /// Per-class timings on stderr.
        #[arg(long)]
        timings: bool,
    },
    /// Check that every non-edge-monic class sums to zero.
    Verify { input: Option<PathBuf> },
    /// Standardize and reduce to a {0,1}-matrix.
    Reduce { input: Option<PathBuf> },
    /// Probe signs of a standardized matrix.
    Probe { input: Option<PathBuf> },
    /// Rebuild a standardized matrix from probe signs.
    Reconstruct {
        #[arg(long)]
        probe: PathBuf,
    },
    /// Maximum |det| over standardized n×n matrices; heuristic when --seed is given.
    Search {
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest n for the exhaustive search.
        #[arg(long, default_value_t = search::DEFAULT_CAP)]
        cap: usize,
    },
    /// Determinants reached by uniform probe-sign patterns.
    Experiment {
        n: usize,
        #[arg(long, default_value_t = search::DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn checked(stdout: String, passed: bool, what: &str) -> Self {
        let mut o = Self::ok(stdout);
        if !passed {
            o.code = 2;
            o.stderr = format!("identity check failed: {what}\n");
        }
        o
    }
}

fn error_outcome(err: &Error) -> Outcome {
    let code = match err {
        Error::BudgetExceeded { .. } => 3,
        _ => 1,
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr: format!("error: {err}\n"),
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let stdin_text = match read_stdin_if_needed(&cli.command, stdin) {
        Ok(t) => t,
        Err(e) => return error_outcome(&e),
    };
    let stdin = stdin_text.as_str();
    let result = match cli.workers {
        Some(0) => Err(Error::InvalidArgument("--workers must be at least 1".into())),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli, stdin))),
        None => execute(&cli, stdin),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn matrix_input(command: &Command) -> Option<&Option<PathBuf>> {
    match command {
        Command::Det { input }
        | Command::Classes { input, .. }
        | Command::Verify { input }
        | Command::Reduce { input }
        | Command::Probe { input } => Some(input),
        _ => None,
    }
}

fn reads_stdin(input: &Option<PathBuf>) -> bool {
    input.as_ref().is_none_or(|p| p.as_os_str() == "-")
}

fn read_stdin_if_needed(command: &Command, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    if matrix_input(command).is_some_and(reads_stdin) {
        stdin.read_to_string(&mut s)?;
    }
    Ok(s)
}

fn read_matrix(path: &Option<PathBuf>, stdin: &str) -> Result<IncidenceStructure> {
    if reads_stdin(path) {
        IncidenceStructure::parse(stdin)
    } else {
        IncidenceStructure::parse(&std::fs::read_to_string(path.as_ref().expect("path given"))?)
    }
}

fn execute(cli: &Cli, stdin: &str) -> Result<Outcome> {
    let json = cli.format == Format::Json;
    let budget = cli.budget.map(Budget).unwrap_or_default();
    match &cli.command {
        Command::Det { input } => det(&read_matrix(input, stdin)?, budget, json),
        Command::Classes { input, class, timings } => {
            let h = read_matrix(input, stdin)?;
            match class {
                Some(c) => single_class(&h, c, budget, json),
                None => all_classes(&h, budget, json, *timings),
            }
        }
        Command::Verify { input } => {
            let h = read_matrix(input, stdin)?;
            let r = engine::verify_nonmonic_zero(&h, budget)?;
            let passed = r.all_zero && r.pairing_holds;
            let out = if json {
                to_json(&r)?
            } else {
                format!(
                    "non-edge-monic classes = {}\nall sum to zero = {}\npairing holds = {}\ncase 1 pairs = {}\ncase 2 pairs = {}\n",
                    r.classes_checked, r.all_zero, r.pairing_holds, r.case1_pairs, r.case2_pairs
                )
            };
            Ok(Outcome::checked(out, passed, "non-edge-monic classes"))
        }
        Command::Reduce { input } => {
            let h = read_matrix(input, stdin)?;
            let s = standardize(&h)?;
            let r = reduce_to_01(&s)?;
            let passed = r.relation_check && r.pivot_agrees;
            let out = if json {
                to_json(&json!({
                    "standardization": s,
                    "reduced": r.reduced.to_string(),
                    "det_standardized": big_json(&r.det_standardized),
                    "det_reduced": big_json(&r.det_reduced),
                    "power_of_two": r.power_of_two,
                    "relation_check": r.relation_check,
                    "pivot_agrees": r.pivot_agrees,
                }))?
            } else {
                let mut o = String::new();
                let _ = writeln!(o, "standardized:\n{}", s.standardized);
                let _ = writeln!(o, "row signs: {:?}\ncolumn signs: {:?}\n", s.row_signs, s.col_signs);
                let _ = writeln!(o, "reduced:\n{}", r.reduced);
                let _ = writeln!(
                    o,
                    "{} = 2^{} · {}",
                    num_traits::Signed::abs(&r.det_standardized),
                    r.power_of_two,
                    num_traits::Signed::abs(&r.det_reduced)
                );
                let _ = writeln!(o, "relation holds = {}", r.relation_check);
                o
            };
            Ok(Outcome::checked(out, passed, "2^(n-1) reduction"))
        }
        Command::Probe { input } => {
            let h = read_matrix(input, stdin)?;
            let p = probe_signs(&h)?;
            let round_trip = reconstruct(&p)? == h;
            let out = if json {
                to_json(&json!({ "probe": p, "round_trip": round_trip }))?
            } else {
                to_json(&p)?
            };
            Ok(Outcome::checked(out, round_trip, "probe round trip"))
        }
        Command::Reconstruct { probe } => {
            let p = SignProbe::from_json(&std::fs::read_to_string(probe)?)?;
            let h = reconstruct(&p)?;
            let round_trip = probe_signs(&h)? == p;
            let out = if json {
                to_json(&json!({ "matrix": h.to_string(), "round_trip": round_trip }))?
            } else {
                h.to_string()
            };
            Ok(Outcome::checked(out, round_trip, "reconstruction round trip"))
        }
        Command::Search { n, seed, cap } => {
            let r = match seed {
                Some(seed) => {
                    let evaluations = cli
                        .budget
                        .unwrap_or(1u64 << search::free_bits(*n).min(20));
                    search::local_search_maxdet(*n, *seed, evaluations)?
                }
                None => search::exhaustive_maxdet(*n, SearchOptions { cap: *cap, progress: true })?,
            };
            let passed = r.within_bound && r.cross_check.as_ref().is_none_or(|c| c.agrees);
            let out = if json {
                to_json(&r)?
            } else {
                let mut o = String::new();
                let _ = writeln!(o, "n = {}", r.n);
                let _ = writeln!(o, "best |det| = {}", r.best_magnitude);
                let _ = writeln!(o, "best^2 = {} <= n^n = {}: {}", &r.best_magnitude * &r.best_magnitude, r.hadamard_n_pow_n, r.within_bound);
                let _ = writeln!(o, "candidates visited = {}", r.visited);
                let _ = writeln!(o, "witnesses = {}", r.witnesses.len());
                if r.heuristic {
                    let _ = writeln!(o, "{}", r.note);
                }
                if let Some(w) = r.witnesses.first() {
                    let _ = writeln!(o, "first witness:\n{w}");
                }
                o
            };
            Ok(Outcome::checked(out, passed, "maximum-determinant bound"))
        }
        Command::Experiment { n, cap } => {
            let r = search::forced_sign_experiment(*n, SearchOptions { cap: *cap, progress: true })?;
            let out = if json {
                to_json(&r)?
            } else {
                let mut o = format!("n = {}, exhaustive max |det| = {}\n", r.n, r.exhaustive_max);
                for p in &r.patterns {
                    let _ = writeln!(
                        o,
                        "all probes {:+}: |det| = {} (max: {})\n{}",
                        p.sign, p.magnitude, p.attains_max, p.matrix
                    );
                }
                let _ = writeln!(o, "some uniform pattern attains the maximum = {}", r.any_uniform_attains_max);
                o
            };
            Ok(Outcome::ok(out))
        }
    }
}

fn det(h: &IncidenceStructure, budget: Budget, json: bool) -> Result<Outcome> {
    h.require_full()?;
    let det_h = h.to_matrix::<Integer>().determinant()?;
    let det_l = h.derived_matrices::<Integer>().laplacian.determinant()?;
    let audit = match engine::laplacian_det_via_contributors(h, budget) {
        Ok(a) => Some(a),
        Err(Error::BudgetExceeded { required, budget }) => {
            let out = if json {
                to_json(&json!({
                    "det_h": big_json(&det_h),
                    "det_l": big_json(&det_l),
                    "contributor": null,
                    "required": required.to_string(),
                    "budget": budget,
                }))?
            } else {
                format!("det(H) = {det_h}\ndet(L) = {det_l}\n")
            };
            return Ok(Outcome {
                code: 3,
                stdout: out,
                stderr: format!("budget exceeded: contributor evaluation requires {required} contributors (budget {budget})\n"),
            });
        }
        Err(e) => return Err(e),
    };
    let audit = audit.expect("handled above");
    let out = if json {
        to_json(&json!({
            "det_h": big_json(&det_h),
            "det_l": big_json(&det_l),
            "contributor": audit,
            "agreement": audit.agrees,
        }))?
    } else {
        format!(
            "det(H) = {det_h}\ndet(L) = {det_l}\ncontributor det(L) = {}\ncontributors visited = {}\nedge-monic sum = {}\nnon-edge-monic sum = {}\nagreement = {}\n",
            audit.contributor_det, audit.contributors_visited, audit.edge_monic_sum, audit.non_edge_monic_sum, audit.agrees
        )
    };
    Ok(Outcome::checked(out, audit.agrees, "contributor determinant"))
}

fn single_class(h: &IncidenceStructure, class: &str, budget: Budget, json: bool) -> Result<Outcome> {
    let n = h.require_full()?;
    let alpha = Permutation::parse(class, n)?;
    let r = engine::det_magnitude_single_class(h, &alpha, budget)?;
    let out = if json {
        to_json(&r)?
    } else {
        format!(
            "class {alpha}: pos {} neg {} sum {}\n|det H| = {} = n! - 2·minority = {} = 2·majority - n! = {}\noracle |det H| = {}\nidentities hold = {}\n",
            r.tally.pos, r.tally.neg, r.tally.sum, r.magnitude, r.from_minority, r.from_majority, r.oracle_magnitude,
            r.identities_hold && r.matches_oracle
        )
    };
    Ok(Outcome::checked(out, r.identities_hold && r.matches_oracle, "single-class magnitude"))
}

fn all_classes(h: &IncidenceStructure, budget: Budget, json: bool, timings: bool) -> Result<Outcome> {
    let r = engine::class_tallies_all(h, budget)?;
    let mut stderr = String::new();
    if timings {
        for alpha in Permutation::all(r.n) {
            let start = Instant::now();
            engine::class_tally(h, &TailClassId::from_identifier(&alpha))?;
            let _ = writeln!(stderr, "class {alpha}: {:?}", start.elapsed());
        }
    }
    let out = if json {
        to_json(&r)?
    } else {
        let mut o = String::new();
        for t in &r.tallies {
            let id = t.class_id.identifier().expect("edge-monic");
            let _ = writeln!(o, "class {id}: pos {} neg {} sum {}", t.pos, t.neg, t.sum);
        }
        let _ = writeln!(o, "positive classes = {}\nnegative classes = {}\nzero classes = {}", r.plus_classes, r.minus_classes, r.zero_classes);
        let _ = writeln!(o, "|det H| = {}\nsum over classes = det(L) = {}", r.det_magnitude, r.laplacian_total);
        if r.degenerate {
            let _ = writeln!(o, "singular matrix: all class sums are zero = {} (counting identity does not apply)", r.lemma_holds);
        } else {
            let _ = writeln!(o, "|det H| = plus - minus = n! - 2·minus = 2·plus - n!: {}", r.lemma_holds);
        }
        o
    };
    let mut o = Outcome::checked(out, r.lemma_holds, "edge-monic class counts");
    o.stderr.insert_str(0, &stderr);
    Ok(o)
}
