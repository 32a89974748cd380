//! Maximum-determinant search over standardized n-full orientations.
//!
//! Negating rows and columns preserves `|det|`, so only the `2^((n−1)²)`
//! standardized matrices are searched. Candidate `x` has entry
//! `(1 + i / (n−1), 1 + i % (n−1))` (0-based) equal to −1 exactly when bit
//! `i` of `x` is set; candidate 0 is the all-ones matrix.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::contributor::TailClassId;
use crate::engine::{class_tally, det_magnitude_single_class, Budget};
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::permutation::Permutation;
use crate::reconstruction::{reconstruct, SignProbe};
use crate::report::big;

pub const DEFAULT_CAP: usize = 5;
const PROGRESS_EVERY: u64 = 1 << 20;
/// Class tallies cost `n!`; beyond this size they are not reported.
const TALLY_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub witness: usize,
    pub class_magnitude: u64,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    #[serde(serialize_with = "big")]
    pub best_magnitude: BigInt,
    #[serde(serialize_with = "as_text")]
    pub witnesses: Vec<IncidenceStructure>,
    /// Candidate indices of the witnesses.
    pub witness_indices: Vec<u64>,
    pub visited: u64,
    /// `nⁿ`; the bound `|det| ≤ n^(n/2)` is checked as `best² ≤ nⁿ`.
    #[serde(serialize_with = "big")]
    pub hadamard_n_pow_n: BigInt,
    pub within_bound: bool,
    pub meets_bound: bool,
    /// Negative contributors of `𝒜_id` for the first witness.
    pub id_class_neg_count: Option<u64>,
    pub cross_check: Option<CrossCheck>,
    pub heuristic: bool,
    pub note: String,
}

fn as_text<S: Serializer>(ws: &[IncidenceStructure], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ws.iter().map(ToString::to_string))
}

pub fn free_bits(n: usize) -> usize {
    n.saturating_sub(1).pow(2)
}

/// The standardized matrix encoded by `index`.
pub fn candidate(n: usize, index: u64) -> IncidenceStructure {
    let mut h = IncidenceStructure::constant(n, 1);
    let m = n - 1;
    for i in 0..free_bits(n) {
        if index >> i & 1 == 1 {
            h.set_entry(1 + i / m, 1 + i % m, -1);
        }
    }
    h
}

/// Inverse of [`candidate`] for standardized matrices.
pub fn candidate_index(h: &IncidenceStructure) -> Result<u64> {
    if !h.is_standardized() {
        return Err(Error::NotStandardized);
    }
    let n = h.dim();
    let m = n - 1;
    Ok((0..free_bits(n))
        .filter(|&i| h.entry(1 + i / m, 1 + i % m) == -1)
        .fold(0u64, |acc, i| acc | 1 << i))
}

fn magnitude(h: &IncidenceStructure) -> BigInt {
    h.to_matrix::<BigInt>()
        .determinant()
        .expect("square")
        .abs()
}

fn n_pow_n(n: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), n)
}

fn id_neg_count(h: &IncidenceStructure) -> Option<u64> {
    let n = h.dim();
    (n <= TALLY_LIMIT).then(|| {
        class_tally(h, &TailClassId::from_identifier(&Permutation::identity(n)))
            .expect("full host")
            .neg
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub cap: usize,
    /// Write a progress line to stderr every 2²⁰ candidates.
    pub progress: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            progress: true,
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > cap || free_bits(n) > 63 {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Evaluates every standardized candidate. Ties keep all witnesses in
/// candidate order.
pub fn exhaustive_maxdet(n: usize, opts: SearchOptions) -> Result<SearchResult> {
    check_cap(n, opts.cap)?;
    let total = 1u64 << free_bits(n);
    let counter = AtomicU64::new(0);
    const CHUNK: u64 = 4096;
    let chunks = total.div_ceil(CHUNK);
    let (best, indices) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut best = BigInt::zero();
            let mut idx = Vec::new();
            for x in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let d = magnitude(&candidate(n, x));
                if d > best {
                    best = d;
                    idx.clear();
                    idx.push(x);
                } else if d == best {
                    idx.push(x);
                }
            }
            let len = ((c + 1) * CHUNK).min(total) - c * CHUNK;
            let before = counter.fetch_add(len, Ordering::Relaxed);
            if opts.progress && (before + len) / PROGRESS_EVERY > before / PROGRESS_EVERY {
                eprintln!("search n={n}: {} / {total} candidates", before + len);
            }
            (best, idx)
        })
        .reduce(
            || (BigInt::zero(), Vec::new()),
            |(ba, mut ia), (bb, ib)| match ba.cmp(&bb) {
                std::cmp::Ordering::Greater => (ba, ia),
                std::cmp::Ordering::Less => (bb, ib),
                std::cmp::Ordering::Equal => {
                    ia.extend(ib);
                    (ba, ia)
                }
            },
        );
    let witnesses: Vec<IncidenceStructure> = indices.iter().map(|&x| candidate(n, x)).collect();
    let bound = n_pow_n(n);
    let cross_check = if n <= TALLY_LIMIT && !witnesses.is_empty() {
        let pick = ChaCha8Rng::seed_from_u64(0).gen_range(0..witnesses.len());
        let r = det_magnitude_single_class(&witnesses[pick], &Permutation::identity(n), Budget::default())?;
        Some(CrossCheck {
            witness: pick,
            class_magnitude: r.magnitude,
            agrees: BigInt::from(r.magnitude) == best,
        })
    } else {
        None
    };
    Ok(SearchResult {
        n,
        within_bound: &best * &best <= bound,
        meets_bound: &best * &best == bound,
        id_class_neg_count: witnesses.first().and_then(id_neg_count),
        best_magnitude: best,
        witnesses,
        witness_indices: indices,
        visited: total,
        hadamard_n_pow_n: bound,
        cross_check,
        heuristic: false,
        note: "exhaustive over all standardized candidates".into(),
    })
}

struct Evaluator {
    n: usize,
    budget: u64,
    cache: HashMap<u64, BigInt>,
}

impl Evaluator {
    /// `None` once the evaluation budget is spent.
    fn eval(&mut self, x: u64) -> Option<BigInt> {
        if let Some(v) = self.cache.get(&x) {
            return Some(v.clone());
        }
        if self.cache.len() as u64 >= self.budget {
            return None;
        }
        let v = magnitude(&candidate(self.n, x));
        self.cache.insert(x, v.clone());
        Some(v)
    }
}

/// Steepest-ascent hill climbing over single sign flips of the free block,
/// restarting at an unevaluated candidate from every local maximum.
///
/// `budget` caps distinct candidate evaluations (at least the starting
/// candidate is always evaluated). Since restarts only land on unevaluated
/// candidates, a budget of `2^((n−1)²)` covers the whole space.
pub fn local_search_maxdet(n: usize, seed: u64, budget: u64) -> Result<SearchResult> {
    if n < 2 {
        return Err(Error::InvalidArgument("local search needs n >= 2".into()));
    }
    let m = free_bits(n);
    if m > 63 {
        return Err(Error::CapExceeded { n, cap: 8 });
    }
    let space = 1u64 << m;
    let mask = space - 1;
    let bound = n_pow_n(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ev = Evaluator {
        n,
        budget: budget.max(1),
        cache: HashMap::new(),
    };
    let mut current = rng.gen::<u64>() & mask;
    let mut current_val = ev.eval(current).expect("budget admits the start");
    let (mut best_x, mut best_val) = (current, current_val.clone());
    'climb: loop {
        if &best_val * &best_val == bound {
            break;
        }
        let mut step: Option<(u64, BigInt)> = None;
        for i in 0..m {
            let y = current ^ (1 << i);
            let Some(v) = ev.eval(y) else { break 'climb };
            if v > current_val && step.as_ref().is_none_or(|(_, s)| v > *s) {
                step = Some((y, v));
            }
        }
        if let Some((y, v)) = step {
            current = y;
            current_val = v;
        } else {
            let fresh = (0..64)
                .map(|_| rng.gen::<u64>() & mask)
                .find(|x| !ev.cache.contains_key(x))
                .or_else(|| {
                    let offset = rng.gen::<u64>() & mask;
                    (0..space)
                        .map(|i| (offset + i) & mask)
                        .find(|x| !ev.cache.contains_key(x))
                });
            let Some(x) = fresh else { break };
            let Some(v) = ev.eval(x) else { break };
            current = x;
            current_val = v;
        }
        if current_val > best_val {
            best_x = current;
            best_val = current_val.clone();
        }
    }
    let best = candidate(n, best_x);
    Ok(SearchResult {
        n,
        within_bound: &best_val * &best_val <= bound,
        meets_bound: &best_val * &best_val == bound,
        id_class_neg_count: id_neg_count(&best),
        best_magnitude: best_val,
        witnesses: vec![best],
        witness_indices: vec![best_x],
        visited: ev.cache.len() as u64,
        hadamard_n_pow_n: bound,
        cross_check: None,
        heuristic: true,
        note: "heuristic, not proven optimal".into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternOutcome {
    pub sign: i8,
    #[serde(serialize_with = "text")]
    pub matrix: IncidenceStructure,
    #[serde(serialize_with = "big")]
    pub magnitude: BigInt,
    pub attains_max: bool,
}

fn text<S: Serializer>(h: &IncidenceStructure, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&h.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub n: usize,
    #[serde(serialize_with = "big")]
    pub exhaustive_max: BigInt,
    pub patterns: Vec<PatternOutcome>,
    /// Observation at this `n` only.
    pub any_uniform_attains_max: bool,
}

/// Reconstructs the matrix for each uniform probe pattern and compares its
/// `|det|` with the exhaustive maximum.
pub fn forced_sign_experiment(n: usize, opts: SearchOptions) -> Result<ExperimentReport> {
    let search = exhaustive_maxdet(n, opts)?;
    let patterns: Vec<PatternOutcome> = [1i8, -1]
        .into_iter()
        .map(|sign| {
            let matrix = reconstruct(&SignProbe::uniform(n, sign))?;
            let magnitude = magnitude(&matrix);
            Ok(PatternOutcome {
                sign,
                attains_max: magnitude == search.best_magnitude,
                matrix,
                magnitude,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ExperimentReport {
        n,
        any_uniform_attains_max: patterns.iter().any(|p| p.attains_max),
        exhaustive_max: search.best_magnitude,
        patterns,
    })
}
