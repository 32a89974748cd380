//! Enumeration of contributors, tail-equivalence classes and class sums.
//!
//! Classes are streamed permutation by permutation in lexicographic order;
//! nothing materializes a whole class except the explicit transversal
//! construction. Work over many classes is split with rayon and reduced by
//! integer addition, so every result is independent of the worker count.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::contributor::{contributor_sign, fast_sign, Contributor, TailClassId};
use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::permutation::{factorial, Permutation};
use crate::report::big;

/// Cap on the number of contributors any single operation may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(1_000_000_000)
    }
}

impl Budget {
    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `nⁿ`, saturating.
pub fn tail_class_count(n: usize) -> u128 {
    (0..n).fold(1u128, |acc, _| acc.saturating_mul(n as u128))
}

/// `nⁿ · n!`, saturating.
pub fn contributor_count(n: usize) -> u128 {
    tail_class_count(n).saturating_mul(factorial(n))
}

/// Lazily yields `(π, sign(c_π))` for every permutation of one tail class.
pub struct ClassStream<'a> {
    host: &'a IncidenceStructure,
    class: TailClassId,
    next: Option<Permutation>,
    seen: Vec<bool>,
}

impl Iterator for ClassStream<'_> {
    type Item = (Permutation, i8);

    fn next(&mut self) -> Option<Self::Item> {
        let perm = self.next.take()?;
        let sign = fast_sign(self.host, self.class.tail_map(), perm.images(), &mut self.seen);
        let mut succ = perm.clone();
        if succ.next_lex() {
            self.next = Some(succ);
        }
        Some((perm, sign))
    }
}

fn check_class(h: &IncidenceStructure, class: &TailClassId) -> Result<usize> {
    let n = h.require_full()?;
    if class.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "tail map on {} vertices, structure has {n}",
            class.n()
        )));
    }
    Ok(n)
}

pub fn enumerate_tail_class<'a>(h: &'a IncidenceStructure, class: &TailClassId) -> Result<ClassStream<'a>> {
    let n = check_class(h, class)?;
    Ok(ClassStream {
        host: h,
        class: class.clone(),
        next: Some(Permutation::identity(n)),
        seen: vec![false; n],
    })
}

/// Positive and negative contributor counts of one tail class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTally {
    pub class_id: TailClassId,
    pub pos: u64,
    pub neg: u64,
    pub sum: i64,
}

impl Serialize for ClassTally {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(7))?;
        map.serialize_entry("n", &self.class_id.n())?;
        map.serialize_entry("identifier", &self.class_id.identifier())?;
        map.serialize_entry("edge_monic", &self.class_id.is_edge_monic())?;
        map.serialize_entry("pos", &self.pos)?;
        map.serialize_entry("neg", &self.neg)?;
        map.serialize_entry("sum", &self.sum)?;
        let tails: Vec<usize> = self.class_id.tail_map().iter().map(|e| e + 1).collect();
        map.serialize_entry("tail_map", &tails)?;
        map.end()
    }
}

/// Streams one class without allocating per contributor.
fn tally_unchecked(h: &IncidenceStructure, class: &TailClassId) -> ClassTally {
    let n = class.n();
    let mut perm = Permutation::identity(n);
    let mut seen = vec![false; n];
    let (mut pos, mut neg) = (0u64, 0u64);
    loop {
        if fast_sign(h, class.tail_map(), perm.images(), &mut seen) > 0 {
            pos += 1;
        } else {
            neg += 1;
        }
        if !perm.next_lex() {
            break;
        }
    }
    ClassTally {
        class_id: class.clone(),
        pos,
        neg,
        sum: pos as i64 - neg as i64,
    }
}

pub fn class_tally(h: &IncidenceStructure, class: &TailClassId) -> Result<ClassTally> {
    check_class(h, class)?;
    Ok(tally_unchecked(h, class))
}

/// Contributor evaluation of `det(L)` with the exact oracles alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaplacianAudit {
    pub n: usize,
    #[serde(serialize_with = "big")]
    pub contributor_det: BigInt,
    pub contributors_visited: u128,
    pub expected_visits: u128,
    pub classes: u128,
    pub edge_monic_sum: i64,
    pub non_edge_monic_sum: i64,
    #[serde(serialize_with = "big")]
    pub oracle_det_l: BigInt,
    #[serde(serialize_with = "big")]
    pub oracle_det_h: BigInt,
    pub agrees: bool,
}

pub fn laplacian_det_via_contributors(h: &IncidenceStructure, budget: Budget) -> Result<LaplacianAudit> {
    let n = h.require_full()?;
    let expected_visits = contributor_count(n);
    budget.check(expected_visits)?;
    let classes = tail_class_count(n) as u64;
    let (monic, other, visited) = (0..classes)
        .into_par_iter()
        .map(|index| {
            let class = TailClassId::from_index(n, index as u128);
            let t = tally_unchecked(h, &class);
            let visited = (t.pos + t.neg) as u128;
            if class.is_edge_monic() {
                (t.sum, 0, visited)
            } else {
                (0, t.sum, visited)
            }
        })
        .reduce(|| (0i64, 0i64, 0u128), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let contributor_det = BigInt::from(monic + other);
    let oracle_det_l = h.derived_matrices::<BigInt>().laplacian.determinant()?;
    let oracle_det_h = h.to_matrix::<BigInt>().determinant()?;
    let agrees = contributor_det == oracle_det_l
        && oracle_det_l == &oracle_det_h * &oracle_det_h
        && visited == expected_visits;
    Ok(LaplacianAudit {
        n,
        contributor_det,
        contributors_visited: visited,
        expected_visits,
        classes: classes as u128,
        edge_monic_sum: monic,
        non_edge_monic_sum: other,
        oracle_det_l,
        oracle_det_h,
        agrees,
    })
}

/// Per-class outcome of the non-edge-monic vanishing check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonMonicClassCheck {
    /// 1-based edge per vertex.
    pub tail_map: Vec<usize>,
    pub sum: i64,
    /// 1-based vertices `v < w` sharing a tail edge (least such pair).
    pub witness: (usize, usize),
    /// Pairs where one side has `v, w` as a 2-cycle through the shared edge
    /// and the other has backsteps at both: `[2-cycle sign, backsteps sign]`.
    pub case1_signs: Vec<[i8; 2]>,
    pub case2_pairs: u64,
    /// Every pair `(c_π, c_{π∘(v w)})` has opposite signs.
    pub pairing_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonMonicReport {
    pub n: usize,
    pub classes_checked: u64,
    pub all_zero: bool,
    pub pairing_holds: bool,
    pub case1_pairs: u64,
    pub case2_pairs: u64,
    pub classes: Vec<NonMonicClassCheck>,
}

fn check_nonmonic_class(h: &IncidenceStructure, class: &TailClassId) -> NonMonicClassCheck {
    let n = class.n();
    let (v, w) = class.witness_pair().expect("non-edge-monic class has a witness");
    let tails = class.tail_map();
    let mut seen = vec![false; n];
    let mut perm = Permutation::identity(n);
    let mut partner = vec![0; n];
    let mut case1_signs = Vec::new();
    let mut case2_pairs = 0;
    let mut pairing_holds = true;
    let mut sum = 0i64;
    loop {
        let images = perm.images();
        let s = fast_sign(h, tails, images, &mut seen);
        sum += s as i64;
        // Each unordered pair {π, π∘(v w)} is visited once, from the side with π(v) < π(w).
        if images[v] < images[w] {
            partner.copy_from_slice(images);
            partner.swap(v, w);
            let t = fast_sign(h, tails, &partner, &mut seen);
            if s + t != 0 {
                pairing_holds = false;
            }
            let fixes_both = images[v] == v && images[w] == w;
            let swaps = images[v] == w && images[w] == v;
            if fixes_both {
                case1_signs.push([t, s]);
            } else if swaps {
                case1_signs.push([s, t]);
            } else {
                case2_pairs += 1;
            }
        }
        if !perm.next_lex() {
            break;
        }
    }
    NonMonicClassCheck {
        tail_map: tails.iter().map(|e| e + 1).collect(),
        sum,
        witness: (v + 1, w + 1),
        case1_signs,
        case2_pairs,
        pairing_holds,
    }
}

pub fn verify_nonmonic_zero(h: &IncidenceStructure, budget: Budget) -> Result<NonMonicReport> {
    let n = h.require_full()?;
    let class_count = tail_class_count(n) - factorial(n);
    budget.check(class_count.saturating_mul(factorial(n)))?;
    let classes: Vec<NonMonicClassCheck> = (0..tail_class_count(n) as u64)
        .into_par_iter()
        .filter_map(|index| {
            let class = TailClassId::from_index(n, index as u128);
            (!class.is_edge_monic()).then(|| check_nonmonic_class(h, &class))
        })
        .collect();
    Ok(NonMonicReport {
        n,
        classes_checked: classes.len() as u64,
        all_zero: classes.iter().all(|c| c.sum == 0),
        pairing_holds: classes.iter().all(|c| c.pairing_holds),
        case1_pairs: classes.iter().map(|c| c.case1_signs.len() as u64).sum(),
        case2_pairs: classes.iter().map(|c| c.case2_pairs).sum(),
        classes,
    })
}

/// `|det H|` read off one edge-monic class, with both counting identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleClassReport {
    pub tally: ClassTally,
    pub magnitude: u64,
    /// `n! − 2·|minority|`, where the minority sign is the one opposite to the class sum.
    pub from_minority: i64,
    /// `2·|majority| − n!`.
    pub from_majority: i64,
    pub identities_hold: bool,
    #[serde(serialize_with = "big")]
    pub oracle_magnitude: BigInt,
    pub matches_oracle: bool,
}

pub fn det_magnitude_single_class(
    h: &IncidenceStructure,
    alpha: &Permutation,
    budget: Budget,
) -> Result<SingleClassReport> {
    let n = h.require_full()?;
    if alpha.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "identifier on {} points, structure has {n}",
            alpha.len()
        )));
    }
    budget.check(factorial(n))?;
    let tally = tally_unchecked(h, &TailClassId::from_identifier(alpha));
    let total = factorial(n) as i64;
    let (majority, minority) = if tally.sum >= 0 {
        (tally.pos as i64, tally.neg as i64)
    } else {
        (tally.neg as i64, tally.pos as i64)
    };
    let magnitude = tally.sum.unsigned_abs();
    let from_minority = total - 2 * minority;
    let from_majority = 2 * majority - total;
    let oracle_magnitude = h.to_matrix::<BigInt>().determinant()?.abs();
    Ok(SingleClassReport {
        identities_hold: from_minority == magnitude as i64 && from_majority == magnitude as i64,
        matches_oracle: oracle_magnitude == BigInt::from(magnitude),
        tally,
        magnitude,
        from_minority,
        from_majority,
        oracle_magnitude,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AllClassesReport {
    pub n: usize,
    /// Edge-monic classes in lexicographic order of identifier.
    pub tallies: Vec<ClassTally>,
    pub plus_classes: u64,
    pub minus_classes: u64,
    pub zero_classes: u64,
    /// Sum of all edge-monic class sums, which is `det(L)`.
    pub laplacian_total: i64,
    #[serde(serialize_with = "big")]
    pub det_magnitude: BigInt,
    /// `det H = 0`: every class sums to 0 and the counting identity does not apply.
    pub degenerate: bool,
    pub lemma_holds: bool,
}

pub fn class_tallies_all(h: &IncidenceStructure, budget: Budget) -> Result<AllClassesReport> {
    let n = h.require_full()?;
    budget.check(factorial(n).saturating_mul(factorial(n)))?;
    let identifiers: Vec<Permutation> = Permutation::all(n).collect();
    let tallies: Vec<ClassTally> = identifiers
        .par_iter()
        .map(|alpha| tally_unchecked(h, &TailClassId::from_identifier(alpha)))
        .collect();
    let plus = tallies.iter().filter(|t| t.sum > 0).count() as u64;
    let minus = tallies.iter().filter(|t| t.sum < 0).count() as u64;
    let zero = tallies.len() as u64 - plus - minus;
    let laplacian_total = tallies.iter().map(|t| t.sum).sum();
    let det_magnitude = h.to_matrix::<BigInt>().determinant()?.abs();
    let degenerate = det_magnitude == BigInt::from(0);
    let total = factorial(n) as i64;
    let lemma_holds = if degenerate {
        tallies.iter().all(|t| t.sum == 0)
    } else {
        let d = BigInt::from(plus as i64 - minus as i64);
        det_magnitude == d
            && d == BigInt::from(total - 2 * minus as i64)
            && d == BigInt::from(2 * plus as i64 - total)
    };
    Ok(AllClassesReport {
        n,
        tallies,
        plus_classes: plus,
        minus_classes: minus,
        zero_classes: zero,
        laplacian_total,
        det_magnitude,
        degenerate,
        lemma_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacencyInversePair {
    /// In `𝒜_α` with permutation `β⁻¹∘α`.
    pub in_alpha: Contributor,
    /// In `𝒜_β` with permutation `α⁻¹∘β`.
    pub in_beta: Contributor,
    pub sign_alpha: i8,
    pub sign_beta: i8,
    pub same_adjacencies: bool,
    pub is_reversal: bool,
}

pub fn adjacency_inverse_pair(
    h: &IncidenceStructure,
    alpha: &Permutation,
    beta: &Permutation,
) -> Result<AdjacencyInversePair> {
    let n = h.require_full()?;
    if alpha.len() != n || beta.len() != n {
        return Err(Error::DimensionMismatch("identifier size differs from structure".into()));
    }
    let in_alpha = Contributor::new(
        TailClassId::from_identifier(alpha),
        beta.inverse().compose(alpha),
    )?;
    let in_beta = Contributor::new(
        TailClassId::from_identifier(beta),
        alpha.inverse().compose(beta),
    )?;
    let sign_alpha = contributor_sign(h, &in_alpha)?.sign;
    let sign_beta = contributor_sign(h, &in_beta)?.sign;
    Ok(AdjacencyInversePair {
        same_adjacencies: in_alpha.undirected_adjacencies() == in_beta.undirected_adjacencies(),
        is_reversal: in_alpha.reversed() == in_beta,
        in_alpha,
        in_beta,
        sign_alpha,
        sign_beta,
    })
}

/// Exhaustive search over `𝒜_α × 𝒜_β` for pairs related by `pred`.
fn pairs_where(
    n: usize,
    alpha: &Permutation,
    beta: &Permutation,
    pred: impl Fn(&Contributor, &Contributor) -> bool,
) -> Vec<(Permutation, Permutation)> {
    let a = TailClassId::from_identifier(alpha);
    let b = TailClassId::from_identifier(beta);
    let mut out = Vec::new();
    for p in Permutation::all(n) {
        let c = Contributor { class: a.clone(), perm: p };
        for q in Permutation::all(n) {
            let d = Contributor { class: b.clone(), perm: q };
            if pred(&c, &d) {
                out.push((c.perm.clone(), d.perm));
            }
        }
    }
    out
}

/// Every `(c, d) ∈ 𝒜_α × 𝒜_β` where `d` traverses the adjacencies of `c` in reverse.
pub fn adjacency_inverse_pairs(alpha: &Permutation, beta: &Permutation) -> Vec<(Permutation, Permutation)> {
    pairs_where(alpha.len(), alpha, beta, |c, d| c.reversed() == *d)
}

/// Every `(c, d) ∈ 𝒜_α × 𝒜_β` using the same undirected adjacencies.
pub fn adjacency_equivalent_pairs(alpha: &Permutation, beta: &Permutation) -> Vec<(Permutation, Permutation)> {
    pairs_where(alpha.len(), alpha, beta, |c, d| {
        c.undirected_adjacencies() == d.undirected_adjacencies()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeadClass {
    /// Reversals of `𝒜_α` in lexicographic order of the original permutation.
    pub contributors: Vec<Contributor>,
    pub signs: Vec<i8>,
    pub shared_heads: bool,
    /// Exactly one member in each edge-monic tail class.
    pub transversal: bool,
}

pub fn head_class_from_tail_class(h: &IncidenceStructure, alpha: &Permutation) -> Result<HeadClass> {
    let n = h.require_full()?;
    if alpha.len() != n {
        return Err(Error::DimensionMismatch("identifier size differs from structure".into()));
    }
    let class = TailClassId::from_identifier(alpha);
    let contributors: Vec<Contributor> = Permutation::all(n)
        .map(|p| Contributor { class: class.clone(), perm: p }.reversed())
        .collect();
    let signs = contributors
        .iter()
        .map(|c| contributor_sign(h, c).map(|d| d.sign))
        .collect::<Result<Vec<_>>>()?;
    let heads = contributors[0].head_incidences();
    let shared_heads = contributors.iter().all(|c| c.head_incidences() == heads);
    let mut ids: Vec<Permutation> = contributors
        .iter()
        .filter_map(|c| c.class.identifier())
        .collect();
    ids.sort();
    let all_ids: Vec<Permutation> = Permutation::all(n).collect();
    Ok(HeadClass {
        transversal: ids == all_ids,
        contributors,
        signs,
        shared_heads,
    })
}
