//! Standardization, the {±1} → {0,1} reduction, fundamental-bouquet digons
//! and the cyclomatic number.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::matrix::Matrix;
use crate::report::big;

/// `standardized(v, e) = row_signs[v] · col_signs[e] · original(v, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Standardization {
    pub standardized: IncidenceStructure,
    pub row_signs: Vec<i8>,
    pub col_signs: Vec<i8>,
}

/// Negates every row whose first entry is −1, then every column whose
/// (updated) first-row entry is −1.
pub fn standardize(h: &IncidenceStructure) -> Result<Standardization> {
    let n = h.require_full()?;
    let row_signs: Vec<i8> = (0..n).map(|v| h.entry(v, 0)).collect();
    let col_signs: Vec<i8> = (0..n).map(|e| row_signs[0] * h.entry(0, e)).collect();
    let mut out = h.clone();
    for (v, &r) in row_signs.iter().enumerate() {
        for (e, &c) in col_signs.iter().enumerate() {
            out.set_entry(v, e, r * c * h.entry(v, e));
        }
    }
    Ok(Standardization {
        standardized: out,
        row_signs,
        col_signs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// `(n−1) × (n−1)` matrix over {0, 1}.
    pub reduced: IncidenceStructure,
    #[serde(serialize_with = "big")]
    pub det_standardized: BigInt,
    #[serde(serialize_with = "big")]
    pub det_reduced: BigInt,
    pub power_of_two: u32,
    /// `|det H_std| = 2^(n−1) · |det H′|`.
    pub relation_check: bool,
    /// The entry rule agrees with the pivot-and-factor computation.
    pub pivot_agrees: bool,
}

/// Pivots on the (1,1) entry, keeps the (1,1)-minor (entries 0 or −2) and
/// divides each row by −2.
pub fn pivot_reduction(std: &IncidenceStructure) -> Result<Matrix<BigInt>> {
    let n = std.require_full()?;
    let h = std.to_matrix::<BigInt>();
    let mut minor = Matrix::<BigInt>::zeros(n - 1, n - 1);
    let minus_two = BigInt::from(-2);
    for k in 1..n {
        for l in 1..n {
            let pivoted = &h[(k, l)] - &h[(0, l)] * &h[(k, 0)] / &h[(0, 0)];
            if !(&pivoted % &minus_two).is_zero() {
                return Err(Error::NotStandardized);
            }
            minor[(k - 1, l - 1)] = pivoted / &minus_two;
        }
    }
    Ok(minor)
}

pub fn reduce_to_01(s: &Standardization) -> Result<Reduction> {
    let std = &s.standardized;
    let n = std.require_full()?;
    if n < 2 {
        return Err(Error::InvalidArgument("reduction needs n >= 2".into()));
    }
    if !std.is_standardized() {
        return Err(Error::NotStandardized);
    }
    let mut rows = vec![vec![0i8; n - 1]; n - 1];
    for k in 1..n {
        for l in 1..n {
            rows[k - 1][l - 1] = if std.entry(k, l) == 1 { 0 } else { 1 };
        }
    }
    let reduced = IncidenceStructure::from_rows(rows)?;
    let pivot_agrees = pivot_reduction(std)? == reduced.to_matrix::<BigInt>();
    let det_standardized = std.to_matrix::<BigInt>().determinant()?;
    let det_reduced = reduced.to_matrix::<BigInt>().determinant()?;
    let power_of_two = (n - 1) as u32;
    let relation_check = det_standardized.abs() == (BigInt::from(1) << power_of_two) * det_reduced.abs();
    Ok(Reduction {
        reduced,
        det_standardized,
        det_reduced,
        power_of_two,
        relation_check,
        pivot_agrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BouquetSigns {
    /// `signs[k−1][ℓ−1]` is the sign of the digon on `v₁, v_k` and `e₁, e_ℓ` (k, ℓ ≥ 2, 1-based).
    pub signs: Vec<Vec<i8>>,
    /// Positive digon ⇔ 0 in the reduced matrix, and every sign survives standardization.
    pub lemma_check: bool,
}

/// Sign of the digon `v₁ → v_k` through `e₁`, then `v_k → v₁` through `e_ℓ` (0-based k, l ≥ 1).
pub fn bouquet_digon_sign(h: &IncidenceStructure, k: usize, l: usize) -> i8 {
    // (−h₁₁ h_k1)(−h_kℓ h₁ℓ)
    h.entry(0, 0) * h.entry(k, 0) * h.entry(k, l) * h.entry(0, l)
}

pub fn fundamental_bouquet_signs(h: &IncidenceStructure) -> Result<BouquetSigns> {
    let n = h.require_full()?;
    if n < 2 {
        return Err(Error::InvalidArgument("fundamental bouquet needs n >= 2".into()));
    }
    let signs: Vec<Vec<i8>> = (1..n)
        .map(|k| (1..n).map(|l| bouquet_digon_sign(h, k, l)).collect())
        .collect();
    let s = standardize(h)?;
    let reduction = reduce_to_01(&s)?;
    let lemma_check = (1..n).all(|k| {
        (1..n).all(|l| {
            let sign = signs[k - 1][l - 1];
            let reduced = reduction.reduced.entry(k - 1, l - 1);
            bouquet_digon_sign(&s.standardized, k, l) == sign && (sign > 0) == (reduced == 0)
        })
    });
    Ok(BouquetSigns { signs, lemma_check })
}

/// `|I| − (|V| + |E|) + m` with `m` the number of connected components of the
/// vertex–edge incidence graph; isolated vertices and 0-edges each count.
pub fn cyclomatic_number(g: &IncidenceStructure) -> i64 {
    let (nv, ne) = (g.n_vertices(), g.n_edges());
    let mut parent: Vec<usize> = (0..nv + ne).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = nv + ne;
    for v in 0..nv {
        for e in 0..ne {
            if g.entry(v, e) != 0 {
                let (a, b) = (find(&mut parent, v), find(&mut parent, nv + e));
                if a != b {
                    parent[a] = b;
                    components -= 1;
                }
            }
        }
    }
    g.incidence_count() as i64 - (nv + ne) as i64 + components as i64
}
