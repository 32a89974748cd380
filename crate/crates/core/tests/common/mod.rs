#![allow(dead_code)]

use ohdet::IncidenceStructure;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cofactor expansion along the first row; shares no code with the crate.
pub fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * cofactor_det(&minor);
    }
    total
}

pub fn rows_i64(h: &IncidenceStructure) -> Vec<Vec<i64>> {
    h.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(i64::from).collect())
        .collect()
}

/// `H Hᵀ` by hand.
pub fn gram(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    m.iter()
        .map(|a| m.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
        .collect()
}

/// The `2^(n²)` ±1 matrices of size `n`, bit `i` set meaning entry `i` (row-major) is −1.
pub fn all_pm1(n: usize) -> impl Iterator<Item = IncidenceStructure> {
    (0u64..1 << (n * n)).map(move |bits| {
        let entries = (0..n * n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
        IncidenceStructure::square(n, entries).unwrap()
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pm1(rng: &mut ChaCha8Rng, n: usize) -> IncidenceStructure {
    let entries = (0..n * n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
    IncidenceStructure::square(n, entries).unwrap()
}

pub fn random_standardized(rng: &mut ChaCha8Rng, n: usize) -> IncidenceStructure {
    let mut h = random_pm1(rng, n);
    for i in 0..n {
        h.set_entry(0, i, 1);
        h.set_entry(i, 0, 1);
    }
    h
}

pub fn sample3() -> IncidenceStructure {
    "1 1 1\n1 -1 1\n1 1 -1".parse().unwrap()
}

pub fn raw4() -> IncidenceStructure {
    "-1 1 -1 1\n-1 -1 -1 -1\n-1 1 1 -1\n1 1 -1 -1".parse().unwrap()
}
