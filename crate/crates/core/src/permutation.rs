//! Permutations of `{0, .., n-1}` with 1-based text I/O.
//!
//! Internally a permutation is its image array. Cycle notation follows the
//! usual convention: `(1 2 3)` sends 1 to 2, 2 to 3 and 3 to 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds from a 0-based image array, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{:?} is not a bijection on 0..{n}",
                    images
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds from a 1-based image array.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "1-based images cannot contain 0".into(),
            ));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Builds a permutation of `0..n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle element {} is out of range or repeated",
                        x + 1
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses either cycle notation (`"(1 2 3)(4 5)"`, `"()"`, `"id"`) or a
    /// 1-based image array (`"[2, 3, 1]"` or `"2 3 1"`), for a permutation of
    /// `n` points.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t == "id" || t == "()" {
            return Ok(Self::identity(n));
        }
        if t.starts_with('(') {
            let mut cycles = Vec::new();
            for chunk in t.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let body = chunk.strip_prefix('(').ok_or_else(|| {
                    Error::InvalidPermutation(format!("malformed cycle notation {t:?}"))
                })?;
                let cycle = parse_numbers(body)?;
                if cycle.is_empty() {
                    continue;
                }
                cycles.push(cycle.into_iter().map(|x| x - 1).collect::<Vec<_>>());
            }
            return Self::from_cycles(n, &cycles);
        }
        let body = t.trim_start_matches('[').trim_end_matches(']');
        let images = parse_numbers(body)?;
        if images.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "image array has {} entries, expected {n}",
                images.len()
            )));
        }
        Self::from_one_based(&images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Self { images }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    /// Canonical cycle decomposition: every cycle (fixed points included)
    /// starts at its least element and cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v];
            }
            out.push(cycle);
        }
        out
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn parity(&self) -> i8 {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Advances to the lexicographically next image array. Returns `false`
    /// (leaving `self` unchanged) on the last permutation.
    pub fn next_lex(&mut self) -> bool {
        let a = &mut self.images;
        let n = a.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && a[i - 1] >= a[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while a[j] <= a[i - 1] {
            j -= 1;
        }
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }

    /// All `n!` permutations in lexicographic order of their image arrays.
    pub fn all(n: usize) -> LexPermutations {
        LexPermutations {
            next: Some(Self::identity(n)),
        }
    }
}

fn parse_numbers(body: &str) -> Result<Vec<usize>> {
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Error::InvalidPermutation(format!("{s:?} is not a positive integer")))
        })
        .collect()
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    /// Interprets the vector as 1-based images (the serialized form).
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_one_based(&images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.to_one_based()
    }
}

/// Cycle notation, 1-based, fixed points omitted; the identity prints as `id`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub struct LexPermutations {
    next: Option<Permutation>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.next_lex() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
