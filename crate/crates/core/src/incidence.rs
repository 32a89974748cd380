//! Incidence-simple oriented hypergraphs stored as their `V × E` incidence matrix.
//!
//! Entry `(v, e)` is the orientation of the unique incidence between vertex
//! `v` and edge `e`, or 0 when there is none. Indices are 0-based in the API
//! and 1-based in every text or JSON form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i8>>", into = "Vec<Vec<i8>>")]
pub struct IncidenceStructure {
    n_vertices: usize,
    n_edges: usize,
    entries: Vec<i8>,
}

/// Laplacian `L = H Hᵀ`, degree `D = diag(L)` and signed adjacency `A = D − L`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedMatrices<T> {
    pub laplacian: Matrix<T>,
    pub degree: Matrix<T>,
    pub adjacency: Matrix<T>,
}

impl IncidenceStructure {
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n_vertices = rows.len();
        let n_edges = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_vertices * n_edges);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n_edges {
                return Err(Error::NotRectangular {
                    row: r + 1,
                    expected: n_edges,
                    found: row.len(),
                });
            }
            for (c, &x) in row.iter().enumerate() {
                if !(-1..=1).contains(&x) {
                    return Err(Error::InvalidEntry {
                        row: r + 1,
                        col: c + 1,
                        value: x as i64,
                    });
                }
            }
            entries.extend(row);
        }
        Ok(Self {
            n_vertices,
            n_edges,
            entries,
        })
    }

    /// Square structure from a row-major entry list of length `n²`.
    pub fn square(n: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{n}x{n} structure needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if n == 0 {
            return Self::from_rows(Vec::new());
        }
        Self::from_rows(entries.chunks(n).map(<[i8]>::to_vec).collect())
    }

    /// The `n × n` all-`value` structure.
    pub fn constant(n: usize, value: i8) -> Self {
        Self::square(n, vec![value; n * n]).expect("constant entries are valid")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    /// Side length of a square structure.
    pub fn dim(&self) -> usize {
        self.n_vertices
    }

    #[inline]
    pub fn entry(&self, v: usize, e: usize) -> i8 {
        self.entries[v * self.n_edges + e]
    }

    pub fn set_entry(&mut self, v: usize, e: usize, value: i8) {
        assert!((-1..=1).contains(&value), "entry outside {{-1, 0, 1}}");
        self.entries[v * self.n_edges + e] = value;
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<i8>> {
        self.entries
            .chunks(self.n_edges.max(1))
            .take(self.n_vertices)
            .map(<[i8]>::to_vec)
            .collect()
    }

    /// Number of incidences (nonzero entries).
    pub fn incidence_count(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    /// n-full: square, n-regular and n-uniform, i.e. every entry is ±1.
    pub fn is_full(&self) -> bool {
        self.n_vertices == self.n_edges
            && self.n_vertices > 0
            && self.entries.iter().all(|&x| x != 0)
    }

    pub fn require_full(&self) -> Result<usize> {
        if self.is_full() {
            Ok(self.n_vertices)
        } else {
            Err(Error::NotFull)
        }
    }

    /// First row and first column all +1.
    pub fn is_standardized(&self) -> bool {
        self.is_full()
            && (0..self.n_edges).all(|e| self.entry(0, e) == 1)
            && (0..self.n_vertices).all(|v| self.entry(v, 0) == 1)
    }

    pub fn to_matrix<T: Scalar>(&self) -> Matrix<T> {
        let data = self.entries.iter().map(|&x| T::lift(x as i64)).collect();
        Matrix::new(self.n_vertices, self.n_edges, data).expect("dimensions agree")
    }

    pub fn derived_matrices<T: Scalar>(&self) -> DerivedMatrices<T> {
        let h = self.to_matrix::<T>();
        let laplacian = h.mul(&h.transpose()).expect("H Hᵀ is always defined");
        let degree = laplacian.diagonal_part();
        let adjacency = degree.sub(&laplacian).expect("same shape");
        DerivedMatrices {
            laplacian,
            degree,
            adjacency,
        }
    }

    /// Parses the matrix text format: one row per line, either
    /// space-separated integers in {-1, 0, 1} or a compact string over
    /// `+`, `-`, `0`. Blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let compact = line.chars().all(|c| matches!(c, '+' | '-' | '0'));
            let row = if compact {
                line.chars()
                    .map(|c| match c {
                        '+' => 1,
                        '-' => -1,
                        _ => 0,
                    })
                    .collect()
            } else {
                let mut row = Vec::new();
                for (c, tok) in line.split_whitespace().enumerate() {
                    let value: i64 = tok.parse().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("{tok:?} is not an integer"),
                    })?;
                    if !(-1..=1).contains(&value) {
                        return Err(Error::InvalidEntry {
                            row: rows.len() + 1,
                            col: c + 1,
                            value,
                        });
                    }
                    row.push(value as i8);
                }
                row
            };
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Empty);
        }
        Self::from_rows(rows)
    }
}

impl FromStr for IncidenceStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Emits the space-separated form with a trailing newline.
impl fmt::Display for IncidenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let line: Vec<String> = row.iter().map(i8::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<i8>>> for IncidenceStructure {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i8>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl From<IncidenceStructure> for Vec<Vec<i8>> {
    fn from(s: IncidenceStructure) -> Self {
        s.to_rows()
    }
}
