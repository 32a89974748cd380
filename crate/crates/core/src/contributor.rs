//! Contributors of n-full oriented hypergraphs.
//!
//! A contributor is a tail map `v ↦ t(v)` (the edge of the tail-incidence of
//! vertex `v`) together with a permutation `π` of the vertices: the
//! length-1 path at `v` leaves through incidence `(v, t(v))` and arrives
//! through `(π(v), t(v))`. Components are the cycles of `π`; a fixed point
//! is a backstep.
//!
//! The sign of the adjacency from `v` to `π(v)` is
//! `−h(v, t(v)) · h(π(v), t(v))`, a component's sign is the product of the
//! signs along it, and the contributor sign is `(−1)^pc` with `pc` the
//! number of positive components.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::IncidenceStructure;
use crate::permutation::Permutation;

/// Identifies a tail-equivalence class by its tail map (0-based edge per vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TailClassId {
    tail_map: Vec<usize>,
}

impl TailClassId {
    pub fn new(tail_map: Vec<usize>) -> Result<Self> {
        let n = tail_map.len();
        if let Some(&bad) = tail_map.iter().find(|&&e| e >= n) {
            return Err(Error::InvalidArgument(format!(
                "tail map sends a vertex to edge {} of {n}",
                bad + 1
            )));
        }
        Ok(Self { tail_map })
    }

    /// The edge-monic class whose identifier is `alpha` (vertex `k` ↦ edge `alpha(k)`).
    pub fn from_identifier(alpha: &Permutation) -> Self {
        Self {
            tail_map: alpha.images().to_vec(),
        }
    }

    /// The `index`-th of the `nⁿ` tail maps in lexicographic order.
    pub fn from_index(n: usize, mut index: u128) -> Self {
        let mut tail_map = vec![0; n];
        for slot in tail_map.iter_mut().rev() {
            *slot = (index % n as u128) as usize;
            index /= n as u128;
        }
        Self { tail_map }
    }

    pub fn n(&self) -> usize {
        self.tail_map.len()
    }

    pub fn tail_map(&self) -> &[usize] {
        &self.tail_map
    }

    #[inline]
    pub fn tail(&self, v: usize) -> usize {
        self.tail_map[v]
    }

    /// Edge-monic iff the tail map is injective.
    pub fn is_edge_monic(&self) -> bool {
        let mut seen = vec![false; self.n()];
        self.tail_map.iter().all(|&e| !std::mem::replace(&mut seen[e], true))
    }

    /// The identifier `k ↦ ℓ` of an edge-monic class.
    pub fn identifier(&self) -> Option<Permutation> {
        Permutation::from_images(self.tail_map.clone()).ok()
    }

    /// Lexicographically least pair `v < w` whose tails share an edge.
    pub fn witness_pair(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|v| (v + 1..n).map(move |w| (v, w)))
            .find(|&(v, w)| self.tail_map[v] == self.tail_map[w])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Contributor {
    pub class: TailClassId,
    pub perm: Permutation,
}

/// One directed adjacency `(tail vertex, head vertex, edge)`.
pub type Adjacency = (usize, usize, usize);

impl Contributor {
    pub fn new(class: TailClassId, perm: Permutation) -> Result<Self> {
        if class.n() != perm.len() {
            return Err(Error::DimensionMismatch(format!(
                "tail map on {} vertices, permutation on {}",
                class.n(),
                perm.len()
            )));
        }
        Ok(Self { class, perm })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Directed adjacencies, one per vertex, in vertex order.
    pub fn adjacencies(&self) -> Vec<Adjacency> {
        (0..self.n())
            .map(|v| (v, self.perm.apply(v), self.class.tail(v)))
            .collect()
    }

    /// Sorted multiset of undirected adjacencies `({v, w}, e)`.
    pub fn undirected_adjacencies(&self) -> Vec<Adjacency> {
        let mut out: Vec<_> = self
            .adjacencies()
            .into_iter()
            .map(|(v, w, e)| (v.min(w), v.max(w), e))
            .collect();
        out.sort_unstable();
        out
    }

    /// Head-incidences `(π(v), t(v))`, sorted.
    pub fn head_incidences(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.n())
            .map(|v| (self.perm.apply(v), self.class.tail(v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// The contributor traversing the same adjacencies in the opposite
    /// direction: vertex `π(v)` now leaves through edge `t(v)` and arrives at `v`.
    pub fn reversed(&self) -> Self {
        let n = self.n();
        let mut tail_map = vec![0; n];
        for v in 0..n {
            tail_map[self.perm.apply(v)] = self.class.tail(v);
        }
        Self {
            class: TailClassId { tail_map },
            perm: self.perm.inverse(),
        }
    }
}

/// One component of a contributor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Vertices of the cycle, 0-based, starting at the least.
    pub cycle: Vec<usize>,
    pub length: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignDetail {
    pub sign: i8,
    pub positive_components: usize,
    pub components: Vec<Component>,
}

/// Sign of the adjacency (or backstep) from `v` to `head` through `edge`.
#[inline]
pub fn adjacency_sign(h: &IncidenceStructure, v: usize, head: usize, edge: usize) -> i8 {
    -h.entry(v, edge) * h.entry(head, edge)
}

/// Contributor sign with its component breakdown.
pub fn contributor_sign(h: &IncidenceStructure, c: &Contributor) -> Result<SignDetail> {
    let n = c.n();
    if h.n_vertices() != n || h.n_edges() != n {
        return Err(Error::DimensionMismatch(format!(
            "contributor on {n} vertices, structure is {}x{}",
            h.n_vertices(),
            h.n_edges()
        )));
    }
    for v in 0..n {
        let e = c.class.tail(v);
        for u in [v, c.perm.apply(v)] {
            if h.entry(u, e) == 0 {
                return Err(Error::AbsentIncidence {
                    vertex: u + 1,
                    edge: e + 1,
                });
            }
        }
    }
    let components: Vec<Component> = c
        .perm
        .cycles()
        .into_iter()
        .map(|cycle| {
            let sign = cycle
                .iter()
                .map(|&v| adjacency_sign(h, v, c.perm.apply(v), c.class.tail(v)))
                .product();
            Component {
                length: cycle.len(),
                cycle,
                sign,
            }
        })
        .collect();
    let positive_components = components.iter().filter(|k| k.sign > 0).count();
    Ok(SignDetail {
        sign: if positive_components % 2 == 0 { 1 } else { -1 },
        positive_components,
        components,
    })
}

/// Allocation-free contributor sign for enumeration over an n-full host.
///
/// `seen` is scratch space of length at least `n`.
pub(crate) fn fast_sign(h: &IncidenceStructure, tails: &[usize], perm: &[usize], seen: &mut [bool]) -> i8 {
    let n = perm.len();
    seen[..n].fill(false);
    let mut sign = 1i8;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle_sign = 1i8;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            let e = tails[v];
            cycle_sign *= -h.entry(v, e) * h.entry(perm[v], e);
            v = perm[v];
        }
        if cycle_sign > 0 {
            sign = -sign;
        }
    }
    sign
}
