//! Exact determinants of {±1}-matrices through the contributor expansion of
//! their oriented hypergraphs.
//!
//! A {±1}-matrix `H` is read as the incidence matrix of an n-full oriented
//! hypergraph. `det(H Hᵀ)` is the signed count of contributors (generalized
//! cycle covers), non-edge-monic tail classes cancel, and every single
//! edge-monic class sums to `±det H`. The crate enumerates all of this
//! exactly and cross-checks it against a fraction-free determinant.
//!
//! The matrix layer is generic over [`Scalar`]; the rest of the crate works
//! with [`ExactMatrix`] (arbitrary-precision integers).

pub mod cli;
pub mod contributor;
pub mod engine;
pub mod error;
pub mod incidence;
pub mod matrix;
pub mod permutation;
pub mod reconstruction;
pub mod report;
pub mod scalar;
pub mod search;
pub mod transforms;

pub use contributor::{contributor_sign, Component, Contributor, SignDetail, TailClassId};
pub use engine::{
    adjacency_inverse_pair, class_tallies_all, class_tally, det_magnitude_single_class,
    enumerate_tail_class, head_class_from_tail_class, laplacian_det_via_contributors,
    verify_nonmonic_zero, Budget, ClassTally,
};
pub use error::{Error, Result};
pub use incidence::{DerivedMatrices, IncidenceStructure};
pub use matrix::Matrix;
pub use permutation::Permutation;
pub use reconstruction::{probe_signs, reconstruct, SignProbe};
pub use scalar::Scalar;
pub use search::{exhaustive_maxdet, forced_sign_experiment, local_search_maxdet, SearchResult};
pub use transforms::{
    cyclomatic_number, fundamental_bouquet_signs, reduce_to_01, standardize, Standardization,
};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Square matrix of arbitrary-precision integers.
pub type ExactMatrix = Matrix<Integer>;
/// Machine-integer matrix, for callers that know their values stay small.
pub type SmallMatrix = Matrix<i64>;

/// Exact determinant of an [`ExactMatrix`].
pub fn exact_determinant(m: &ExactMatrix) -> Result<Integer> {
    m.determinant()
}

/// `(L, D, A)` for `H` over arbitrary-precision integers.
pub fn derived_matrices(h: &IncidenceStructure) -> DerivedMatrices<Integer> {
    h.derived_matrices()
}
