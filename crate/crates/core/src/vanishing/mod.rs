//! Brute-force verification of the vanishing mechanism at desk scale.
//!
//! The claim being exercised: whenever a partition λ has a prefix sum
//! strictly exceeding the corresponding prefix sum of μ (λ is bigger than or
//! not related to μ), the coefficient attached to λ dies on a representation
//! supported on the parabolic of μ^t. Two independent oracles check this:
//!
//! * [`weyl`] — the root-theoretic criterion: for every permutation w there
//!   is a λ-marked simple root whose w-conjugate lands inside the block
//!   upper-triangular parabolic of μ^t. Quantifying over all n! permutations
//!   over-covers a transversal of the double cosets, so a clean sweep is a
//!   sound verification of the "for any representative" statement.
//! * [`finite`] — a finite-field shadow of the localization argument: over
//!   GL(n, F_q), decompose the group into (P_{μ^t}, U)-double cosets and
//!   count those on which the λ-character restricts trivially to
//!   `U ∩ w⁻¹Pw`; that count is the Hom dimension for the trivial inducing
//!   character, and the prefix-sum condition forces it to zero.

pub mod finite;
pub mod weyl;

pub use finite::{finite_oracle, finite_vanishing_sweep, group_order, FiniteOracleReport, FiniteSweep};
pub use weyl::{cai_sweep, weyl_check, CaiSweep, WeylReport};

use thiserror::Error;

use crate::partition::{Partition, PartitionError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("n = {0} exceeds the permutation enumeration bound {1}")]
    RankOverBound(usize, usize),
    #[error("|GL_{n}(F_{q})| = {order} exceeds the group order bound {bound}")]
    OrderOverBound { n: usize, q: u64, order: u128, bound: u64 },
    #[error("q = {0} is not prime")]
    NotPrime(u64),
    #[error("partition of {0} does not match n = {1}")]
    WrongWeight(usize, usize),
}

/// Enumeration bounds for the oracles. `max_weyl_n` caps the rank for
/// permutation sweeps (overridable via the `WAVEFRONT_MAX_N` environment
/// variable at the CLI); `max_group_order` caps `|GL_n(F_q)|` for the finite
/// oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_weyl_n: usize,
    pub max_group_order: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_weyl_n: 8, max_group_order: 25_000 }
    }
}

/// Assignment of each of the n positions to its consecutive block under a
/// partition's block layout (block indices are 0-based and increase along
/// the diagonal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    n: usize,
    block_of: Vec<usize>,
}

impl BlockMap {
    pub fn from_partition(p: &Partition) -> Self {
        let mut block_of = Vec::with_capacity(p.n());
        for (idx, &part) in p.parts().iter().enumerate() {
            block_of.extend(std::iter::repeat(idx).take(part));
        }
        BlockMap { n: p.n(), block_of }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_of(&self, pos: usize) -> usize {
        self.block_of[pos]
    }

    /// Whether the matrix position `(i, j)` is allowed in the block
    /// upper-triangular parabolic: its block row is not below its block
    /// column.
    pub fn upper_allows(&self, i: usize, j: usize) -> bool {
        self.block_of[i] <= self.block_of[j]
    }
}

/// Adjacent positions `(j, j+1)` (0-based `j`) lying inside the same
/// consecutive block of `lambda` — the marked simple roots of the
/// λ-character.
pub fn marked_adjacent_pairs(lambda: &Partition) -> Vec<usize> {
    let mut marks = Vec::new();
    let mut offset = 0;
    for &part in lambda.parts() {
        for j in 0..part.saturating_sub(1) {
            marks.push(offset + j);
        }
        offset += part;
    }
    marks
}
