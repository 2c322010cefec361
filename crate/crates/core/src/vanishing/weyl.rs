//! The Weyl-level vanishing criterion, checked by exhaustive permutation
//! enumeration.
//!
//! For a pair (λ, μ), a permutation w *passes* when some adjacent pair
//! `(j, j+1)` inside a λ-block maps to a position allowed by the block
//! upper-triangular parabolic of μ^t, i.e. `block(w(j)) ≤ block(w(j+1))`:
//! conjugating the marked root subgroup by w then lands inside the parabolic
//! while the λ-character stays nontrivial on it. The sweep asserts that every
//! permutation passes whenever λ has a prefix-sum excess over μ.

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{marked_adjacent_pairs, BlockMap, OracleError};
use crate::partition::{partitions_of, Partition};

/// Outcome of checking all n! permutations for one (λ, μ) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub all_pass: bool,
    /// Lexicographically least failing permutation (as the image list
    /// `w(0), w(1), …`), when one exists.
    pub counterexample: Option<Vec<usize>>,
    pub pass_count: u64,
    pub fail_count: u64,
}

impl WeylReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_string(),
            "mu": self.mu.to_string(),
            "all_pass": self.all_pass,
            "counterexample": self.counterexample.as_ref().map(|w| {
                w.iter().map(|&x| x + 1).collect::<Vec<_>>()
            }),
            "pass_count": self.pass_count,
            "fail_count": self.fail_count,
        })
    }
}

/// Whether `w` passes for the given marked pairs and μ^t block map.
fn passes(w: &[usize], marks: &[usize], blocks: &BlockMap) -> bool {
    marks.iter().any(|&j| blocks.block_of(w[j]) <= blocks.block_of(w[j + 1]))
}

/// Checks every permutation of {1..n} for the pair (λ, μ). `max_n` bounds
/// the factorial enumeration.
pub fn weyl_check(lambda: &Partition, mu: &Partition, max_n: usize) -> Result<WeylReport, OracleError> {
    if lambda.n() != mu.n() {
        return Err(OracleError::WrongWeight(lambda.n(), mu.n()));
    }
    let n = lambda.n();
    if n > max_n {
        return Err(OracleError::RankOverBound(n, max_n));
    }
    let blocks = BlockMap::from_partition(&mu.transpose());
    let marks = marked_adjacent_pairs(lambda);
    let mut pass_count = 0u64;
    let mut fail_count = 0u64;
    let mut counterexample = None;
    // itertools yields permutations of an ordered input in lexicographic
    // order, so the first failure recorded is the least one
    for w in (0..n).permutations(n) {
        if passes(&w, &marks, &blocks) {
            pass_count += 1;
        } else {
            fail_count += 1;
            if counterexample.is_none() {
                counterexample = Some(w);
            }
        }
    }
    Ok(WeylReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        all_pass: fail_count == 0,
        counterexample,
        pass_count,
        fail_count,
    })
}

/// Result of sweeping all qualifying pairs of partitions of n.
#[derive(Debug, Clone)]
pub struct CaiSweep {
    pub n: usize,
    /// One report per (λ, μ) with a prefix-sum excess, in partition
    /// enumeration order.
    pub reports: Vec<WeylReport>,
    pub qualifying_pairs: usize,
    pub failures: usize,
}

impl CaiSweep {
    pub fn summary_json(&self) -> Value {
        json!({
            "n": self.n,
            "qualifying_pairs": self.qualifying_pairs,
            "failures": self.failures,
            "all_pass": self.failures == 0,
        })
    }
}

/// For every ordered pair (λ, μ) of partitions of n with a prefix-sum excess
/// of λ over μ, checks that all n! permutations pass. Pairs run in parallel;
/// the report order is deterministic.
pub fn cai_sweep(n: usize, max_n: usize) -> Result<CaiSweep, OracleError> {
    if n > max_n {
        return Err(OracleError::RankOverBound(n, max_n));
    }
    let ps = partitions_of(n);
    let mut pairs = Vec::new();
    for lambda in &ps {
        for mu in &ps {
            if lambda.not_dominated(mu).expect("equal weights") {
                pairs.push((lambda.clone(), mu.clone()));
            }
        }
    }
    let reports: Vec<WeylReport> = pairs
        .par_iter()
        .map(|(lambda, mu)| weyl_check(lambda, mu, max_n).expect("bounds already checked"))
        .collect();
    let failures = reports.iter().filter(|r| !r.all_pass).count();
    Ok(CaiSweep { n, qualifying_pairs: reports.len(), reports, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn permutations_are_lexicographic() {
        let all: Vec<Vec<usize>> = (0..3).permutations(3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }

    #[test]
    fn trivial_character_always_fails() {
        // λ = [1,…,1] marks nothing, so no permutation can pass
        let r = weyl_check(&part(&[1, 1, 1]), &part(&[2, 1]), 8).unwrap();
        assert!(!r.all_pass);
        assert_eq!(r.fail_count, 6);
        assert_eq!(r.counterexample, Some(vec![0, 1, 2]));
    }

    #[test]
    fn regular_lambda_over_hook_mu() {
        // λ = [3], μ = [2,1]: prefix excess 3 > 2, all 6 permutations pass
        let r = weyl_check(&part(&[3]), &part(&[2, 1]), 8).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.pass_count, 6);
    }

    #[test]
    fn whole_group_parabolic_is_vacuous() {
        // μ = [1,1]: μ^t = [2], single block, every position allowed
        let r = weyl_check(&part(&[2]), &part(&[1, 1]), 8).unwrap();
        assert!(r.all_pass);
        assert_eq!(r.pass_count, 2);
    }

    #[test]
    fn rejects_over_bound_and_mismatch() {
        assert!(matches!(
            weyl_check(&part(&[3]), &part(&[2, 1]), 2),
            Err(OracleError::RankOverBound(3, 2))
        ));
        assert!(matches!(
            weyl_check(&part(&[2]), &part(&[2, 1]), 8),
            Err(OracleError::WrongWeight(2, 3))
        ));
    }

    #[test]
    fn sweep_small_ranks() {
        let s2 = cai_sweep(2, 8).unwrap();
        assert_eq!(s2.qualifying_pairs, 1); // ([2], [1,1])
        assert_eq!(s2.failures, 0);

        let s5 = cai_sweep(5, 8).unwrap();
        assert_eq!(s5.failures, 0);
        assert!(s5.qualifying_pairs > 0);
    }

    #[test]
    fn verdict_depends_only_on_block_pattern() {
        // group permutations by j ↦ block(w(j)); each group must be
        // verdict-homogeneous
        let n = 5;
        for mu in [part(&[3, 2]), part(&[2, 2, 1]), part(&[4, 1])] {
            let blocks = BlockMap::from_partition(&mu.transpose());
            for lambda in [part(&[3, 2]), part(&[4, 1]), part(&[2, 2, 1])] {
                let marks = marked_adjacent_pairs(&lambda);
                let mut by_pattern: HashMap<Vec<usize>, bool> = HashMap::new();
                for w in (0..n).permutations(n) {
                    let pattern: Vec<usize> = w.iter().map(|&x| blocks.block_of(x)).collect();
                    let verdict = passes(&w, &marks, &blocks);
                    if let Some(&prev) = by_pattern.get(&pattern) {
                        assert_eq!(prev, verdict);
                    } else {
                        by_pattern.insert(pattern, verdict);
                    }
                }
            }
        }
    }
}
