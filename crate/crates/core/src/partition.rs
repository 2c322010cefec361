//! Exact partition calculus.
//!
//! Partitions are weakly decreasing sequences of positive integers; they
//! parameterize nilpotent orbits of gl(n) by Jordan type. This module provides
//! the transpose (conjugate), the componentwise sum, the multiset union, the
//! dominance order, prefix-sum comparisons, and the top-orbit formula
//! `Σ_i [a_i^{b_i}]` for induced-from-Speh data.
//!
//! Zero parts are permitted only internally (prefix comparisons zero-pad the
//! shorter partition); exposed partitions never contain zeros, and the empty
//! sequence is the unique partition of 0.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing (offending index {0})")]
    NotWeaklyDecreasing(usize),
    #[error("partitions must have equal weight: {0} vs {1}")]
    WeightMismatch(usize, usize),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
    #[error("top orbit requires at least one (a, b) pair")]
    EmptyData,
    #[error("(a, b) pairs must be positive, got ({0}, {1})")]
    NonPositivePair(usize, usize),
}

/// A partition: weakly decreasing positive parts with cached weight.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    weight: usize,
}

/// Outcome of comparing two partitions of the same weight in dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and out-of-order input.
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        for (k, w) in parts.windows(2).enumerate() {
            if w[0] < w[1] {
                return Err(PartitionError::NotWeaklyDecreasing(k + 1));
            }
        }
        if let Some(k) = parts.iter().position(|&p| p == 0) {
            return Err(PartitionError::NotWeaklyDecreasing(k));
        }
        let weight = parts.iter().sum();
        Ok(Partition { parts, weight })
    }

    /// Builds a partition from parts in any order, dropping zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    /// The unique partition of 0.
    pub fn empty() -> Self {
        Partition { parts: Vec::new(), weight: 0 }
    }

    /// The rectangular partition `[a^b]`: `b` copies of `a`.
    pub fn rect(a: usize, b: usize) -> Result<Self, PartitionError> {
        if a == 0 || b == 0 {
            return Err(PartitionError::NonPositivePair(a, b));
        }
        Ok(Partition { parts: vec![a; b], weight: a * b })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Zero-padded part access: `part(k) = 0` for `k ≥ len`.
    pub fn part(&self, k: usize) -> usize {
        self.parts.get(k).copied().unwrap_or(0)
    }

    /// The transpose (conjugate) partition: part `i` counts the parts of
    /// `self` that are ≥ i.
    pub fn transpose(&self) -> Partition {
        let rows = self.part(0);
        let mut parts = Vec::with_capacity(rows);
        for i in 1..=rows {
            parts.push(self.parts.iter().take_while(|&&p| p >= i).count());
        }
        let weight = self.weight;
        Partition { parts, weight }
    }

    /// Componentwise sum after zero-padding the shorter partition.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        let parts: Vec<usize> = (0..len).map(|k| self.part(k) + other.part(k)).collect();
        let weight = self.weight + other.weight;
        Partition { parts, weight }
    }

    /// Multiset union of the parts of all given partitions.
    pub fn union<'a, I>(ps: I) -> Partition
    where
        I: IntoIterator<Item = &'a Partition>,
    {
        let mut parts: Vec<usize> = ps.into_iter().flat_map(|p| p.parts.iter().copied()).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    /// Prefix sums `p_1, p_1+p_2, …` (length = number of parts).
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0usize, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
            .collect()
    }

    /// Dominance comparison; both partitions must have the same weight.
    pub fn dominance(&self, other: &Partition) -> Result<Dominance, PartitionError> {
        if self.weight != other.weight {
            return Err(PartitionError::WeightMismatch(self.weight, other.weight));
        }
        let len = self.len().max(other.len());
        let (mut ge, mut le) = (true, true);
        let (mut sp, mut sq) = (0usize, 0usize);
        for k in 0..len {
            sp += self.part(k);
            sq += other.part(k);
            if sp < sq {
                ge = false;
            }
            if sp > sq {
                le = false;
            }
        }
        Ok(match (ge, le) {
            (true, true) => Dominance::Equal,
            (true, false) => Dominance::Greater,
            (false, true) => Dominance::Less,
            (false, false) => Dominance::Incomparable,
        })
    }

    /// The prefix-sum criterion: `Some(i)` (1-based, least such) when some
    /// prefix sum of `self` strictly exceeds the corresponding prefix sum of
    /// `mu` — i.e. `self` is bigger than or not related to `mu` in dominance
    /// order — and `None` otherwise.
    pub fn not_dominated_witness(&self, mu: &Partition) -> Result<Option<usize>, PartitionError> {
        if self.weight != mu.weight {
            return Err(PartitionError::WeightMismatch(self.weight, mu.weight));
        }
        let mut sp = 0usize;
        let mut sq = 0usize;
        for k in 0..self.len() {
            sp += self.parts[k];
            sq += mu.part(k);
            if sp > sq {
                return Ok(Some(k + 1));
            }
        }
        Ok(None)
    }

    /// Convenience wrapper around [`Partition::not_dominated_witness`].
    pub fn not_dominated(&self, mu: &Partition) -> Result<bool, PartitionError> {
        Ok(self.not_dominated_witness(mu)?.is_some())
    }
}

/// The top-orbit partition `[a_1^{b_1}] + … + [a_r^{b_r}]` (componentwise sum)
/// for pairs `(a_i, b_i)`. Equals `transpose(union_i [b_i^{a_i}])`.
pub fn top_orbit(pairs: &[(usize, usize)]) -> Result<Partition, PartitionError> {
    if pairs.is_empty() {
        return Err(PartitionError::EmptyData);
    }
    let mut acc = Partition::empty();
    for &(a, b) in pairs {
        acc = acc.add(&Partition::rect(a, b)?);
    }
    Ok(acc)
}

/// All partitions of `n` in descending lexicographic order, `[n]` first and
/// `[1^n]` last. `partitions_of(0)` yields the single empty partition.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            let parts = current.clone();
            let weight = parts.iter().sum();
            out.push(Partition { parts, weight });
            return;
        }
        let top = max_part.min(remaining);
        for p in (1..=top).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    /// Canonical text form: parts joined by `+`, and `0` for the empty
    /// partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for p in &self.parts {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    /// Accepts `+`-joined or comma-separated parts: `3+3+1` or `3,3,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PartitionError::Parse(s.to_string()));
        }
        if s == "0" {
            return Ok(Partition::empty());
        }
        let sep = if s.contains(',') { ',' } else { '+' };
        let parts: Result<Vec<usize>, _> = s.split(sep).map(|t| t.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts).map_err(|_| PartitionError::Parse(s.to_string()))
    }
}

impl Serialize for Partition {
    /// Renders as a JSON array of integers.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.parts.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Independent transpose oracle: flip the Young diagram as a boolean grid.
    fn transpose_by_grid(q: &Partition) -> Partition {
        let rows = q.len();
        let cols = q.part(0);
        let mut parts = Vec::new();
        for c in 0..cols {
            let mut count = 0;
            for r in 0..rows {
                if q.parts()[r] > c {
                    count += 1;
                }
            }
            parts.push(count);
        }
        Partition::new(parts).unwrap()
    }

    #[test]
    fn new_rejects_zero_and_unsorted() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![3, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[7]).transpose(), p(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(p(&[5, 4, 3]).transpose(), transpose_by_grid(&p(&[5, 4, 3])));
        assert_eq!(p(&[5, 4, 3]).transpose(), p(&[3, 3, 3, 2, 1]));
        // [3,2]^t = [2,2,1] = [1,1,1] + [1,1]
        assert_eq!(p(&[3, 2]).transpose(), p(&[2, 2, 1]));
        assert_eq!(p(&[1, 1, 1]).add(&p(&[1, 1])), p(&[2, 2, 1]));
    }

    #[test]
    fn transpose_involution_exhaustive() {
        for n in 0..=30 {
            for q in partitions_of(n) {
                assert_eq!(q.transpose().transpose(), q, "involution fails for {q:?}");
                assert_eq!(q.transpose(), transpose_by_grid(&q), "grid oracle disagrees for {q:?}");
            }
        }
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[4, 2]).add(&Partition::empty()), p(&[4, 2]));
        let sum = p(&[3, 3, 3]).add(&p(&[2, 2, 2, 2])).add(&p(&[1, 1, 1, 1, 1]));
        assert_eq!(sum, p(&[6, 6, 6, 3, 1]));
    }

    #[test]
    fn union_examples() {
        assert_eq!(Partition::union([&p(&[2]), &p(&[2])]), p(&[2, 2]));
        assert_eq!(Partition::union([&p(&[5]), &p(&[4]), &p(&[3])]), p(&[5, 4, 3]));
        assert_eq!(Partition::union([&p(&[3, 3]), &p(&[2])]), p(&[3, 3, 2]));
    }

    #[test]
    fn dominance_examples() {
        let a = p(&[4, 2]);
        assert_eq!(a.dominance(&a).unwrap(), Dominance::Equal);
        assert_eq!(p(&[4, 2]).dominance(&p(&[3, 3])).unwrap(), Dominance::Greater);
        assert_eq!(p(&[3, 3]).dominance(&p(&[4, 2])).unwrap(), Dominance::Less);
        assert_eq!(p(&[4, 1, 1]).dominance(&p(&[3, 3])).unwrap(), Dominance::Incomparable);
        assert!(p(&[2]).dominance(&p(&[1])).is_err());
    }

    #[test]
    fn dominance_is_a_partial_order_up_to_10() {
        for n in 0..=10 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    let ab = a.dominance(b).unwrap();
                    let ba = b.dominance(a).unwrap();
                    // antisymmetry
                    match ab {
                        Dominance::Equal => assert_eq!(a, b),
                        Dominance::Greater => assert_eq!(ba, Dominance::Less),
                        Dominance::Less => assert_eq!(ba, Dominance::Greater),
                        Dominance::Incomparable => assert_eq!(ba, Dominance::Incomparable),
                    }
                    // transitivity
                    if matches!(ab, Dominance::Greater | Dominance::Equal) {
                        for c in &ps {
                            if matches!(b.dominance(c).unwrap(), Dominance::Greater | Dominance::Equal) {
                                assert!(matches!(
                                    a.dominance(c).unwrap(),
                                    Dominance::Greater | Dominance::Equal
                                ));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn not_dominated_examples() {
        let lam = p(&[3, 2, 1]);
        assert_eq!(lam.not_dominated_witness(&lam).unwrap(), None);
        // [n] vs [a^b], b ≥ 2: witness at i = 1
        assert_eq!(p(&[6]).not_dominated_witness(&p(&[3, 3])).unwrap(), Some(1));
        assert_eq!(p(&[3, 3]).not_dominated_witness(&p(&[4, 2])).unwrap(), None);
    }

    #[test]
    fn not_dominated_matches_dominance_up_to_10() {
        for n in 0..=10 {
            let ps = partitions_of(n);
            for a in &ps {
                for b in &ps {
                    let nd = a.not_dominated(b).unwrap();
                    let cmp = a.dominance(b).unwrap();
                    assert_eq!(
                        nd,
                        matches!(cmp, Dominance::Greater | Dominance::Incomparable),
                        "mismatch for {a:?} vs {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn top_orbit_examples() {
        assert_eq!(top_orbit(&[(1, 3), (1, 4), (1, 5)]).unwrap(), p(&[3, 3, 3, 2, 1]));
        assert_eq!(top_orbit(&[(2, 3)]).unwrap(), p(&[2, 2, 2]));
        assert_eq!(top_orbit(&[(7, 1)]).unwrap(), p(&[7]));
        assert!(top_orbit(&[]).is_err());
        assert!(top_orbit(&[(0, 2)]).is_err());
    }

    #[test]
    fn top_orbit_equals_transposed_union_small() {
        // spot checks here; the exhaustive n ≤ 12 sweep lives in the acceptance suite
        for pairs in [vec![(2, 2), (1, 3)], vec![(3, 1), (1, 1)], vec![(2, 4)]] {
            let blocks: Vec<Partition> =
                pairs.iter().map(|&(a, b)| Partition::rect(b, a).unwrap()).collect();
            let via_union = Partition::union(blocks.iter()).transpose();
            assert_eq!(via_union, top_orbit(&pairs).unwrap());
        }
    }

    #[test]
    fn partitions_of_counts() {
        // p(n) for n = 0..12
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n).len(), count);
        }
        assert_eq!(partitions_of(4).first().unwrap(), &p(&[4]));
        assert_eq!(partitions_of(4).last().unwrap(), &p(&[1, 1, 1, 1]));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[3, 3, 1]).to_string(), "3+3+1");
        assert_eq!("3+3+1".parse::<Partition>().unwrap(), p(&[3, 3, 1]));
        assert_eq!("3, 3, 1".parse::<Partition>().unwrap(), p(&[3, 3, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("".parse::<Partition>().is_err());
        assert!("1+2".parse::<Partition>().is_err());
    }

    #[test]
    fn serializes_as_int_array() {
        assert_eq!(serde_json::to_string(&p(&[3, 2])).unwrap(), "[3,2]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
    }

    proptest! {
        #[test]
        fn parse_roundtrip(parts in proptest::collection::vec(1usize..20, 0..8)) {
            let q = Partition::from_unsorted(parts);
            let text = q.to_string();
            prop_assert_eq!(text.parse::<Partition>().unwrap(), q);
        }

        #[test]
        fn add_is_transpose_dual_of_union(a in 1usize..5, b in 1usize..5, c in 1usize..5, d in 1usize..5) {
            // [a^b] + [c^d] = ([b^a] ∪ [d^c])^t
            let sum = Partition::rect(a, b).unwrap().add(&Partition::rect(c, d).unwrap());
            let union = Partition::union([
                &Partition::rect(b, a).unwrap(),
                &Partition::rect(d, c).unwrap(),
            ]);
            prop_assert_eq!(sum, union.transpose());
        }
    }
}
