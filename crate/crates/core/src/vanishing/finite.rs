//! The finite-group double-coset oracle.
//!
//! Over GL(n, F_q) with q prime, take P = block upper-triangular matrices for
//! the blocks of μ^t and U = full upper unitriangular matrices. The group
//! splits into (P, U)-double cosets; the Hom space of interest (trivial
//! inducing character on P against the λ-character on U) has one potential
//! dimension per double coset, realized exactly when the additive functional
//! `φ_λ(u) = Σ_{marked (j,j+1)} u_{j,j+1}` vanishes on all of
//! `H = U ∩ w⁻¹Pw`. Since q is prime, a nontrivial additive character kills
//! the coset precisely when φ_λ is nonzero somewhere on H, and φ_λ is a
//! homomorphism into (F_q, +), so the verdict does not depend on the chosen
//! representative w.
//!
//! Double cosets are found by union-find over the two-sided action of
//! generators: transvections (plus diagonal units for q > 2) for P on the
//! left, simple-root transvections for U on the right. Triviality is decided
//! by enumerating H outright — no generator arguments, just exhaustion.

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{marked_adjacent_pairs, BlockMap, OracleError, OracleLimits};
use crate::partition::{partitions_of, Partition};

/// A matrix over F_q, entries reduced mod q, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMat {
    n: usize,
    q: u64,
    e: Vec<u64>,
}

impl FqMat {
    pub fn identity(n: usize, q: u64) -> Self {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        FqMat { n, q, e }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.e[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.e[i * self.n + j] = v % self.q;
    }

    /// `I + t·E_{ij}`, the elementary transvection.
    pub fn transvection(n: usize, q: u64, i: usize, j: usize, t: u64) -> Self {
        let mut m = FqMat::identity(n, q);
        m.set(i, j, t);
        m
    }

    /// Identity with `g` at diagonal position `i`.
    pub fn diag_unit(n: usize, q: u64, i: usize, g: u64) -> Self {
        let mut m = FqMat::identity(n, q);
        m.set(i, i, g);
        m
    }

    pub fn mul(&self, other: &FqMat) -> FqMat {
        let n = self.n;
        let q = self.q;
        let mut e = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] = (e[i * n + j] + a * other.e[k * n + j]) % q;
                }
            }
        }
        FqMat { n, q, e }
    }

    /// Base-q encoding of the entries; a bijective key for lookup tables.
    pub fn key(&self) -> u64 {
        let mut k = 0u64;
        for &v in self.e.iter().rev() {
            k = k * self.q + v;
        }
        k
    }

    pub fn from_key(n: usize, q: u64, mut key: u64) -> Self {
        let mut e = vec![0u64; n * n];
        for v in e.iter_mut() {
            *v = key % q;
            key /= q;
        }
        FqMat { n, q, e }
    }

    pub fn is_invertible(&self) -> bool {
        let n = self.n;
        let q = self.q;
        let mut m = self.e.clone();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return false;
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(col * n + j, pivot * n + j);
                }
            }
            let inv = inv_mod(m[col * n + col], q);
            for r in col + 1..n {
                let factor = (m[r * n + col] * inv) % q;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = (factor * m[col * n + j]) % q;
                    m[r * n + j] = (m[r * n + j] + q - sub) % q;
                }
            }
        }
        true
    }

    pub fn inverse(&self) -> Option<FqMat> {
        let n = self.n;
        let q = self.q;
        let mut a = self.e.clone();
        let mut b = FqMat::identity(n, q).e;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    b.swap(col * n + j, pivot * n + j);
                }
            }
            let inv = inv_mod(a[col * n + col], q);
            for j in 0..n {
                a[col * n + j] = (a[col * n + j] * inv) % q;
                b[col * n + j] = (b[col * n + j] * inv) % q;
            }
            for r in 0..n {
                if r != col && a[r * n + col] != 0 {
                    let factor = a[r * n + col];
                    for j in 0..n {
                        let sa = (factor * a[col * n + j]) % q;
                        let sb = (factor * b[col * n + j]) % q;
                        a[r * n + j] = (a[r * n + j] + q - sa) % q;
                        b[r * n + j] = (b[r * n + j] + q - sb) % q;
                    }
                }
            }
        }
        Some(FqMat { n, q, e: b })
    }

    /// Membership in the block upper-triangular parabolic: zero below the
    /// blocks. (Invertibility is assumed; callers pass group elements.)
    pub fn in_parabolic(&self, blocks: &BlockMap) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if !blocks.upper_allows(i, j) && self.get(i, j) != 0 {
                    return false;
                }
            }
        }
        true
    }
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // Fermat: a^(q−2) mod q, q prime
    let mut result = 1u64;
    let mut base = a % q;
    let mut exp = q - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    result
}

fn primitive_root(q: u64) -> u64 {
    // smallest generator of F_q^*, brute force
    'candidates: for g in 2..q {
        let mut seen = 1u64;
        let mut x = g;
        while x != 1 {
            seen += 1;
            x = x * g % q;
        }
        if seen == q - 1 {
            return g;
        } else {
            continue 'candidates;
        }
    }
    1 // q = 2: the unit group is trivial
}

/// `|GL_n(F_q)| = Π_{k=0}^{n−1} (q^n − q^k)`, computed without overflow.
pub fn group_order(n: usize, q: u64) -> u128 {
    let qn = (q as u128).pow(n as u32);
    let mut order = 1u128;
    for k in 0..n {
        order = order.saturating_mul(qn - (q as u128).pow(k as u32));
    }
    order
}

/// The enumerated group with a key-indexed lookup table.
struct Group {
    elements: Vec<FqMat>,
    index: HashMap<u64, u32>,
}

fn enumerate_group(n: usize, q: u64) -> Group {
    let candidates = (q as u64).pow((n * n) as u32);
    let mut elements = Vec::new();
    let mut index = HashMap::new();
    for key in 0..candidates {
        let m = FqMat::from_key(n, q, key);
        if m.is_invertible() {
            index.insert(key, elements.len() as u32);
            elements.push(m);
        }
    }
    Group { elements, index }
}

/// All elements of the full upper unitriangular group.
fn enumerate_unipotent(n: usize, q: u64) -> Vec<FqMat> {
    let free: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let count = (q as u64).pow(free.len() as u32);
    (0..count)
        .map(|mut code| {
            let mut m = FqMat::identity(n, q);
            for &(i, j) in &free {
                m.set(i, j, code % q);
                code /= q;
            }
            m
        })
        .collect()
}

struct DoubleCosets {
    /// Index of the least element of each coset, ascending.
    reps: Vec<u32>,
    sizes: Vec<u64>,
}

/// Union-find partition of G into (P, U)-double cosets.
fn double_cosets(group: &Group, blocks: &BlockMap, n: usize, q: u64) -> DoubleCosets {
    let mut p_gens: Vec<FqMat> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && blocks.upper_allows(i, j) {
                p_gens.push(FqMat::transvection(n, q, i, j, 1));
            }
        }
    }
    if q > 2 {
        let g = primitive_root(q);
        for i in 0..n {
            p_gens.push(FqMat::diag_unit(n, q, i, g));
        }
    }
    let u_gens: Vec<FqMat> =
        (0..n.saturating_sub(1)).map(|i| FqMat::transvection(n, q, i, i + 1, 1)).collect();

    let mut parent: Vec<u32> = (0..group.elements.len() as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let union = |parent: &mut Vec<u32>, a: u32, b: u32| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            // attach the larger root under the smaller so roots stay minimal
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi as usize] = lo;
        }
    };

    for idx in 0..group.elements.len() as u32 {
        let g = &group.elements[idx as usize];
        for p in &p_gens {
            let other = group.index[&p.mul(g).key()];
            union(&mut parent, idx, other);
        }
        for u in &u_gens {
            let other = group.index[&g.mul(u).key()];
            union(&mut parent, idx, other);
        }
    }

    let mut size_of: HashMap<u32, u64> = HashMap::new();
    for idx in 0..parent.len() as u32 {
        *size_of.entry(find(&mut parent, idx)).or_default() += 1;
    }
    let mut reps: Vec<u32> = size_of.keys().copied().collect();
    reps.sort_unstable();
    let sizes = reps.iter().map(|r| size_of[r]).collect();
    DoubleCosets { reps, sizes }
}

/// Whether φ_λ vanishes on all of `H = U ∩ w⁻¹Pw`.
fn restriction_trivial(
    w: &FqMat,
    unipotent: &[FqMat],
    blocks: &BlockMap,
    marks: &[usize],
    q: u64,
) -> bool {
    let w_inv = w.inverse().expect("group element");
    for u in unipotent {
        let conj = w.mul(u).mul(&w_inv);
        if conj.in_parabolic(blocks) {
            let phi = marks.iter().map(|&j| u.get(j, j + 1)).sum::<u64>() % q;
            if phi != 0 {
                return false;
            }
        }
    }
    true
}

/// Per-pair report of the finite oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOracleReport {
    pub n: usize,
    pub q: u64,
    pub lambda: Partition,
    pub mu: Partition,
    pub group_order: u64,
    pub coset_count: usize,
    pub coset_sizes: Vec<u64>,
    /// Number of double cosets with trivial restriction — the Hom dimension
    /// for the trivial inducing character.
    pub hom_dim: usize,
    pub wall_ms: u128,
}

impl FiniteOracleReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "q": self.q,
            "lambda": self.lambda.to_string(),
            "mu": self.mu.to_string(),
            "group_order": self.group_order,
            "coset_count": self.coset_count,
            "coset_sizes": self.coset_sizes,
            "hom_dim": self.hom_dim,
            "wall_ms": self.wall_ms,
        })
    }
}

fn check_inputs(n: usize, q: u64, limits: &OracleLimits) -> Result<u64, OracleError> {
    if !is_prime(q) {
        return Err(OracleError::NotPrime(q));
    }
    let order = group_order(n, q);
    if order > limits.max_group_order as u128 {
        return Err(OracleError::OrderOverBound { n, q, order, bound: limits.max_group_order });
    }
    Ok(order as u64)
}

/// Runs the double-coset oracle for one pair (λ, μ) over GL(n, F_q).
pub fn finite_oracle(
    n: usize,
    q: u64,
    lambda: &Partition,
    mu: &Partition,
    limits: &OracleLimits,
) -> Result<FiniteOracleReport, OracleError> {
    if lambda.n() != n {
        return Err(OracleError::WrongWeight(lambda.n(), n));
    }
    if mu.n() != n {
        return Err(OracleError::WrongWeight(mu.n(), n));
    }
    let order = check_inputs(n, q, limits)?;
    let start = Instant::now();
    let group = enumerate_group(n, q);
    debug_assert_eq!(group.elements.len() as u64, order);
    let unipotent = enumerate_unipotent(n, q);
    let blocks = BlockMap::from_partition(&mu.transpose());
    let cosets = double_cosets(&group, &blocks, n, q);
    let marks = marked_adjacent_pairs(lambda);
    let hom_dim = cosets
        .reps
        .iter()
        .filter(|&&rep| {
            restriction_trivial(&group.elements[rep as usize], &unipotent, &blocks, &marks, q)
        })
        .count();
    Ok(FiniteOracleReport {
        n,
        q,
        lambda: lambda.clone(),
        mu: mu.clone(),
        group_order: order,
        coset_count: cosets.reps.len(),
        coset_sizes: cosets.sizes,
        hom_dim,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// One line of a sweep: the pair's report plus whether the pair qualifies
/// under the prefix-sum criterion (qualifying pairs are asserted to vanish;
/// the rest are reported as observed).
#[derive(Debug, Clone)]
pub struct SweepLine {
    pub qualifying: bool,
    pub report: FiniteOracleReport,
}

#[derive(Debug, Clone)]
pub struct FiniteSweep {
    pub n: usize,
    pub q: u64,
    pub group_order: u64,
    pub lines: Vec<SweepLine>,
    pub all_qualifying_zero: bool,
    /// Every pair's coset sizes summed back to |G| exactly.
    pub sizes_sum_ok: bool,
}

impl FiniteSweep {
    pub fn summary_json(&self) -> Value {
        json!({
            "n": self.n,
            "q": self.q,
            "group_order": self.group_order,
            "pairs": self.lines.len(),
            "qualifying_pairs": self.lines.iter().filter(|l| l.qualifying).count(),
            "all_qualifying_zero": self.all_qualifying_zero,
            "sizes_sum_ok": self.sizes_sum_ok,
        })
    }
}

/// Sweeps every ordered pair (λ, μ) of partitions of n over GL(n, F_q),
/// computing the Hom dimension per pair. Double cosets are computed once per
/// μ (in parallel over μ); output order is deterministic.
pub fn finite_vanishing_sweep(
    n: usize,
    q: u64,
    limits: &OracleLimits,
) -> Result<FiniteSweep, OracleError> {
    let order = check_inputs(n, q, limits)?;
    let group = enumerate_group(n, q);
    let unipotent = enumerate_unipotent(n, q);
    let ps = partitions_of(n);

    let per_mu: Vec<(BlockMap, DoubleCosets)> = ps
        .par_iter()
        .map(|mu| {
            let blocks = BlockMap::from_partition(&mu.transpose());
            let cosets = double_cosets(&group, &blocks, n, q);
            (blocks, cosets)
        })
        .collect();

    let mut lines = Vec::new();
    let mut sizes_sum_ok = true;
    for lambda in &ps {
        let marks = marked_adjacent_pairs(lambda);
        for (mu, (blocks, cosets)) in ps.iter().zip(&per_mu) {
            let start = Instant::now();
            let hom_dim = cosets
                .reps
                .iter()
                .filter(|&&rep| {
                    restriction_trivial(&group.elements[rep as usize], &unipotent, blocks, &marks, q)
                })
                .count();
            sizes_sum_ok &= cosets.sizes.iter().sum::<u64>() == order;
            lines.push(SweepLine {
                qualifying: lambda.not_dominated(mu).expect("equal weights"),
                report: FiniteOracleReport {
                    n,
                    q,
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    group_order: order,
                    coset_count: cosets.reps.len(),
                    coset_sizes: cosets.sizes.clone(),
                    hom_dim,
                    wall_ms: start.elapsed().as_millis(),
                },
            });
        }
    }
    let all_qualifying_zero = lines.iter().all(|l| !l.qualifying || l.report.hom_dim == 0);
    Ok(FiniteSweep { n, q, group_order: order, lines, all_qualifying_zero, sizes_sum_ok })
}
