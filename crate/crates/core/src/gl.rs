//! Exact rational gl(n): commutator brackets, the trace and Killing pairings,
//! gradings by a rational semisimple diagonal element, standard nilpotent
//! representatives and their Jordan types, centralizers, and completion of a
//! nilpotent element to an sl2-triple.
//!
//! Convention for sl2-triples `(e, h, f)`: `[h,e] = 2e`, `[h,f] = -2f`,
//! `[e,f] = h`, with `f` the distinguished (lowering) nilpotent. Nilpotent
//! representatives therefore live on the first subdiagonal, one block of
//! consecutive indices per part of the Jordan type.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rat_int, Matrix, MatrixError, Rat};
use crate::partition::Partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GlError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("partition weight {0} does not match matrix size {1}")]
    SizeMismatch(usize, usize),
}

/// Commutator `[x, y] = xy - yx`.
pub fn bracket(x: &Matrix, y: &Matrix) -> Result<Matrix, GlError> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(GlError::Matrix(MatrixError::DimMismatch(x.rows(), x.cols(), y.rows(), y.cols())));
    }
    Ok(&(x * y) - &(y * x))
}

/// The invariant trace pairing `tr(xy)`. This is the pairing used for all
/// character functionals here; for traceless `x` it equals `κ(x,y)/(2n)`.
pub fn trace_pairing(x: &Matrix, y: &Matrix) -> Result<Rat, GlError> {
    if !x.is_square() || x.rows() != y.rows() || !y.is_square() {
        return Err(GlError::Matrix(MatrixError::DimMismatch(x.rows(), x.cols(), y.rows(), y.cols())));
    }
    Ok((x * y).trace())
}

/// The Killing form of gl(n): `κ(x,y) = 2n·tr(xy) − 2·tr(x)tr(y)`.
pub fn killing_form(x: &Matrix, y: &Matrix) -> Result<Rat, GlError> {
    let n = rat_int(x.n() as i64);
    let t = trace_pairing(x, y)?;
    Ok(rat_int(2) * (n * t - x.trace() * y.trace()))
}

/// A rational semisimple element, stored as its diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSemisimple {
    diag: Vec<Rat>,
}

impl DiagonalSemisimple {
    pub fn new(diag: Vec<Rat>) -> Self {
        DiagonalSemisimple { diag }
    }

    pub fn from_integers(diag: &[i64]) -> Self {
        DiagonalSemisimple { diag: diag.iter().map(|&k| rat_int(k)).collect() }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[Rat] {
        &self.diag
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::diagonal(&self.diag)
    }

    /// ad-eigenvalue of the coordinate position `(i, j)`: `diag[i] − diag[j]`.
    pub fn weight(&self, i: usize, j: usize) -> Rat {
        &self.diag[i] - &self.diag[j]
    }
}

/// Decomposition of the n² coordinate positions of gl(n) into ad-eigenspaces
/// of a diagonal semisimple element.
#[derive(Debug, Clone)]
pub struct GradedDecomposition {
    n: usize,
    spaces: BTreeMap<Rat, Vec<(usize, usize)>>,
}

impl GradedDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Eigenvalues in increasing order with their position lists.
    pub fn spaces(&self) -> impl Iterator<Item = (&Rat, &[(usize, usize)])> {
        self.spaces.iter().map(|(r, v)| (r, v.as_slice()))
    }

    /// Positions of the eigenspace at exactly `r` (empty slice if absent).
    pub fn at(&self, r: &Rat) -> &[(usize, usize)] {
        self.spaces.get(r).map_or(&[], Vec::as_slice)
    }

    /// Positions of `g^s_{≥ r}`, in row-major order.
    pub fn at_least(&self, r: &Rat) -> Vec<(usize, usize)> {
        let mut positions: Vec<(usize, usize)> =
            self.spaces.range(r.clone()..).flat_map(|(_, v)| v.iter().copied()).collect();
        positions.sort_unstable();
        positions
    }

    /// Positions of `g^s_{> r}`, in row-major order.
    pub fn strictly_above(&self, r: &Rat) -> Vec<(usize, usize)> {
        use std::ops::Bound;
        let mut positions: Vec<(usize, usize)> = self
            .spaces
            .range((Bound::Excluded(r.clone()), Bound::Unbounded))
            .flat_map(|(_, v)| v.iter().copied())
            .collect();
        positions.sort_unstable();
        positions
    }

    pub fn dim_at_least(&self, r: &Rat) -> usize {
        self.spaces.range(r.clone()..).map(|(_, v)| v.len()).sum()
    }

    /// Whether the support of `m` is contained in the eigenspace at `r`.
    pub fn supports_only(&self, m: &Matrix, r: &Rat) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if !m.get(i, j).is_zero() && !self.at(r).contains(&(i, j)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Grades the coordinate positions of gl(n) by `s`: position `(i, j)` has
/// eigenvalue `diag[i] − diag[j]`.
pub fn grade_by(s: &DiagonalSemisimple) -> GradedDecomposition {
    let n = s.n();
    let mut spaces: BTreeMap<Rat, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            spaces.entry(s.weight(i, j)).or_default().push((i, j));
        }
    }
    GradedDecomposition { n, spaces }
}

/// Standard nilpotent representative of the orbit with Jordan type `lambda`:
/// for each part occupying a consecutive index block, ones on the first
/// subdiagonal of that block.
pub fn nilpotent_representative(lambda: &Partition) -> Matrix {
    let n = lambda.n();
    let mut u = Matrix::zero(n, n);
    let mut offset = 0;
    for &part in lambda.parts() {
        for j in 0..part - 1 {
            u.set(offset + j + 1, offset + j, rat_int(1));
        }
        offset += part;
    }
    u
}

/// Jordan type of a nilpotent matrix, from the rank sequence of its powers:
/// the number of parts ≥ k is `rank(u^{k−1}) − rank(u^k)`.
pub fn orbit_partition(u: &Matrix) -> Result<Partition, GlError> {
    let n = u.n();
    if n == 0 {
        return Ok(Partition::empty());
    }
    let mut ranks = Vec::with_capacity(n + 1);
    let mut power = Matrix::identity(n);
    ranks.push(n);
    for _ in 0..n {
        power = &power * u;
        ranks.push(power.rank());
    }
    if ranks[n] != 0 {
        return Err(GlError::NotNilpotent);
    }
    let mut parts = Vec::new();
    for k in 1..=n {
        let at_least_k = ranks[k - 1] - ranks[k];
        let at_least_next = if k < n { ranks[k] - ranks[k + 1] } else { 0 };
        for _ in 0..at_least_k.saturating_sub(at_least_next) {
            parts.push(k);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(parts.iter().sum::<usize>(), n);
    Ok(Partition::new(parts).expect("rank sequence yields a valid partition"))
}

/// The matrix of `ad(x)` acting on gl(n) in the coordinate basis `E_{ij}`
/// ordered row-major; an n²×n² matrix.
pub fn ad_matrix(x: &Matrix) -> Matrix {
    let n = x.n();
    let dim = n * n;
    let mut m = Matrix::zero(dim, dim);
    // [x, E_{kl}] = x·E_{kl} − E_{kl}·x has (i,l)-entries x_{ik} and (k,j)-entries −x_{lj}
    for k in 0..n {
        for l in 0..n {
            let col = k * n + l;
            for i in 0..n {
                let v = m.get(i * n + l, col) + x.get(i, k);
                m.set(i * n + l, col, v);
            }
            for j in 0..n {
                let v = m.get(k * n + j, col) - x.get(l, j);
                m.set(k * n + j, col, v);
            }
        }
    }
    m
}

/// Basis of the centralizer `{y : [y, x] = 0}` in gl(n), by exact nullspace
/// of `ad(x)`.
pub fn centralizer_basis(x: &Matrix) -> Vec<Matrix> {
    let n = x.n();
    ad_matrix(x).nullspace().into_iter().map(|v| Matrix::from_flat(n, n, v)).collect()
}

/// An sl2-triple `(e, h, f)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Matrix,
    pub h: Matrix,
    pub f: Matrix,
}

impl Sl2Triple {
    /// Checks the three bracket relations exactly.
    pub fn verify(&self) -> bool {
        let two = rat_int(2);
        bracket(&self.h, &self.e).map(|b| b == self.e.scale(&two)).unwrap_or(false)
            && bracket(&self.h, &self.f).map(|b| b == self.f.scale(&-two)).unwrap_or(false)
            && bracket(&self.e, &self.f).map(|b| b == self.h).unwrap_or(false)
    }
}

/// The blockwise standard triple over the representative of `lambda`: a block
/// of size p contributes h-values p−1, p−3, …, 1−p and e-entries j(p−j) on
/// its superdiagonal.
fn standard_triple(lambda: &Partition) -> Sl2Triple {
    let n = lambda.n();
    let mut e = Matrix::zero(n, n);
    let mut h = Matrix::zero(n, n);
    let mut offset = 0;
    for &part in lambda.parts() {
        let p = part as i64;
        for j in 0..part {
            h.set(offset + j, offset + j, rat_int(p - 1 - 2 * j as i64));
        }
        for j in 1..part {
            let j64 = j as i64;
            e.set(offset + j - 1, offset + j, rat_int(j64 * (p - j64)));
        }
        offset += part;
    }
    Sl2Triple { e, h, f: nilpotent_representative(lambda) }
}

/// A Jordan basis for a nilpotent `u`: an invertible `P` whose columns are
/// chains `head, u·head, u²·head, …` grouped by decreasing chain length, so
/// that `P⁻¹ u P` is the standard representative of `u`'s Jordan type.
fn jordan_basis(u: &Matrix, lambda: &Partition) -> Matrix {
    let n = u.n();
    let depth = lambda.part(0);
    // kernels of the powers, each as a canonical basis of flat vectors
    let mut kernels: Vec<Vec<Vec<Rat>>> = Vec::with_capacity(depth + 1);
    kernels.push(Vec::new()); // ker(u^0) = 0
    let mut power = Matrix::identity(n);
    for _ in 0..depth {
        power = &power * u;
        kernels.push(power.nullspace());
    }

    let apply = |m: &Matrix, v: &[Rat]| -> Vec<Rat> {
        (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j) * &v[j]).fold(Rat::zero(), |a, b| a + b))
            .collect()
    };

    // heads[length] = chain heads of that length, found top-down
    let mut heads: Vec<(usize, Vec<Rat>)> = Vec::new();
    for length in (1..=depth).rev() {
        // span to stay independent of: ker(u^{length−1}) plus the level-length
        // descendants of longer chains
        let mut avoid: Vec<Vec<Rat>> = kernels[length - 1].clone();
        for (head_len, head) in &heads {
            let mut v = head.clone();
            for _ in 0..head_len - length {
                v = apply(u, &v);
            }
            avoid.push(v);
        }
        let wanted = lambda.parts().iter().filter(|&&p| p == length).count();
        let mut found = 0;
        let mut current = crate::linalg::span_canonical(&avoid, n);
        for candidate in &kernels[length] {
            if found == wanted {
                break;
            }
            if !crate::linalg::in_span(&current, candidate) {
                heads.push((length, candidate.clone()));
                current.push(candidate.clone());
                current = crate::linalg::span_canonical(&current, n);
                found += 1;
            }
        }
        assert_eq!(found, wanted, "Jordan chain head search must succeed for nilpotent input");
    }

    heads.sort_by(|a, b| b.0.cmp(&a.0));
    let mut columns: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (length, head) in &heads {
        let mut v = head.clone();
        for _ in 0..*length {
            columns.push(v.clone());
            v = apply(u, &v);
        }
    }
    Matrix::from_fn(n, n, |r, c| columns[c][r].clone())
}

/// Completes a nilpotent `u` to an sl2-triple `(e, h, u)`. For the standard
/// representative of its Jordan type this is the blockwise triple with
/// diagonal `h`; otherwise the blockwise triple is conjugated by a Jordan
/// basis.
pub fn jacobson_morozov(u: &Matrix) -> Result<Sl2Triple, GlError> {
    let lambda = orbit_partition(u)?;
    let standard = standard_triple(&lambda);
    if standard.f == *u {
        return Ok(standard);
    }
    let p = jordan_basis(u, &lambda);
    let p_inv = p.inverse().expect("Jordan basis is invertible");
    let conj = |m: &Matrix| &(&p * m) * &p_inv;
    let triple = Sl2Triple { e: conj(&standard.e), h: conj(&standard.h), f: conj(&standard.f) };
    debug_assert_eq!(triple.f, *u);
    Ok(triple)
}
