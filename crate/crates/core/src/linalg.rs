//! Exact rational dense matrices and the elimination routines the rest of the
//! crate is built on: reduced row echelon form, nullspaces, linear solves, and
//! a fraction-free (Bareiss) rank over the integers.
//!
//! Everything here is exact. Rank goes through fraction-free elimination on a
//! denominator-cleared copy; echelon-based routines use plain rational
//! elimination (entries auto-reduce). The two agree, and a test pins that.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact rational scalar used across the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand rational constructor: `rat(n, d) = n/d`.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// `k` as a rational.
pub fn rat_int(k: i64) -> Rat {
    Rat::from_integer(BigInt::from(k))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimMismatch(usize, usize, usize, usize),
    #[error("operation requires a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
}

/// Dense matrix with exact rational entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    /// Integer test-data constructor.
    pub fn from_integers(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| rat_int(k)).collect()).collect())
    }

    /// The matrix unit E_{ij} (0-based) inside an n×n matrix.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        m.set(i, j, Rat::one());
        m
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Square dimension; panics on non-square (internal misuse).
    pub fn n(&self) -> usize {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn trace(&self) -> Rat {
        (0..self.n()).map(|i| self.get(i, i).clone()).fold(Rat::zero(), |a, b| a + b)
    }

    pub fn scale(&self, k: &Rat) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * k)
    }

    pub fn pow(&self, mut e: usize) -> Matrix {
        let n = self.n();
        let mut acc = Matrix::identity(n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Flattens to a length rows·cols coordinate vector (row-major).
    pub fn to_flat(&self) -> Vec<Rat> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    /// Renders entries as strings `p/q` (plain `p` for integers), row-major.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &factor * m.get(row, c);
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Matrix rank by fraction-free (Bareiss) elimination over the integers,
    /// after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let lcm = (0..self.cols)
                    .map(|c| self.get(r, c).denom().clone())
                    .fold(BigInt::one(), |a, b| a.lcm(&b));
                (0..self.cols)
                    .map(|c| {
                        let e = self.get(r, c);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pr);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Basis of the right nullspace `{x : self · x = 0}`, one vector per free
    /// column (that free variable set to 1).
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let rref = self.rref();
        let pivots = &rref.pivots;
        let mut is_pivot = vec![false; self.cols];
        for &col in pivots {
            is_pivot[col] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (&col, row) in pivots.iter().zip(0..) {
                v[col] = -rref.matrix.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Any solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let rref = aug.rref();
        if rref.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &col) in rref.pivots.iter().enumerate() {
            x[col] = rref.matrix.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n();
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let rref = aug.rref();
        if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| rref.matrix.get(r, n + c).clone()))
    }
}

/// Result of reduced row echelon elimination.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - other.get(r, c))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c).clone())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix dimension mismatch")
    }
}

/// Canonical basis (nonzero RREF rows) of the row span of `vectors`.
pub fn span_canonical(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    for v in vectors {
        assert_eq!(v.len(), dim);
    }
    let m = Matrix::from_rows(vectors.to_vec());
    let rref = m.rref();
    (0..rref.rank()).map(|r| (0..dim).map(|c| rref.matrix.get(r, c).clone()).collect()).collect()
}

/// Whether two sets of coordinate vectors span the same subspace.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> bool {
    span_canonical(a, dim) == span_canonical(b, dim)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut rows = basis.to_vec();
    let dim = v.len();
    let rank_before = span_canonical(&rows, dim).len();
    rows.push(v.to_vec());
    span_canonical(&rows, dim).len() == rank_before
}
