//! Whittaker pairs and their attached unipotent data: the grading element
//! `s_n`, neutral elements, the antisymmetric form `ω_u(X,Y) = tr(u[X,Y])` and
//! its radical `n_{s,u}` inside `u_s = g^s_{≥1}` (computed two independent
//! ways), and the character support `ψ_u` carried by the corresponding
//! unipotent group.
//!
//! Grading convention: `s_n = diag(n−1, n−3, …, 1−n)`, i.e. twice the
//! half-integer ladder that is often printed for this element. The doubled
//! form is forced by the Whittaker-pair requirement that the nilpotent lies in
//! the (−2)-eigenspace of ad(s): subdiagonal blocks sit at weight −2 exactly
//! under the doubled grading, and `N_{s_n,u_λ}` then comes out as the full
//! upper unitriangular group, matching the constant-term-then-Whittaker
//! structure the pair is meant to produce. The blockwise neutral element is
//! doubled the same way (t−1, t−3, …, 1−t per block). A halved grading would
//! put the same nilpotents at weight −1 and break the pair condition.
//!
//! Groups are represented by their Lie algebra data only (positions, basis
//! vectors, character functionals); no group elements are ever built.

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::gl::{self, DiagonalSemisimple, GradedDecomposition};
use crate::linalg::{rat_int, same_span, span_canonical, Matrix, Rat};
use crate::partition::Partition;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WhittakerError {
    #[error("nilpotent entry at ({0}, {1}) has ad(s)-weight {2}, not -2")]
    NotWeightMinusTwo(usize, usize, Rat),
    #[error("semisimple size {0} does not match nilpotent size {1}")]
    SizeMismatch(usize, usize),
}

/// The standard grading element `diag(n−1, n−3, …, 1−n)` (doubled
/// convention; see the module docs).
pub fn standard_sn(n: usize) -> DiagonalSemisimple {
    DiagonalSemisimple::new((0..n).map(|i| rat_int(n as i64 - 1 - 2 * i as i64)).collect())
}

/// The blockwise neutral element for the standard representative of
/// `lambda`: each part p contributes p−1, p−3, …, 1−p on its block.
pub fn neutral_semisimple(lambda: &Partition) -> DiagonalSemisimple {
    let mut diag = Vec::with_capacity(lambda.n());
    for &p in lambda.parts() {
        for j in 0..p {
            diag.push(rat_int(p as i64 - 1 - 2 * j as i64));
        }
    }
    DiagonalSemisimple::new(diag)
}

/// A Whittaker pair: rational semisimple `s` with nilpotent `u` contained in
/// the (−2)-eigenspace of ad(s).
#[derive(Debug, Clone)]
pub struct WhittakerPair {
    s: DiagonalSemisimple,
    u: Matrix,
    grading: GradedDecomposition,
}

impl WhittakerPair {
    pub fn new(s: DiagonalSemisimple, u: Matrix) -> Result<Self, WhittakerError> {
        let n = s.n();
        if u.rows() != n || u.cols() != n {
            return Err(WhittakerError::SizeMismatch(n, u.rows()));
        }
        let minus_two = rat_int(-2);
        for i in 0..n {
            for j in 0..n {
                if !u.get(i, j).is_zero() && s.weight(i, j) != minus_two {
                    return Err(WhittakerError::NotWeightMinusTwo(i, j, s.weight(i, j)));
                }
            }
        }
        let grading = gl::grade_by(&s);
        Ok(WhittakerPair { s, u, grading })
    }

    pub fn s(&self) -> &DiagonalSemisimple {
        &self.s
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn grading(&self) -> &GradedDecomposition {
        &self.grading
    }

    /// Whether `s` is a neutral element for `u`: some `v` in the 2-eigenspace
    /// solves `[v, u] = s`, completing an sl2-triple. Such a `v` raises the
    /// grading by 2, so it is automatically nilpotent, and `[s, v] = 2v`
    /// holds by construction.
    pub fn is_neutral(&self) -> bool {
        let n = self.n();
        let positions = self.grading.at(&rat_int(2)).to_vec();
        let columns: Vec<Vec<Rat>> = positions
            .iter()
            .map(|&(i, j)| {
                gl::bracket(&Matrix::unit(n, i, j), &self.u).expect("same size").to_flat()
            })
            .collect();
        let system = Matrix::from_fn(n * n, positions.len(), |row, col| columns[col][row].clone());
        let target = self.s.to_matrix().to_flat();
        system.solve(&target).is_some()
    }

    /// `u_s = g^s_{≥1}` together with the radical of `ω_u` on it, computed
    /// from the definition: the kernel of the Gram matrix of
    /// `ω_u(X,Y) = tr(u[X,Y])` on the coordinate basis of `u_s`.
    pub fn omega_radical(&self) -> NilradicalData {
        let n = self.n();
        let us = self.grading.at_least(&rat_int(1));
        let units: Vec<Matrix> = us.iter().map(|&(i, j)| Matrix::unit(n, i, j)).collect();
        let gram = Matrix::from_fn(us.len(), us.len(), |x, y| {
            let b = gl::bracket(&units[x], &units[y]).expect("same size");
            gl::trace_pairing(&self.u, &b).expect("same size")
        });
        let basis = gram
            .nullspace()
            .into_iter()
            .map(|coeffs| {
                let mut m = Matrix::zero(n, n);
                for (k, &(i, j)) in us.iter().enumerate() {
                    if !coeffs[k].is_zero() {
                        m.set(i, j, coeffs[k].clone());
                    }
                }
                m
            })
            .collect();
        NilradicalData { n, us_positions: us, basis }
    }

    /// The same radical by the closed formula
    /// `n_{s,u} = g^s_{>1} + g^s_1 ∩ g_u`, with the centralizer intersection
    /// computed as a nullspace of ad(u) restricted to the 1-eigenspace.
    ///
    /// On integer gradings (every neutral pair, every pair built from `s_n`
    /// or a blockwise neutral element) `g^s_{>1} = g^s_{≥2}`, the form the
    /// identity is usually quoted in. The strict bound is what the radical
    /// actually is: `ω_u` pairs weights summing to 2, so inside `g^s_{≥1}`
    /// only weight-1 vectors can pair nontrivially, and any fractional
    /// weight in (1, 2) is automatically radical.
    pub fn nsu_formula(&self) -> NilradicalData {
        let n = self.n();
        let us = self.grading.at_least(&rat_int(1));
        let mut basis: Vec<Matrix> = self
            .grading
            .strictly_above(&rat_int(1))
            .iter()
            .map(|&(i, j)| Matrix::unit(n, i, j))
            .collect();
        let degree_one = self.grading.at(&rat_int(1)).to_vec();
        if !degree_one.is_empty() {
            let columns: Vec<Vec<Rat>> = degree_one
                .iter()
                .map(|&(i, j)| {
                    gl::bracket(&Matrix::unit(n, i, j), &self.u).expect("same size").to_flat()
                })
                .collect();
            let system =
                Matrix::from_fn(n * n, degree_one.len(), |row, col| columns[col][row].clone());
            for coeffs in system.nullspace() {
                let mut m = Matrix::zero(n, n);
                for (k, &(i, j)) in degree_one.iter().enumerate() {
                    if !coeffs[k].is_zero() {
                        m.set(i, j, coeffs[k].clone());
                    }
                }
                basis.push(m);
            }
        }
        NilradicalData { n, us_positions: us, basis }
    }

    /// The character support of `ψ_u` on `N_{s,u}`: position `(i, j)` carries
    /// coefficient `u_{ji}` whenever that entry is nonzero, and the functional
    /// is `X ↦ tr(uX)`. For a Whittaker pair every such position has weight 2,
    /// hence lies in `g^s_{≥2} ⊆ n_{s,u}`.
    pub fn character_support(&self) -> CharacterSupport {
        let n = self.n();
        let mut marks = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.u.get(j, i).is_zero() {
                    marks.push(((i, j), self.u.get(j, i).clone()));
                }
            }
        }
        CharacterSupport { n, marks }
    }
}

/// Basis data for `u_s = g^s_{≥1}` and the radical `n_{s,u}` of `ω_u` on it —
/// the Lie algebra of the integration group `N_{s,u}`.
#[derive(Debug, Clone)]
pub struct NilradicalData {
    n: usize,
    us_positions: Vec<(usize, usize)>,
    basis: Vec<Matrix>,
}

impl NilradicalData {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn us_positions(&self) -> &[(usize, usize)] {
        &self.us_positions
    }

    pub fn us_dim(&self) -> usize {
        self.us_positions.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical (RREF) basis of the radical as flat n²-coordinate rows.
    pub fn canonical(&self) -> Vec<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = self.basis.iter().map(Matrix::to_flat).collect();
        span_canonical(&rows, self.n * self.n)
    }

    pub fn same_subspace(&self, other: &NilradicalData) -> bool {
        let a: Vec<Vec<Rat>> = self.basis.iter().map(Matrix::to_flat).collect();
        let b: Vec<Vec<Rat>> = other.basis.iter().map(Matrix::to_flat).collect();
        self.n == other.n && same_span(&a, &b, self.n * self.n)
    }

    /// Whether the coordinate position `(i, j)` lies in the radical.
    pub fn contains_unit(&self, i: usize, j: usize) -> bool {
        crate::linalg::in_span(&self.canonical(), &Matrix::unit(self.n, i, j).to_flat())
    }
}

/// Marked positions and coefficients of a unipotent character functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterSupport {
    n: usize,
    marks: Vec<((usize, usize), Rat)>,
}

impl CharacterSupport {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Marked positions `(i, j)` (0-based) with their coefficients.
    pub fn marks(&self) -> &[((usize, usize), Rat)] {
        &self.marks
    }

    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.marks.iter().map(|&(p, _)| p).collect()
    }

    /// The functional value `Σ c_{ij} · x_{ij}`, which equals `tr(u x)`.
    pub fn value(&self, x: &Matrix) -> Rat {
        self.marks.iter().map(|((i, j), c)| c * x.get(*i, *j)).fold(Rat::zero(), |a, b| a + b)
    }

    pub fn is_trivial(&self) -> bool {
        self.marks.is_empty()
    }
}

/// The semi-Whittaker pair of a partition: `(s_n, u_λ)` with its character
/// support — within each consecutive block of `lambda`, every adjacent
/// superdiagonal position is marked, and the group is the full upper
/// unitriangular group.
pub fn semi_whittaker(lambda: &Partition) -> (WhittakerPair, CharacterSupport) {
    let n = lambda.n();
    let pair = WhittakerPair::new(standard_sn(n), gl::nilpotent_representative(lambda))
        .expect("subdiagonal representatives sit at weight -2 under s_n");
    let support = pair.character_support();
    (pair, support)
}

/// Serializable report for a Whittaker pair: grading table, dimensions of
/// `u_s` and `n_{s,u}`, neutrality, and marked positions (1-based).
#[derive(Debug, Serialize)]
pub struct PairReport {
    pub n: usize,
    pub s: Vec<String>,
    pub neutral: bool,
    pub grading: Vec<GradingRow>,
    pub us_dim: usize,
    pub nsu_dim: usize,
    pub marks: Vec<MarkEntry>,
}

#[derive(Debug, Serialize)]
pub struct GradingRow {
    pub weight: String,
    pub positions: Vec<(usize, usize)>,
}

#[derive(Debug, Serialize)]
pub struct MarkEntry {
    pub row: usize,
    pub col: usize,
    pub coeff: String,
}

impl PairReport {
    pub fn build(pair: &WhittakerPair) -> Self {
        let radical = pair.omega_radical();
        let support = pair.character_support();
        PairReport {
            n: pair.n(),
            s: pair.s().diag().iter().map(Rat::to_string).collect(),
            neutral: pair.is_neutral(),
            grading: pair
                .grading()
                .spaces()
                .map(|(w, positions)| GradingRow {
                    weight: w.to_string(),
                    positions: positions.iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
                })
                .collect(),
            us_dim: radical.us_dim(),
            nsu_dim: radical.dim(),
            marks: support
                .marks()
                .iter()
                .map(|((i, j), c)| MarkEntry { row: i + 1, col: j + 1, coeff: c.to_string() })
                .collect(),
        }
    }
}
