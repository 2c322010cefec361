//! Speh exponent data and the column arrangement that witnesses the top
//! orbit.
//!
//! A cuspidal datum `(a, b, re_s)` stands for a Speh representation of length
//! `b` built from a rank-`a` cuspidal factor, twisted by a character whose
//! real part is `re_s`; cuspidal factors themselves are opaque labels. The
//! exponent ladder of length `b` is `(1−b)/2, (3−b)/2, …, (b−1)/2`.
//!
//! Ladders are padded to the longest one and cut into columns: `⌈b_max/2⌉`
//! s-columns (the non-positive half, outermost first) and `⌊b_max/2⌋`
//! h-columns (the positive half). A cusp with length `b` occupies s-columns
//! `q ≤ ⌈b/2⌉` and h-columns `j ≤ ⌊b/2⌋`, with base exponents `1−q` / `j` for
//! odd `b` and `1/2−q` / `j−1/2` for even `b`. The multiset of column sizes
//! (sum of `a` over members) is exactly the top-orbit partition
//! `Σ_i [a_i^{b_i}]`, and under the twist assumption every column's inducing
//! data is generic — which is the computable content of the non-vanishing
//! argument.
//!
//! The twist assumption constrains each unordered pair of cusps once: for
//! same-parity pairs the difference `re_s_i − re_s_j` (input order) must
//! avoid `(−1, 0) ∪ {1}`, and for mixed-parity pairs the odd-minus-even
//! difference must avoid `(−3/2, −1/2) ∪ {1/2}`. These are precisely the
//! constraints the shared columns impose pairwise, with odd-b entries
//! preceding even-b entries (their bases differ by 1/2), so the assumption
//! passes if and only if every column is generic.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{rat, rat_int, Rat};
use crate::partition::{self, Partition};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("cannot parse cuspidal datum from {0:?} (expected a:b:s)")]
    Parse(String),
    #[error("isobaric datum must contain at least one cusp")]
    Empty,
    #[error("(a, b) must be positive, got ({0}, {1})")]
    NonPositive(usize, usize),
    #[error("twist assumption violated: {0}")]
    AssumptionRefused(AssumptionReport),
}

/// The exponent ladder `(1−b)/2, (3−b)/2, …, (b−1)/2` of a length-`b` Speh
/// representation.
pub fn speh_exponents(b: usize) -> Vec<Rat> {
    let b = b as i64;
    (1..=b).map(|i| rat(2 * i - 1 - b, 2)).collect()
}

/// `(⌈b/2⌉, ⌊b/2⌋)`: the number of s-parameters and h-parameters of a
/// length-`b` ladder.
pub fn ell_k(b: usize) -> (usize, usize) {
    ((b + 1) / 2, b / 2)
}

/// One inducing factor: cuspidal rank `a`, Speh length `b`, real part of the
/// twist, and an opaque label for the cuspidal factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalDatum {
    pub a: usize,
    pub b: usize,
    pub re_s: Rat,
    pub label: String,
}

impl CuspidalDatum {
    pub fn new(a: usize, b: usize, re_s: Rat, label: impl Into<String>) -> Result<Self, SpectrumError> {
        if a == 0 || b == 0 {
            return Err(SpectrumError::NonPositive(a, b));
        }
        Ok(CuspidalDatum { a, b, re_s, label: label.into() })
    }

    pub fn odd_b(&self) -> bool {
        self.b % 2 == 1
    }
}

/// An ordered list of cuspidal data; `n = Σ a_i b_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsobaricDatum {
    cusps: Vec<CuspidalDatum>,
}

impl IsobaricDatum {
    pub fn new(cusps: Vec<CuspidalDatum>) -> Result<Self, SpectrumError> {
        if cusps.is_empty() {
            return Err(SpectrumError::Empty);
        }
        Ok(IsobaricDatum { cusps })
    }

    /// Builds from `(a, b, re_s)` triples with automatic labels.
    pub fn from_triples(triples: &[(usize, usize, Rat)]) -> Result<Self, SpectrumError> {
        let cusps = triples
            .iter()
            .enumerate()
            .map(|(i, (a, b, s))| CuspidalDatum::new(*a, *b, s.clone(), format!("tau{}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        IsobaricDatum::new(cusps)
    }

    pub fn cusps(&self) -> &[CuspidalDatum] {
        &self.cusps
    }

    pub fn n(&self) -> usize {
        self.cusps.iter().map(|c| c.a * c.b).sum()
    }

    /// The top-orbit partition `Σ_i [a_i^{b_i}]`.
    pub fn top_orbit(&self) -> Partition {
        let pairs: Vec<(usize, usize)> = self.cusps.iter().map(|c| (c.a, c.b)).collect();
        partition::top_orbit(&pairs).expect("datum is nonempty with positive entries")
    }
}

impl FromStr for IsobaricDatum {
    type Err = SpectrumError;

    /// Parses `a:b:s,a:b:s,…` with `s` a rational such as `-1/2`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut cusps = Vec::new();
        for (i, chunk) in text.split(',').enumerate() {
            let fields: Vec<&str> = chunk.trim().split(':').collect();
            if fields.len() != 3 {
                return Err(SpectrumError::Parse(chunk.trim().to_string()));
            }
            let a: usize =
                fields[0].trim().parse().map_err(|_| SpectrumError::Parse(chunk.to_string()))?;
            let b: usize =
                fields[1].trim().parse().map_err(|_| SpectrumError::Parse(chunk.to_string()))?;
            let re_s: Rat = fields[2]
                .trim()
                .parse()
                .map_err(|_| SpectrumError::Parse(chunk.to_string()))?;
            cusps.push(CuspidalDatum::new(a, b, re_s, format!("tau{}", i + 1))?);
        }
        IsobaricDatum::new(cusps)
    }
}

/// Which clause of the twist assumption a pair falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParityCase {
    SameParity,
    OddEven,
}

/// A violated pair: indices are 0-based positions into the datum, oriented as
/// checked (input order for same parity, odd-then-even for mixed parity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionViolation {
    pub i: usize,
    pub j: usize,
    pub case: ParityCase,
    pub difference: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionReport {
    pub pass: bool,
    pub violations: Vec<AssumptionViolation>,
}

impl AssumptionReport {
    pub fn first_violation(&self) -> Option<&AssumptionViolation> {
        self.violations.first()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass,
            "violations": self.violations.iter().map(|v| json!({
                "i": v.i + 1,
                "j": v.j + 1,
                "condition": match v.case {
                    ParityCase::SameParity => "same_parity",
                    ParityCase::OddEven => "odd_even",
                },
                "difference": v.difference.to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AssumptionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            return write!(f, "assumption holds");
        }
        let v = &self.violations[0];
        write!(
            f,
            "pair ({}, {}) [{}] has excluded difference {}",
            v.i + 1,
            v.j + 1,
            match v.case {
                ParityCase::SameParity => "same parity",
                ParityCase::OddEven => "odd/even",
            },
            v.difference
        )
    }
}

/// Allowed set for same-parity differences: everything except `(−1, 0) ∪ {1}`.
fn same_parity_allowed(d: &Rat) -> bool {
    let minus_one = rat_int(-1);
    let zero = Rat::zero();
    let one = rat_int(1);
    !(*d > minus_one && *d < zero) && *d != one
}

/// Allowed set for odd-minus-even differences: everything except
/// `(−3/2, −1/2) ∪ {1/2}`.
fn odd_even_allowed(d: &Rat) -> bool {
    let lo = rat(-3, 2);
    let hi = rat(-1, 2);
    let half = rat(1, 2);
    !(*d > lo && *d < hi) && *d != half
}

/// Checks the twist assumption pairwise; reports every violated pair.
pub fn assumption_check(data: &IsobaricDatum) -> AssumptionReport {
    let cusps = data.cusps();
    let mut violations = Vec::new();
    for i in 0..cusps.len() {
        for j in i + 1..cusps.len() {
            let (ci, cj) = (&cusps[i], &cusps[j]);
            if ci.odd_b() == cj.odd_b() {
                let d = &ci.re_s - &cj.re_s;
                if !same_parity_allowed(&d) {
                    violations.push(AssumptionViolation {
                        i,
                        j,
                        case: ParityCase::SameParity,
                        difference: d,
                    });
                }
            } else {
                let (o, e) = if ci.odd_b() { (i, j) } else { (j, i) };
                let d = &cusps[o].re_s - &cusps[e].re_s;
                if !odd_even_allowed(&d) {
                    violations.push(AssumptionViolation {
                        i: o,
                        j: e,
                        case: ParityCase::OddEven,
                        difference: d,
                    });
                }
            }
        }
    }
    AssumptionReport { pass: violations.is_empty(), violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ColumnKind {
    S,
    H,
}

/// One entry of a column: which cusp, and at which exponent it appears there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnEntry {
    /// 0-based index into the datum.
    pub cusp: usize,
    /// Ladder value before adding the twist.
    pub base: Rat,
    /// `base + re_s` of the cusp.
    pub exponent: Rat,
    pub odd_b: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub kind: ColumnKind,
    /// `q` for s-columns, `j` for h-columns (1-based).
    pub index: usize,
    /// Members in input cusp order.
    pub entries: Vec<ColumnEntry>,
    /// Sum of `a` over members.
    pub size: usize,
}

/// The padded-ladder column table: s-columns `s^{(ℓ)} … s^{(1)}` followed by
/// h-columns `h^{(1)} … h^{(k)}`, where `ℓ, k` come from the longest ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnArrangement {
    n: usize,
    columns: Vec<Column>,
}

/// A within-column pair whose exponent difference falls in the excluded set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityViolation {
    /// Index into the column list.
    pub column: usize,
    pub first_cusp: usize,
    pub second_cusp: usize,
    pub difference: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub pass: bool,
    pub violation: Option<GenericityViolation>,
}

impl ColumnArrangement {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    /// Column sizes as a partition (sorted decreasing).
    pub fn sizes_partition(&self) -> Partition {
        Partition::from_unsorted(self.columns.iter().map(|c| c.size).collect())
    }

    /// Column indices ordered by decreasing size, ties kept in table order —
    /// the order in which columns are renamed `η_1, η_2, …`.
    pub fn eta_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.columns.len()).collect();
        order.sort_by(|&x, &y| self.columns[y].size.cmp(&self.columns[x].size));
        order
    }

    /// Checks that every column stays generic: entries are taken odd-b first
    /// and even-b second (input order within each class), and for each pair
    /// `x` before `y` the difference of exponents must avoid `(−1, 0) ∪ {1}`.
    pub fn column_genericity(&self) -> GenericityReport {
        for (col_idx, col) in self.columns.iter().enumerate() {
            let ordered: Vec<&ColumnEntry> = col
                .entries
                .iter()
                .filter(|e| e.odd_b)
                .chain(col.entries.iter().filter(|e| !e.odd_b))
                .collect();
            for x in 0..ordered.len() {
                for y in x + 1..ordered.len() {
                    let d = &ordered[x].exponent - &ordered[y].exponent;
                    if !same_parity_allowed(&d) {
                        return GenericityReport {
                            pass: false,
                            violation: Some(GenericityViolation {
                                column: col_idx,
                                first_cusp: ordered[x].cusp,
                                second_cusp: ordered[y].cusp,
                                difference: d,
                            }),
                        };
                    }
                }
            }
        }
        GenericityReport { pass: true, violation: None }
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .columns
            .iter()
            .map(|c| json!({
                "kind": match c.kind { ColumnKind::S => "s", ColumnKind::H => "h" },
                "index": c.index,
                "entries": c.entries.iter().map(|e| json!({
                    "cusp": e.cusp + 1,
                    "exponent": e.exponent.to_string(),
                })).collect::<Vec<_>>(),
                "size": c.size,
            }))
            .collect::<Vec<_>>())
    }
}

/// Builds the column arrangement of a datum. Every column is nonempty (the
/// longest ladder populates them all), and the multiset of column sizes
/// equals the top-orbit partition — asserted here because downstream
/// consumes exactly that identity.
pub fn arrange_columns(data: &IsobaricDatum) -> ColumnArrangement {
    let b_max = data.cusps().iter().map(|c| c.b).max().expect("nonempty datum");
    let (ell_max, k_max) = ell_k(b_max);
    let mut columns = Vec::with_capacity(b_max);
    for q in (1..=ell_max).rev() {
        let mut entries = Vec::new();
        let mut size = 0;
        for (idx, c) in data.cusps().iter().enumerate() {
            let (ell, _) = ell_k(c.b);
            if q <= ell {
                let base =
                    if c.odd_b() { rat_int(1 - q as i64) } else { rat(1 - 2 * q as i64, 2) };
                entries.push(ColumnEntry {
                    cusp: idx,
                    exponent: &base + &c.re_s,
                    base,
                    odd_b: c.odd_b(),
                });
                size += c.a;
            }
        }
        columns.push(Column { kind: ColumnKind::S, index: q, entries, size });
    }
    for j in 1..=k_max {
        let mut entries = Vec::new();
        let mut size = 0;
        for (idx, c) in data.cusps().iter().enumerate() {
            let (_, k) = ell_k(c.b);
            if j <= k {
                let base = if c.odd_b() { rat_int(j as i64) } else { rat(2 * j as i64 - 1, 2) };
                entries.push(ColumnEntry {
                    cusp: idx,
                    exponent: &base + &c.re_s,
                    base,
                    odd_b: c.odd_b(),
                });
                size += c.a;
            }
        }
        columns.push(Column { kind: ColumnKind::H, index: j, entries, size });
    }
    let arrangement = ColumnArrangement { n: data.n(), columns };
    assert_eq!(
        arrangement.sizes_partition(),
        data.top_orbit(),
        "column sizes must reproduce the top-orbit partition"
    );
    arrangement
}

/// The certificate produced by [`pipeline`]: the top-orbit partition, its
/// transpose, the witnessing column arrangement, the assumption verdict, and
/// a description of the partitions forced to vanish.
#[derive(Debug, Clone)]
pub struct TopOrbitCertificate {
    pub mu: Partition,
    pub mu_transpose: Partition,
    pub arrangement: ColumnArrangement,
    pub assumption: AssumptionReport,
    /// The vanishing half in words: which partitions carry no coefficient.
    pub vanishing_predicate: String,
}

impl TopOrbitCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "mu": self.mu.to_string(),
            "mu_transpose": self.mu_transpose.to_string(),
            "columns": self.arrangement.to_json(),
            "assumption": self.assumption.to_json(),
        })
    }
}

/// Runs the full certificate pipeline. Refuses (with the violated condition)
/// when the twist assumption fails, since the top-orbit statement is only
/// claimed under it.
pub fn pipeline(data: &IsobaricDatum) -> Result<TopOrbitCertificate, SpectrumError> {
    let assumption = assumption_check(data);
    if !assumption.pass {
        return Err(SpectrumError::AssumptionRefused(assumption));
    }
    let arrangement = arrange_columns(data);
    let mu = data.top_orbit();
    let mu_transpose = mu.transpose();
    let vanishing_predicate = format!(
        "no nonzero generalized coefficient attached to any partition λ of {} with some prefix \
         sum exceeding that of {} (λ bigger than or not related to it)",
        data.n(),
        mu
    );
    Ok(TopOrbitCertificate { mu, mu_transpose, arrangement, assumption, vanishing_predicate })
}

/// One determinant-character slot of the unramified local picture: cusp `i`
/// contributes `a` characters of `GL_b` determinants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviSlot {
    pub cusp: usize,
    pub copies: usize,
    pub size: usize,
}

/// Block sizes of the standard parabolic attached to `μ^t`, plus the
/// determinant-character slots per cusp — the combinatorial shape consumed by
/// the vanishing oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviInductionDescription {
    pub blocks: Vec<usize>,
    pub slots: Vec<LeviSlot>,
}

pub fn unramified_levi_datum(data: &IsobaricDatum) -> LeviInductionDescription {
    let blocks = data.top_orbit().transpose().parts().to_vec();
    let slots = data
        .cusps()
        .iter()
        .enumerate()
        .map(|(idx, c)| LeviSlot { cusp: idx, copies: c.a, size: c.b })
        .collect();
    LeviInductionDescription { blocks, slots }
}
