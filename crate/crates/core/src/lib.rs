//! Exact computational toolkit for top Fourier-coefficient partitions of
//! representations of GL(n) induced from Speh data.
//!
//! Given isobaric data `{(a_i, b_i, s_i)}` — cuspidal ranks, Speh lengths and
//! rational twist real parts — the crate computes the top-orbit partition
//! `[a_1^{b_1}] + … + [a_r^{b_r}]`, constructs the Lie-theoretic objects that
//! realize the corresponding Fourier coefficients (Whittaker pairs, gradings,
//! nilradicals, character supports), and verifies both halves of the mechanism
//! behind that partition being the top one:
//!
//! * the non-vanishing half, by arranging the Speh exponent ladders into
//!   columns whose sizes reproduce the top-orbit partition and whose inducing
//!   data stays generic ([`spectrum`]);
//! * the vanishing half, by exhaustive root-theoretic checks over Weyl-group
//!   elements and by a finite-field double-coset Hom-dimension oracle
//!   ([`vanishing`]).
//!
//! All arithmetic is exact: partitions and block data are integers, matrices
//! have `BigRational` entries, and the finite oracle works over F_q. No
//! floating point appears anywhere.

pub mod gl;
pub mod linalg;
pub mod partition;
pub mod spectrum;
pub mod vanishing;
pub mod whittaker;

pub use linalg::{rat, Matrix, Rat};
pub use partition::{Dominance, Partition};
