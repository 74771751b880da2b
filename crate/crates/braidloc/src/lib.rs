//! Exact tools for unitary braid group representations.
//!
//! The crate is organized around a small tower of abstractions:
//!
//! - [`cyclo`]: exact arithmetic in cyclotomic fields, the scalar type for
//!   every exact computation here.
//! - [`matrix`]: dense square matrices over exact or floating scalars, with
//!   Kronecker/tensor helpers.
//! - [`yang_baxter`]: Yang-Baxter and generalized Yang-Baxter verification,
//!   projective-order probing of solutions.
//! - [`braid_rep`]: braid group representations, word evaluation, and
//!   finite-image detection by exact group closure.
//! - [`temperley_lieb`]: Temperley-Lieb relations in the image of an
//!   R-matrix, Jones-Wenzl projectors, and multiplicity arithmetic.
//! - [`fusion`]: fusion rings, Bratteli diagrams, Perron-Frobenius analysis,
//!   and the combinatorial localization obstruction.
//! - [`gaussian`]: extraspecial-type algebras, Gaussian braid
//!   representations, and their explicit localizations.
//! - [`report`]: machine-readable check reports shared by the CLI.

pub mod braid_rep;
pub mod builtins;
pub mod cyclo;
pub mod fusion;
pub mod gaussian;
pub mod matrix;
pub mod report;
pub mod temperley_lieb;
pub mod yang_baxter;
