//! Exact algebraic models of homotopy types with cells in dimensions 2–4.
//!
//! * [`group`] – free groups, free nil(2)-groups, finitely generated abelian
//!   groups, homomorphisms and `C ⊗ C`.
//! * [`crossed`] – pre-crossed and crossed modules, Peiffer commutators,
//!   3-dimensional crossed complexes and their homotopies.
//! * [`quadratic`] – quadratic and reduced quadratic modules, 4-dimensional
//!   reduced quadratic complexes, morphisms and the homotopy solver.
//! * [`sphere`] – the worked classification of self-maps of `S² × S²` that
//!   fix the diagonal.

pub mod crossed;
pub mod error;
pub mod group;
pub mod linalg;
pub mod quadratic;
pub mod report;
pub mod sphere;
pub mod system;

pub use error::{Error, Result};
pub use report::{CheckEntry, CheckReport, Sampling};
