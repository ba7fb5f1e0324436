//! Pre-crossed and crossed modules, Peiffer commutators and 3-dimensional
//! crossed complexes.

mod action;
mod complex;
mod module;

pub use action::{ActionTable, GroupAction};
pub use complex::{xc3_homotopic, xc3_verify_homotopy, CrossedComplex3, Xc3Homotopy, Xc3Morphism};
pub use module::PreCrossedModule;
pub(crate) use module::check_action as check_action_into;
