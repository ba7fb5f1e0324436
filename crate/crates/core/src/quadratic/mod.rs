mod complex;
mod homotopy;
mod module;

pub use complex::{qcm_check, QCMorphism, ReducedQuadraticComplex4, UnderComplex};
pub use homotopy::{
    alpha2_extend, alpha2_fold_word, rq_homotopic, rq_search_homotopy, verify_homotopy, HomotopyDecision,
    Obstruction, QCHomotopy, SolveOptions, Verdict,
};
pub use module::{QuadraticModule, ReducedQuadraticModule};
