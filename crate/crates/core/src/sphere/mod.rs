//! Self-maps of `S²×S²` fixing the diagonal: the sphere `𝒟`, the cylinder
//! complex `Q` under it, retractions `Q → 𝒟` up to homotopy, and the monoid
//! `M̄` of self-maps.

mod count;
mod monoid;
mod retractions;
mod structures;

pub use count::{assemble_selfmap_count, axiom_manifest, Axiom, CountDerivation};
pub use monoid::{
    mbar_check_structure, mbar_compose, mbar_elements, mbar_units, monoid_m_table, ExtMonoidElement, M, MONOID_TABLE,
    V,
};
pub use retractions::{
    classify_retractions, enumerate_retractions, solve_homology_constraints, ClassMember, Classification,
    HomologyConstraints, HomologyType, Retraction, RetractionClass, RetractionKey, Separation,
};
pub use structures::{
    build_cylinder_q, build_sphere_d, omega_symbol, retraction_candidate, CylinderQ, SphereD, CYLINDER_RANK, E3,
    E3_BOUNDARY,
};
