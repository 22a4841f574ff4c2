//! Exact combinatorics of van der Waerden complexes.
//!
//! - [`complex`]: faces, facet-list complexes, links, deletions, Alexander duals.
//! - [`vdw`]: the complexes `vdW(n, k)`, their closed-form classification and
//!   brute-force intersection-bound checks.
//! - [`decomposability`]: vertex decomposability and shellability with certificates.
//! - [`homology`]: reduced homology over ℚ and `F_p`, Cohen–Macaulay test.
//! - [`cm_algebra`]: squarefree monomial ideals, Taylor syzygies and linear presentation.

pub mod cm_algebra;
pub mod complex;
pub mod decomposability;
pub mod homology;
pub mod vdw;

pub use cm_algebra::{
    dual_ideal, is_linearly_presented, nonlinear_obstruction_vdw, taylor_syzygies, vdw_dual_ideal,
    AlgebraError, LinearPresentation, MonomialIdeal, ObstructionWitness, SquarefreeMonomial,
    TaylorSyzygy,
};
pub use complex::{ComplexError, Face, SimplicialComplex};
pub use decomposability::{
    is_shellable, is_vertex_decomposable, verify_shelling, DecompError, SheddingTree,
    ShellabilityOutcome, ShellingOrder, DEFAULT_SHELLING_BUDGET,
};
pub use homology::{
    is_cohen_macaulay, reduced_homology, CmOutcome, Field, HomologyError, HomologyProfile,
};
pub use vdw::{
    check_max_increment_bound, check_odd_increment_bound, classify_closed_form, vdw_complex,
    vdw_facets, Classification, IntersectionBoundCheck, ProgressionFacet, VdwError, VdwParams,
};
