//! Triangulated 3-manifolds and the normal surfaces in them.
//!
//! The crate covers gluing tables and their skeleta ([`triangulation`],
//! [`skeleton`], [`cone`]), normal coordinates and PL-area ([`normal`]), the
//! 1→4 cone refinement with push-forward and pull-back of normal coordinates
//! ([`refine`]), prism triangulations of thickened surfaces ([`prism`]), a
//! bounded exhaustive enumerator of admissible vectors ([`enumerate`]) and
//! verification reports tying them together ([`verify`]).

pub mod cone;
pub mod enumerate;
pub mod normal;
pub mod perm;
pub mod prism;
pub mod refine;
pub mod skeleton;
pub mod triangulation;
pub mod verify;
mod union_find;

pub use cone::{cone_all, cone_boundary, ConeError};
pub use enumerate::{
    enumerate_admissible, enumerate_connected, format_vectors, parse_vectors, EnumerationError,
    EnumerationQuery,
};
pub use normal::{
    components, is_admissible, is_vertex_linking, matching_equations, supported_in, weight,
    Component, DiskType, MatchingEquation, NormalError, NormalVector, PLArea,
};
pub use perm::Perm4;
pub use prism::{
    build_heavy_exterior, build_prism, EdgeGluing, HeavyExterior, PrismComplex, PrismError,
    SurfaceError, SurfaceTriangulation,
};
pub use refine::{
    refine_once, refine_scaled, weight_growth, Pattern, Pullback, RefineError, RefinementMap,
    ScalingFunction, WeightGrowth,
};
pub use skeleton::{boundary_components, BoundaryComponent, Skeleton};
pub use triangulation::{Gluing, ParseError, Triangulation, Violation};
pub use verify::{
    verify_lemma_weights, verify_outside, verify_prism, verify_theorem1, VerificationReport,
    VerifyError,
};
