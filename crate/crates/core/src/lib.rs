//! Torsion linking forms of rational homology spheres, Lagrangian
//! enumeration over small prime fields, and the triple linking obstruction
//! to embedding in the 4-sphere.

#![allow(clippy::needless_range_loop)]

pub mod error;
mod fp;
pub mod framing;
pub mod hantzsche;
pub mod intmatrix;
pub mod isotropic;
pub mod linking;
pub mod m0;
pub mod qmodz;
pub mod search;
pub mod snf;
pub mod tripleform;

pub use error::{Error, Result};
pub use hantzsche::{check_hantzsche, HantzscheVerdict};
pub use intmatrix::IntMatrix;
pub use isotropic::{
    census, enumerate_dual_pairs, enumerate_lagrangians, enumerate_subspaces,
    subspace_intersection_dim, Census, DualPair, Subspace,
};
pub use linking::{
    eval_linking, is_nondegenerate, linking_form_from_framing, FramedPresentation, GroupElement,
    LinkingForm, SignConvention, TorsionGroup,
};
pub use qmodz::QmodZ;
pub use search::{
    build_context, is_obstructed, scan_obstructed, verify_universal_vanishing, ScanBudget,
    ScanStrategy, SearchContext, SearchReport, UniversalReport, VerifyMode,
};
pub use snf::{smith_normal_form, SmithForm};
pub use tripleform::{
    column_triples, determinant_vector, triple_form_value, triple_linking_from_grope,
    vanishes_on_lagrangian, DeterminantVector, GropeData, ObstructionVector,
};
