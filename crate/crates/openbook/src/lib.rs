//! Toolkit for positive factorizations of planar open book monodromies.
//!
//! The page is a disk with holes; mapping classes rel boundary are tracked as
//! free-group automorphisms with framing data. On top of that the crate
//! computes the multiplicity invariants of a factorization, enumerates every
//! hole-set configuration compatible with a target invariant table, and runs
//! the exact integer homology of the associated Lefschetz fibrations and
//! boundary 3-manifolds through Smith normal form.
//!
//! Modules:
//!
//! * [`page`] — the planar page, curve classes, factorizations, canonical
//!   monodromy data and the JSON factorization format;
//! * [`mcg`] — Dehn twist calculus: twist, compose, realize, equality,
//!   Hurwitz moves;
//! * [`invariants`] — multiplicity and joint-multiplicity tables;
//! * [`search`] — exhaustive configuration enumeration against a target
//!   table, with the classification report;
//! * [`matrix`] — exact integer matrices and Smith normal form;
//! * [`homology`] — fibration homology, group abelianization, and the
//!   coefficient homology solver for the boundary extension problem.

pub mod homology;
pub mod invariants;
pub mod matrix;
pub mod mcg;
pub mod page;
pub mod search;
pub mod word;

pub use homology::{
    abelianization, extension_h2, fibration_homology, solve_extension, st_star_presentation,
    surface_homology_mod_m, AbelianGroup, GroupPresentation,
};
pub use invariants::{invariant_table, reference_table, InvariantTable};
pub use matrix::{smith_normal_form, IntMatrix, SmithNormalForm};
pub use mcg::{
    compose, equal, hurwitz_move, realize, twist, twist_inverse, MappingClassRep, McgError,
};
pub use page::{
    boundary_parallel_curve, canonical_monodromy, CurveClass, Factorization, Page, PageError,
};
pub use search::{
    check_configuration, classify, enumerate_configurations, ClassifyReport, Configuration,
    SearchError, SearchOptions,
};
pub use word::FreeWord;
