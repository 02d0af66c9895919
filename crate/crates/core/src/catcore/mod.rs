//! Finite presented preadditive categories.
//!
//! A [`CategoryPresentation`] (quiver, relations, nilpotency bound) compiles
//! into a [`Category`]: per pair of objects an ordered basis of residue
//! classes of paths, and a composition table on basis elements.

mod category;
mod generators;
mod presentation;

pub use category::{compile_quiver, compile_quiver_with, Arrow, Category, LawViolation, Morphism, Path};
pub use generators::{gen_mesh_window, gen_stable_tube, tube_mouth, GeneratedCategory};
pub use presentation::{ArrowDecl, CategoryPresentation, PathWord, Relation, RelationTerm};
