//! Modules over a compiled category: contravariant functors into
//! finite-dimensional vector spaces.
//!
//! A [`Module`] stores one matrix per Hom basis element. Everything else in
//! this layer (maps, submodules, quotients, duals, universes) is plain linear
//! algebra on those matrices.

mod cyclic;
mod module;
mod ops;
mod universe;

pub use cyclic::{cyclic_decomposition, CyclicDecomposition, CyclicSummand};
pub use module::{Element, FunctorialityReport, FunctorialityViolation, Module, NatTrans, Submodule};
pub use ops::{
    coproduct, dual, dual_corepresentable, dual_over, find_isomorphism, hom_modules, is_isomorphic, quotient,
    representable, submodule_generated,
};
pub use universe::{
    enumerate_submodules, enumerate_submodules_bruteforce, enumerate_universe, is_injective_in, InjectivityReport,
    InjectivityWitness, Universe,
};

#[cfg(test)]
mod tests;
