//! Right ideals of representables, two-sided ideals and the operations the
//! filter layer is built on: residuation, annihilators, traces and density.
//!
//! A right ideal into `C` is stored as one subspace of `Hom(C', C)` per
//! object `C'`, in the coordinates of the category's Hom basis. It is the
//! same data as a submodule of the representable `C(-, C)`.

mod dense;
mod right;
mod two_sided;

pub use dense::{factor_through, is_dense, DenseMode, DenseWitness, DensityReport};
pub use right::{
    annihilator, enumerate_right_ideals, enumerate_right_ideals_bruteforce, ideal_intersect, ideal_sum, residuate,
    residuate_rel, right_ideal_closure, RightIdeal,
};
pub use two_sided::{annihilator_ideal, trace_submodule, two_sided_from_objects, TwoSidedIdeal};
