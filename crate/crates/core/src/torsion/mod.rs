//! Filters of right ideals, the module classes they induce, and the
//! exhaustive checks tying the two together on a finite universe.
//!
//! Every lattice of right ideals here is finite, so a family closed under
//! supersets and finite meets is principal. A [`FilterFamily`] keeps its
//! base lists and the meet at each object; membership is containment of
//! that meet.

mod classes;
mod dense;
mod filter;
mod sigma;

pub use classes::{
    class_contains, class_members, closure_report, filter_from_class, roundtrip_filter, torsion_member,
    torsion_member_all_vectors, torsion_witness, ClosureCheck, ClosureFailure, ClosureReport, ModuleClassSpec,
    RoundtripReport,
};
pub use dense::{dense_filter, DenseFilterReport};
pub use filter::{
    check_axioms, enumerate_filters, filter_member, vanishing_filter, AxiomCounterexample, AxiomReport, FilterFamily,
    Verdict, T1_T2_NOTE, T4_READING,
};
pub use sigma::{
    cogenerator_check, ideal_generator, sigma_ideal_check, sigma_member, CogeneratorReport, SigmaIdealReport,
    SigmaVerdict,
};

#[cfg(test)]
mod tests;
