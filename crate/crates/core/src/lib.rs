//! Finite presented preadditive categories and their module categories.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: exact scalars, matrices and canonical subspaces.
//! * [`catcore`]: quiver presentations compiled into Hom bases and
//!   composition tables, plus mesh-window and stable-tube generators.
//! * [`modfun`]: contravariant modules, natural transformations, quotients,
//!   duality and finite module universes.
//! * [`ideals`]: right and two-sided ideals, residuation, annihilators,
//!   trace submodules and density.
//! * [`torsion`]: linear and Gabriel filters, their module classes and the
//!   exhaustive checks relating the two.
//! * [`topo`]: the linear topology a filter induces on Hom sets.

pub mod catcore;
pub mod error;
pub mod exactlin;
pub mod ideals;
pub mod limits;
pub mod modfun;
pub mod topo;
pub mod torsion;

pub use error::{Error, Result};
pub use limits::Limits;
