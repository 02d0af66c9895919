use crate::catcore::{Category, Morphism};
use crate::exactlin::{LinAlgError, Subspace};
use crate::{Error, Result};

use super::right::RightIdeal;

/// Which morphisms `h` may witness density.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DenseMode {
    /// `h` ranges over all morphisms, zero included. Every ideal is dense.
    Literal,
    /// `h` must be nonzero.
    Strict,
}

/// For `g: B -> C`, a morphism `h: D -> B` with `g ∘ h ∈ I(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseWitness {
    pub g: Morphism,
    pub h: Morphism,
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    pub dense: bool,
    pub mode: DenseMode,
    /// One entry per morphism `g` into the target, in enumeration order.
    pub witnesses: Vec<DenseWitness>,
    /// The first `g` without a witness.
    pub failure: Option<Morphism>,
}

/// Density of a right ideal into `C`: every `g: B -> C` lands in `I` after
/// precomposing with some `h: D -> B`.
///
/// For each `g` the admissible `h: D -> B` form the subspace
/// `{h : g ∘ h ∈ I(D)}`; a nonzero vector of it is preferred in both modes.
pub fn is_dense(cat: &Category, i: &RightIdeal, mode: DenseMode) -> Result<DensityReport> {
    if !cat.field().is_finite() {
        return Err(LinAlgError::InfiniteField.into());
    }
    let n = cat.num_objects();
    let c = i.target;
    let mut witnesses = Vec::new();
    for b in 0..n {
        for g in cat.morphisms(b, c)? {
            let mut found = None;
            for d in 0..n {
                let admissible: Subspace = i.parts[d].preimage_under(&cat.postcompose_matrix(&g, d))?;
                if let Some(coords) = admissible.basis_vectors().into_iter().next() {
                    found = Some(cat.morphism(d, b, coords)?);
                    break;
                }
            }
            let h = match (found, mode) {
                (Some(h), _) => h,
                (None, DenseMode::Literal) => cat.zero(b, b),
                (None, DenseMode::Strict) => {
                    return Ok(DensityReport {
                        dense: false,
                        mode,
                        witnesses,
                        failure: Some(g),
                    })
                }
            };
            witnesses.push(DenseWitness { g, h });
        }
    }
    Ok(DensityReport {
        dense: true,
        mode,
        witnesses,
        failure: None,
    })
}

/// Some `t` with `f ∘ t = x`, if one exists.
pub fn factor_through(cat: &Category, f: &Morphism, x: &Morphism) -> Result<Option<Morphism>> {
    if f.target != x.target {
        return Err(Error::TargetMismatch {
            expected: f.target,
            found: x.target,
        });
    }
    let post = cat.postcompose_matrix(f, x.source);
    match post.solve(&x.coords)? {
        Some(t) => Ok(Some(cat.morphism(x.source, f.source, t)?)),
        None => Ok(None),
    }
}
