use crate::exactlin::{FieldElem, Matrix, Subspace};
use crate::ideals::{annihilator, RightIdeal};
use crate::Result;

use super::module::{Element, Module, NatTrans};
use super::ops::{coproduct, quotient, representable};

/// One summand `C(-, C) / Ann(x, -)` of the cyclic cover.
#[derive(Clone, Debug)]
pub struct CyclicSummand {
    pub object: usize,
    pub generator: Vec<FieldElem>,
    pub kernel: RightIdeal,
}

#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    pub summands: Vec<CyclicSummand>,
    /// The coproduct of the summands.
    pub cover: Module,
    /// The induced comparison map `cover -> M`.
    pub comparison: NatTrans,
    /// The comparison map is natural and objectwise onto.
    pub surjective: bool,
}

fn generators(m: &Module, c: usize) -> Result<Vec<Vec<FieldElem>>> {
    let d = m.dim(c);
    if m.field().is_finite() && d <= 2 {
        Ok(Subspace::full(m.field(), d)
            .vectors()?
            .into_iter()
            .filter(|v| v.iter().any(|e| !e.is_zero()))
            .collect())
    } else {
        Ok(Subspace::full(m.field(), d).basis_vectors())
    }
}

/// The family `(C, x, Ann(x, -))` and the map `∐ C(-,C)/Ann(x,-) -> M`
/// sending the class of `f` to `M(f)(x)`.
///
/// Generators are all nonzero vectors of `M(C)` when `dim M(C) <= 2` over a
/// finite field, otherwise basis vectors.
pub fn cyclic_decomposition(m: &Module) -> Result<CyclicDecomposition> {
    let cat = m.category();
    let n = cat.num_objects();
    let mut summands = Vec::new();
    let mut quotients = Vec::new();
    let mut maps: Vec<Vec<Matrix>> = Vec::new();
    for c in 0..n {
        for x in generators(m, c)? {
            let kernel = annihilator(m, &Element::new(c, x.clone()))?;
            let rep = representable(cat, c)?;
            let (q, _) = quotient(&rep, &kernel.to_submodule())?;
            // the quotient keeps the non-pivot basis paths of Ann(x,-)(B)
            let comps = (0..n)
                .map(|b| {
                    let cols: Vec<Vec<FieldElem>> = kernel.parts[b]
                        .complement_positions()
                        .into_iter()
                        .map(|p| m.action(b, c, p).apply(&x).expect("shape"))
                        .collect();
                    Matrix::from_columns(m.field(), m.dim(b), &cols)
                })
                .collect();
            maps.push(comps);
            quotients.push(q);
            summands.push(CyclicSummand {
                object: c,
                generator: x,
                kernel,
            });
        }
    }
    let (cover, _) = coproduct(cat, &quotients)?;
    let comps = (0..n)
        .map(|b| {
            maps.iter()
                .try_fold(Matrix::zeros(m.field(), m.dim(b), 0), |acc, parts| {
                    let mut rows = Vec::with_capacity(m.dim(b));
                    for r in 0..m.dim(b) {
                        let mut row = acc.row(r).to_vec();
                        row.extend_from_slice(parts[b].row(r));
                        rows.push(row);
                    }
                    Matrix::from_rows(m.field(), acc.cols() + parts[b].cols(), rows)
                })
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let comparison = NatTrans { comps };
    let surjective = comparison.is_natural(&cover, m) && comparison.is_epi();
    Ok(CyclicDecomposition {
        summands,
        cover,
        comparison,
        surjective,
    })
}
