use std::sync::Arc;

use crate::catcore::Category;
use crate::ideals::{enumerate_right_ideals, is_dense, DenseMode, RightIdeal};
use crate::{Limits, Result};

use super::filter::{check_axioms, filter_member, AxiomReport, FilterFamily};

#[derive(Clone, Debug)]
pub struct DenseFilterReport {
    pub mode: DenseMode,
    /// The dense ideals into each object.
    pub dense: Vec<Vec<RightIdeal>>,
    /// Minimal dense ideals as a base.
    pub family: FilterFamily,
    /// The dense ideals are exactly the ideals above the base meet.
    pub matches_family: bool,
    pub axioms: AxiomReport,
}

/// All dense ideals, presented through their minimal elements, with the
/// axioms of the resulting family.
pub fn dense_filter(cat: &Arc<Category>, mode: DenseMode, limits: Limits) -> Result<DenseFilterReport> {
    let mut dense = Vec::with_capacity(cat.num_objects());
    let mut base = Vec::with_capacity(cat.num_objects());
    for c in 0..cat.num_objects() {
        let mut members = Vec::new();
        for i in enumerate_right_ideals(cat, c, limits)? {
            if is_dense(cat, &i, mode)?.dense {
                members.push(i);
            }
        }
        let minimal: Vec<RightIdeal> = members
            .iter()
            .filter(|i| !members.iter().any(|j| j != *i && j.is_contained_in(i).unwrap_or(false)))
            .cloned()
            .collect();
        dense.push(members);
        base.push(minimal);
    }
    let family = FilterFamily::new(cat, base)?;
    let mut matches_family = true;
    for c in 0..cat.num_objects() {
        for i in enumerate_right_ideals(cat, c, limits)? {
            if filter_member(&family, &i)? != dense[c].contains(&i) {
                matches_family = false;
            }
        }
    }
    let axioms = check_axioms(cat, &family, limits)?;
    Ok(DenseFilterReport {
        mode,
        dense,
        family,
        matches_family,
        axioms,
    })
}
