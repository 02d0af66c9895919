use std::sync::Arc;

use crate::catcore::Category;
use crate::exactlin::Subspace;
use crate::ideals::{annihilator, enumerate_right_ideals, RightIdeal};
use crate::modfun::{coproduct, enumerate_submodules, quotient, Element, Module, Submodule, Universe};
use crate::{Error, Result};

use super::filter::{filter_member, FilterFamily};
use super::sigma::{sigma_member, SigmaVerdict};

/// A class of modules, decidable on every member of a universe.
#[derive(Clone, Debug)]
pub enum ModuleClassSpec {
    /// `T_F`: all `M` with `Ann(x,-) ∈ F_C` for every `x ∈ M(C)`.
    FilterInduced(FilterFamily),
    /// `{M : M(C) = 0 for the listed objects}`.
    VanishingAt(Vec<usize>),
    /// `σ[U]`.
    SigmaOf(Module),
    /// The isomorphism classes of the listed universe members.
    Extensional(Vec<usize>),
}

/// The first basis vector whose annihilator is not in the filter.
pub fn torsion_witness(f: &FilterFamily, m: &Module) -> Result<Option<Element>> {
    for c in 0..m.category().num_objects() {
        for i in 0..m.dim(c) {
            let x = Element::basis(m, c, i);
            if !filter_member(f, &annihilator(m, &x)?)? {
                return Ok(Some(x));
            }
        }
    }
    Ok(None)
}

/// `M ∈ T_F`, checked on basis vectors: `Ann(x+y,-) ⊇ Ann(x,-) ∩ Ann(y,-)`
/// and `Ann(λx,-) ⊇ Ann(x,-)` make that enough.
pub fn torsion_member(f: &FilterFamily, m: &Module) -> Result<bool> {
    Ok(torsion_witness(f, m)?.is_none())
}

/// `M ∈ T_F` by the definition, over every vector (finite fields).
pub fn torsion_member_all_vectors(f: &FilterFamily, m: &Module) -> Result<bool> {
    for c in 0..m.category().num_objects() {
        for v in Subspace::full(m.field(), m.dim(c)).vectors()? {
            if !filter_member(f, &annihilator(m, &Element::new(c, v))?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn class_contains(universe: &Universe, cls: &ModuleClassSpec, m: &Module) -> Result<bool> {
    match cls {
        ModuleClassSpec::FilterInduced(f) => torsion_member(f, m),
        ModuleClassSpec::VanishingAt(objs) => Ok(objs.iter().all(|&o| m.dim(o) == 0)),
        ModuleClassSpec::SigmaOf(u) => match sigma_member(u, m, universe.limits())? {
            SigmaVerdict::Member { .. } => Ok(true),
            SigmaVerdict::NonMember { .. } => Ok(false),
            SigmaVerdict::Exhausted(why) => Err(Error::Undecidable(why)),
        },
        ModuleClassSpec::Extensional(members) => match universe.index_of(m)? {
            Some(i) => Ok(members.contains(&i)),
            None => Err(Error::Undecidable(format!(
                "module with dims {:?} lies outside the universe",
                m.dims()
            ))),
        },
    }
}

/// Indices of the universe members in the class.
pub fn class_members(universe: &Universe, cls: &ModuleClassSpec) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, m) in universe.iter().enumerate() {
        if class_contains(universe, cls, m)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// `F_T`: at each `C`, the ideals `I` with `C(-,C)/I` in the class. The
/// result is returned through its minimal members and must be a filter.
pub fn filter_from_class(universe: &Universe, cls: &ModuleClassSpec) -> Result<FilterFamily> {
    let cat = universe.category();
    let mut base = Vec::with_capacity(cat.num_objects());
    for c in 0..cat.num_objects() {
        let ideals = enumerate_right_ideals(cat, c, universe.limits())?;
        let mut members = Vec::new();
        for i in &ideals {
            if class_contains(universe, cls, &i.quotient_module(cat)?)? {
                members.push(i.clone());
            }
        }
        let minimal: Vec<RightIdeal> = members
            .iter()
            .filter(|i| !members.iter().any(|j| j != *i && j.is_contained_in(i).unwrap_or(false)))
            .cloned()
            .collect();
        if minimal.len() != 1 {
            return Err(Error::NotAFilter(format!(
                "at {}: {} minimal ideals with quotient in the class",
                cat.object_name(c),
                minimal.len()
            )));
        }
        for i in &ideals {
            let above = minimal[0].is_contained_in(i)?;
            if above != members.contains(i) {
                return Err(Error::NotAFilter(format!(
                    "at {}: {} contains the meet but its quotient is outside the class",
                    cat.object_name(c),
                    i.display(cat)
                )));
            }
        }
        base.push(minimal);
    }
    FilterFamily::new(cat, base)
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    /// Ideals on which `F` and `F_{T_F}` disagree.
    pub ideal_mismatches: Vec<RightIdeal>,
    /// Universe members on which `T_F` and `T_{F_{T_F}}` disagree.
    pub class_mismatches: Vec<usize>,
    pub ideals_checked: usize,
    /// Set when `F_{T_F}` could not be formed.
    pub error: Option<String>,
}

impl RoundtripReport {
    pub fn exact(&self) -> bool {
        self.error.is_none() && self.ideal_mismatches.is_empty() && self.class_mismatches.is_empty()
    }
}

/// `F ↦ T_F ↦ F_{T_F}` compared on every ideal, and `T_F ↦ F_{T_F} ↦ T'`
/// compared on every universe member.
pub fn roundtrip_filter(universe: &Universe, f: &FilterFamily) -> Result<RoundtripReport> {
    let cat = universe.category();
    let torsion = class_members(universe, &ModuleClassSpec::FilterInduced(f.clone()))?;
    let mut report = RoundtripReport {
        ideal_mismatches: Vec::new(),
        class_mismatches: Vec::new(),
        ideals_checked: 0,
        error: None,
    };
    let back = match filter_from_class(universe, &ModuleClassSpec::FilterInduced(f.clone())) {
        Ok(b) => b,
        Err(Error::NotAFilter(why)) => {
            report.error = Some(why);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    for c in 0..cat.num_objects() {
        for i in enumerate_right_ideals(cat, c, universe.limits())? {
            report.ideals_checked += 1;
            if filter_member(f, &i)? != filter_member(&back, &i)? {
                report.ideal_mismatches.push(i);
            }
        }
    }
    let from_class = match filter_from_class(universe, &ModuleClassSpec::Extensional(torsion.clone())) {
        Ok(b) => b,
        Err(Error::NotAFilter(why)) => {
            report.error = Some(why);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    for (i, m) in universe.iter().enumerate() {
        if torsion.contains(&i) != torsion_member(&from_class, m)? {
            report.class_mismatches.push(i);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureFailure {
    Subobject { parent: usize, submodule: Submodule },
    Quotient { parent: usize, submodule: Submodule },
    Coproduct { left: usize, right: usize },
    Extension { parent: usize, submodule: Submodule },
}

#[derive(Clone, Debug, Default)]
pub struct ClosureCheck {
    pub checked: usize,
    pub failure: Option<ClosureFailure>,
}

impl ClosureCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> ClosureFailure) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(failure());
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub subobjects: ClosureCheck,
    pub quotients: ClosureCheck,
    pub coproducts: ClosureCheck,
    pub extensions: ClosureCheck,
    /// Pairs whose direct sum exceeds the universe bound.
    pub coproducts_skipped: usize,
}

impl ClosureReport {
    pub fn hereditary_pretorsion(&self) -> bool {
        self.subobjects.passed() && self.quotients.passed() && self.coproducts.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.hereditary_pretorsion() && self.extensions.passed()
    }
}

/// Tests closure of a class under submodules, quotients, pairwise direct
/// sums and extensions, over every member of the universe.
pub fn closure_report(universe: &Universe, cls: &ModuleClassSpec) -> Result<ClosureReport> {
    let cat: &Arc<Category> = universe.category();
    let members = class_members(universe, cls)?;
    let mut report = ClosureReport::default();
    for (li, l) in universe.iter().enumerate() {
        let l_in = members.contains(&li);
        for k in enumerate_submodules(l, universe.limits())? {
            let (kmod, _) = k.to_module(l)?;
            let (q, _) = quotient(l, &k)?;
            let k_in = class_contains(universe, cls, &kmod)?;
            let q_in = class_contains(universe, cls, &q)?;
            if l_in {
                report.subobjects.record(k_in, || ClosureFailure::Subobject {
                    parent: li,
                    submodule: k.clone(),
                });
                report.quotients.record(q_in, || ClosureFailure::Quotient {
                    parent: li,
                    submodule: k.clone(),
                });
            }
            if k_in && q_in {
                report.extensions.record(l_in, || ClosureFailure::Extension {
                    parent: li,
                    submodule: k.clone(),
                });
            }
        }
    }
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x..] {
            let (sum, _) = coproduct(cat, &[universe.get(i).clone(), universe.get(j).clone()])?;
            if !universe.fits(&sum) {
                report.coproducts_skipped += 1;
                continue;
            }
            let ok = class_contains(universe, cls, &sum)?;
            report
                .coproducts
                .record(ok, || ClosureFailure::Coproduct { left: i, right: j });
        }
    }
    Ok(report)
}
