//! The linear topology a filter induces on each Hom set.
//!
//! On `C(A,C)` the basic neighbourhoods of `f` are the cosets `f + I(A)`
//! with `I` in the filter at `C`. Every open set is then a union of cosets
//! of the smallest basic neighbourhood, so on small Hom sets the whole
//! topology can be listed.

use std::collections::HashMap;
use std::sync::Arc;

use crate::catcore::{Category, Morphism};
use crate::exactlin::{zero_vector, FieldElem, LinAlgError, Subspace};
use crate::torsion::FilterFamily;
use crate::{Limits, Result};

/// Basic neighbourhoods in `C(A,C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbhdBasis {
    pub a: usize,
    pub c: usize,
    /// `I(A)` for each base ideal `I` at `C`, then the meet, deduplicated.
    pub zero_basis: Vec<Subspace>,
}

impl NbhdBasis {
    /// The smallest basic neighbourhood of zero.
    pub fn smallest(&self) -> &Subspace {
        self.zero_basis.last().expect("the meet is always present")
    }

    pub fn is_discrete(&self) -> bool {
        self.smallest().is_zero()
    }

    pub fn is_indiscrete(&self) -> bool {
        self.zero_basis.iter().all(Subspace::is_full)
    }
}

pub fn neighborhoods(cat: &Category, f: &FilterFamily, a: usize, c: usize) -> Result<NbhdBasis> {
    if a >= cat.num_objects() {
        return Err(crate::Error::UnknownObject(a.to_string()));
    }
    if c >= f.num_objects() {
        return Err(crate::Error::UnknownObject(c.to_string()));
    }
    let mut zero_basis: Vec<Subspace> = Vec::new();
    for i in f.base(c) {
        let part = i.part(a).clone();
        if !zero_basis.contains(&part) {
            zero_basis.push(part);
        }
    }
    let meet = f.meet(c).part(a).clone();
    zero_basis.retain(|s| *s != meet);
    zero_basis.push(meet);
    Ok(NbhdBasis { a, c, zero_basis })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopoWitness {
    /// Two open sets whose intersection is not open; cosets as bitmasks.
    Intersection { left: u64, right: u64 },
    /// Two basic neighbourhoods with no basic neighbourhood inside both.
    BasisMeet { left: Subspace, right: Subspace },
    /// `u + v` leaves the neighbourhood `I(A)` it should stay in.
    Addition { u: Vec<FieldElem>, v: Vec<FieldElem> },
    /// `g2 ∘ f2` lies outside `g∘f + I(A)` although `f2` is near `f`
    /// and `g2` near `g`.
    Composition {
        f: Morphism,
        g: Morphism,
        f2: Morphism,
        g2: Morphism,
    },
    /// `open - shift` is not open.
    Translation { open: u64, shift: Vec<FieldElem> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(TopoWitness),
    NotChecked(String),
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn failed(&self) -> bool {
        matches!(self, Check::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Check::Pass => "pass",
            Check::Fail(_) => "fail",
            Check::NotChecked(_) => "not checked",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TopologyReport {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// (a): the open sets of `C(A,C)` form a topology.
    pub open_sets: Check,
    /// (b): addition on `C(A,C)` is continuous.
    pub addition: Check,
    /// (c): composition `C(A,B) × C(B,C) → C(A,C)` is continuous.
    pub composition: Check,
    pub translation: Check,
    /// Number of open sets, when they were listed.
    pub open_count: Option<usize>,
    /// Set when (a) or (c) fell back to checks on bases instead of points.
    pub basis_level: bool,
}

impl TopologyReport {
    pub fn passed(&self) -> bool {
        self.open_sets.passed() && self.addition.passed() && self.composition.passed() && !self.translation.failed()
    }
}

fn points(space: &Subspace) -> Result<Vec<Vec<FieldElem>>> {
    Ok(space.vectors()?)
}

fn add(x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn sub(x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

/// Cosets of the smallest basic neighbourhood, with the local criterion
/// for openness precomputed per coset and per basic neighbourhood.
struct CosetTable {
    reps: Vec<Vec<FieldElem>>,
    index: HashMap<Vec<FieldElem>, usize>,
    smallest: Subspace,
    /// `nbhd[k][v]`: cosets covered by `reps[k] + zero_basis[v]`.
    nbhd: Vec<Vec<u64>>,
}

impl CosetTable {
    fn build(hom: &Subspace, basis: &NbhdBasis) -> Result<CosetTable> {
        let smallest = basis.smallest().clone();
        let mut reps = Vec::new();
        let mut index = HashMap::new();
        for p in points(hom)? {
            let r = smallest.reduce(&p)?;
            if !index.contains_key(&r) {
                index.insert(r.clone(), reps.len());
                reps.push(r);
            }
        }
        let mut table = CosetTable {
            reps,
            index,
            smallest,
            nbhd: Vec::new(),
        };
        let mut nbhd = Vec::with_capacity(table.reps.len());
        for x in &table.reps {
            let mut row = Vec::with_capacity(basis.zero_basis.len());
            for v in &basis.zero_basis {
                let mut mask = 0u64;
                for u in points(v)? {
                    mask |= 1 << table.coset_of(&add(x, &u))?;
                }
                row.push(mask);
            }
            nbhd.push(row);
        }
        table.nbhd = nbhd;
        Ok(table)
    }

    fn coset_of(&self, v: &[FieldElem]) -> Result<usize, LinAlgError> {
        let r = self.smallest.reduce(v)?;
        Ok(self.index[&r])
    }

    fn len(&self) -> usize {
        self.reps.len()
    }

    fn is_open(&self, u: u64) -> bool {
        (0..self.len())
            .filter(|k| u >> k & 1 == 1)
            .all(|k| self.nbhd[k].iter().any(|&m| m & !u == 0))
    }

    fn translate(&self, u: u64, shift: &[FieldElem]) -> Result<u64, LinAlgError> {
        let mut out = 0u64;
        for k in (0..self.len()).filter(|k| u >> k & 1 == 1) {
            out |= 1 << self.coset_of(&sub(&self.reps[k], shift))?;
        }
        Ok(out)
    }
}

/// Lists the open sets and checks closure under intersections and
/// translation. Unions are closed by the local definition of openness.
fn scan_open_sets(table: &CosetTable) -> Result<(Check, Check, usize)> {
    let n = table.len();
    let opens: Vec<u64> = (0..1u64 << n).filter(|&u| table.is_open(u)).collect();
    let full = (1u64 << n) - 1;
    let is_open = |u: u64| opens.binary_search(&u).is_ok();
    let mut open_sets = Check::Pass;
    if !is_open(0) || !is_open(full) {
        open_sets = Check::Fail(TopoWitness::Intersection {
            left: full,
            right: full,
        });
    }
    'outer: for (x, &u) in opens.iter().enumerate() {
        for &v in &opens[x + 1..] {
            if !is_open(u & v) {
                open_sets = Check::Fail(TopoWitness::Intersection { left: u, right: v });
                break 'outer;
            }
        }
    }
    let mut translation = Check::Pass;
    'shift: for &u in &opens {
        for shift in &table.reps {
            if !is_open(table.translate(u, shift)?) {
                translation = Check::Fail(TopoWitness::Translation {
                    open: u,
                    shift: shift.clone(),
                });
                break 'shift;
            }
        }
    }
    Ok((open_sets, translation, opens.len()))
}

/// Some basic neighbourhood lies inside any two.
fn basis_meets(basis: &NbhdBasis) -> Result<Check> {
    for l in &basis.zero_basis {
        for r in &basis.zero_basis {
            let both = l.intersect(r)?;
            let mut found = false;
            for v in &basis.zero_basis {
                if v.is_subspace_of(&both)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(Check::Fail(TopoWitness::BasisMeet {
                    left: l.clone(),
                    right: r.clone(),
                }));
            }
        }
    }
    Ok(Check::Pass)
}

/// `(f + u) + (g + v) - (f + g)` stays in `I(A)` for `u, v ∈ I(A)`; linear
/// in every argument, so bases suffice.
fn check_addition(basis: &NbhdBasis) -> Result<Check> {
    for v in &basis.zero_basis {
        let vecs = v.basis_vectors();
        for x in &vecs {
            for y in &vecs {
                if !v.contains_vector(&add(x, y))? {
                    return Ok(Check::Fail(TopoWitness::Addition {
                        u: x.clone(),
                        v: y.clone(),
                    }));
                }
            }
        }
    }
    Ok(Check::Pass)
}

fn morphism(a: usize, b: usize, coords: Vec<FieldElem>) -> Morphism {
    Morphism {
        source: a,
        target: b,
        coords,
    }
}

/// Continuity of `(f, g) ↦ g∘f` with neighbourhoods `f + F_B(A)` and
/// `g + F_C(B)`: the smallest ones are the meets, and the target
/// `g∘f + I(A)` is hardest at the meet too.
fn check_composition(
    cat: &Category,
    f: &FilterFamily,
    (a, b, c): (usize, usize, usize),
    limits: Limits,
) -> Result<(Check, bool)> {
    let field = cat.field();
    let hom_ab = Subspace::full(field, cat.hom_dim(a, b));
    let hom_bc = Subspace::full(field, cat.hom_dim(b, c));
    let near_f = f.meet(b).part(a);
    let near_g = f.meet(c).part(b);
    let target = f.meet(c).part(a);
    let count = [&hom_ab, &hom_bc, near_f, near_g]
        .iter()
        .map(|s| s.cardinality().unwrap_or(u64::MAX))
        .fold(1u64, u64::saturating_mul);
    let landed = |g2: &Morphism, f2: &Morphism, gf: &Morphism| -> Result<bool> {
        let d = sub(&cat.compose(g2, f2)?.coords, &gf.coords);
        Ok(target.contains_vector(&d)?)
    };
    if count <= limits.ceiling {
        let dfs = points(near_f)?;
        let dgs = points(near_g)?;
        for fc in points(&hom_ab)? {
            let fm = morphism(a, b, fc);
            for gc in points(&hom_bc)? {
                let gm = morphism(b, c, gc);
                let gf = cat.compose(&gm, &fm)?;
                for df in &dfs {
                    let f2 = morphism(a, b, add(&fm.coords, df));
                    for dg in &dgs {
                        let g2 = morphism(b, c, add(&gm.coords, dg));
                        if !landed(&g2, &f2, &gf)? {
                            return Ok((Check::Fail(TopoWitness::Composition { f: fm, g: gm, f2, g2 }), false));
                        }
                    }
                }
            }
        }
        return Ok((Check::Pass, false));
    }
    // g2∘f2 - g∘f = g∘δf + δg∘f + δg∘δf, each term multilinear
    let zero_f = morphism(a, b, zero_vector(field, cat.hom_dim(a, b)));
    let zero_g = morphism(b, c, zero_vector(field, cat.hom_dim(b, c)));
    let zero_gf = cat.zero(a, c);
    let dfs: Vec<Morphism> = near_f.basis_vectors().into_iter().map(|v| morphism(a, b, v)).collect();
    let dgs: Vec<Morphism> = near_g.basis_vectors().into_iter().map(|v| morphism(b, c, v)).collect();
    let fs: Vec<Morphism> = hom_ab.basis_vectors().into_iter().map(|v| morphism(a, b, v)).collect();
    let gs: Vec<Morphism> = hom_bc.basis_vectors().into_iter().map(|v| morphism(b, c, v)).collect();
    let fail = |fm: &Morphism, gm: &Morphism, f2: &Morphism, g2: &Morphism| {
        Ok((
            Check::Fail(TopoWitness::Composition {
                f: fm.clone(),
                g: gm.clone(),
                f2: f2.clone(),
                g2: g2.clone(),
            }),
            true,
        ))
    };
    for gm in &gs {
        for df in &dfs {
            if !landed(gm, df, &zero_gf)? {
                return fail(&zero_f, gm, df, gm);
            }
        }
    }
    for fm in &fs {
        for dg in &dgs {
            if !landed(dg, fm, &zero_gf)? {
                return fail(fm, &zero_g, fm, dg);
            }
        }
    }
    for df in &dfs {
        for dg in &dgs {
            if !landed(dg, df, &zero_gf)? {
                return fail(&zero_f, &zero_g, df, dg);
            }
        }
    }
    Ok((Check::Pass, true))
}

/// Checks (a) and translation invariance on `C(A,C)`, (b) on `C(A,C)` and
/// (c) on `C(A,B) × C(B,C)`.
pub fn verify_topology(
    cat: &Arc<Category>,
    f: &FilterFamily,
    (a, b, c): (usize, usize, usize),
    limits: Limits,
) -> Result<TopologyReport> {
    if !cat.field().is_finite() {
        return Err(LinAlgError::InfiniteField.into());
    }
    if f.num_objects() != cat.num_objects() {
        return Err(crate::Error::CategoryMismatch);
    }
    if b >= cat.num_objects() {
        return Err(crate::Error::UnknownObject(b.to_string()));
    }
    let basis = neighborhoods(cat, f, a, c)?;
    let hom = Subspace::full(cat.field(), cat.hom_dim(a, c));
    let cosets = hom.cardinality().unwrap_or(u64::MAX) / basis.smallest().cardinality().unwrap_or(1);
    let mut basis_level = false;
    let (open_sets, translation, open_count) = if cosets <= u64::from(limits.open_set_cosets.min(63)) {
        let table = CosetTable::build(&hom, &basis)?;
        let (o, t, n) = scan_open_sets(&table)?;
        (o, t, Some(n))
    } else {
        basis_level = true;
        (
            basis_meets(&basis)?,
            Check::NotChecked(format!("{cosets} cosets exceed the open-set gate")),
            None,
        )
    };
    let addition = check_addition(&basis)?;
    let (composition, fell_back) = check_composition(cat, f, (a, b, c), limits)?;
    Ok(TopologyReport {
        a,
        b,
        c,
        open_sets,
        addition,
        composition,
        translation,
        open_count,
        basis_level: basis_level || fell_back,
    })
}

/// [`verify_topology`] on every triple of objects, `C` varying fastest.
pub fn verify_topology_all(cat: &Arc<Category>, f: &FilterFamily, limits: Limits) -> Result<Vec<TopologyReport>> {
    let n = cat.num_objects();
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                out.push(verify_topology(cat, f, (a, b, c), limits)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
