use crate::catcore::Morphism;
use crate::exactlin::{FieldElem, Matrix};
use crate::ideals::{annihilator_ideal, trace_submodule, TwoSidedIdeal};
use crate::modfun::{coproduct, hom_modules, is_injective_in, quotient, Module, NatTrans, Submodule, Universe};
use crate::{Error, Limits, Result};

use super::classes::torsion_member;
use super::filter::FilterFamily;

#[derive(Clone, Debug)]
pub enum SigmaVerdict {
    /// `N ↪ U^copies / kernel`, with the embedding.
    Member {
        copies: usize,
        kernel: Submodule,
        quotient: Module,
        embedding: NatTrans,
    },
    /// A morphism killed by `U` but not by `N`.
    NonMember { killer: Morphism },
    /// The construction would exceed the configured ceiling.
    Exhausted(String),
}

impl SigmaVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, SigmaVerdict::Member { .. })
    }
}

/// Decides `N ∈ σ[U]` exactly.
///
/// With `x_j` running over basis vectors of `N(C_j)` and `u_1..u_d` a basis
/// of `U(C_j)`, the element `y_j = (u_1, .., u_d)` of `U^d(C_j)` generates a
/// copy of `C(-,C_j)/Ann(U)(-,C_j)`. Sending `y_j ↦ x_j` is well defined
/// exactly when `Ann(U)` kills `N`, and then embeds `N` in `U^k / K` with
/// `K` the kernel of that assignment.
pub fn sigma_member(u: &Module, n: &Module, limits: Limits) -> Result<SigmaVerdict> {
    if !u.same_category(n) {
        return Err(Error::CategoryMismatch);
    }
    let cat = n.category();
    let objs = cat.num_objects();
    let field = n.field();
    // one generator per basis vector of N, one block of dim U(C_j) copies each
    let gens: Vec<(usize, usize)> = (0..objs).flat_map(|c| (0..n.dim(c)).map(move |i| (c, i))).collect();
    let copies: usize = gens.iter().map(|&(c, _)| u.dim(c)).sum();
    let estimate = (copies as u64).saturating_mul(u.total_dim() as u64);
    if let Err(Error::CeilingExceeded {
        what,
        estimate,
        ceiling,
    }) = limits.check("sigma embedding", estimate)
    {
        return Ok(SigmaVerdict::Exhausted(format!(
            "{what}: {estimate} above ceiling {ceiling}"
        )));
    }
    let power = coproduct(cat, &vec![u.clone(); copies])?.0;
    let mut block_start = Vec::with_capacity(gens.len());
    let mut acc = 0;
    for &(c, _) in &gens {
        block_start.push(acc);
        acc += u.dim(c);
    }
    // A: coefficient (j, f) ↦ U^k(f) y_j; B: (j, f) ↦ N(f) x_j
    let mut spread_a = Vec::with_capacity(objs);
    let mut spread_b = Vec::with_capacity(objs);
    for b in 0..objs {
        let mut cols_a: Vec<Vec<FieldElem>> = Vec::new();
        let mut cols_b: Vec<Vec<FieldElem>> = Vec::new();
        for (j, &(c, xi)) in gens.iter().enumerate() {
            for fi in 0..cat.hom_dim(b, c) {
                let ua = u.action(b, c, fi);
                let mut col = vec![field.zero(); power.dim(b)];
                for l in 0..u.dim(c) {
                    let copy = block_start[j] + l;
                    for r in 0..u.dim(b) {
                        col[copy * u.dim(b) + r] = ua.get(r, l).clone();
                    }
                }
                cols_a.push(col);
                cols_b.push(n.action(b, c, fi).column(xi));
            }
        }
        spread_a.push(Matrix::from_columns(field, power.dim(b), &cols_a));
        spread_b.push(Matrix::from_columns(field, n.dim(b), &cols_b));
    }
    for b in 0..objs {
        let ker_a = spread_a[b].kernel();
        let ker_b = spread_b[b].kernel();
        if !ker_a.is_subspace_of(&ker_b)? {
            return Ok(SigmaVerdict::NonMember {
                killer: find_killer(u, n)?,
            });
        }
    }
    let kernel = Submodule {
        parts: (0..objs)
            .map(|b| spread_b[b].kernel().image_under(&spread_a[b]))
            .collect::<std::result::Result<_, _>>()?,
    };
    let (target, proj) = quotient(&power, &kernel)?;
    let comps = (0..objs)
        .map(|b| {
            let cols: Vec<Vec<FieldElem>> = (0..n.dim(b))
                .map(|r| {
                    let e = crate::exactlin::unit_vector(field, n.dim(b), r);
                    let coeffs = spread_b[b].solve(&e)?.expect("generators span N");
                    proj.comps[b].apply(&spread_a[b].apply(&coeffs)?)
                })
                .collect::<std::result::Result<_, _>>()?;
            Ok(Matrix::from_columns(field, target.dim(b), &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let embedding = NatTrans { comps };
    debug_assert!(embedding.is_natural(n, &target) && embedding.is_mono());
    Ok(SigmaVerdict::Member {
        copies,
        kernel,
        quotient: target,
        embedding,
    })
}

fn find_killer(u: &Module, n: &Module) -> Result<Morphism> {
    let cat = n.category();
    let ann = annihilator_ideal(u);
    for a in 0..cat.num_objects() {
        for b in 0..cat.num_objects() {
            for coords in ann.part(a, b).basis_vectors() {
                let f = cat.morphism(a, b, coords)?;
                if !n.act(&f).is_zero() {
                    return Ok(f);
                }
            }
        }
    }
    Err(Error::Undecidable("embedding fails but Ann(U) kills N".into()))
}

#[derive(Clone, Debug, Default)]
pub struct SigmaIdealReport {
    pub checked: usize,
    /// Universe members where `IN = 0` and sub-generation disagree.
    pub discrepancies: Vec<usize>,
    pub exhausted: Vec<usize>,
}

impl SigmaIdealReport {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty() && self.exhausted.is_empty()
    }
}

/// The generator `∐_C C(-,C)/I(-,C)` of the class `{N : IN = 0}`.
pub fn ideal_generator(cat: &std::sync::Arc<crate::catcore::Category>, i: &TwoSidedIdeal) -> Result<Module> {
    let parts = (0..cat.num_objects())
        .map(|c| i.column(c).quotient_module(cat))
        .collect::<Result<Vec<_>>>()?;
    Ok(coproduct(cat, &parts)?.0)
}

/// `N ∈ σ[∐ C(-,C)/I(-,C)]` against `IN = 0`, on every universe member.
pub fn sigma_ideal_check(i: &TwoSidedIdeal, universe: &Universe) -> Result<SigmaIdealReport> {
    let gen = ideal_generator(universe.category(), i)?;
    let mut report = SigmaIdealReport::default();
    for (idx, n) in universe.iter().enumerate() {
        report.checked += 1;
        let trace_zero = trace_submodule(i, n)?.is_zero();
        match sigma_member(&gen, n, universe.limits())? {
            SigmaVerdict::Exhausted(_) => report.exhausted.push(idx),
            v => {
                if v.is_member() != trace_zero {
                    report.discrepancies.push(idx);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CogeneratorReport {
    pub injective: bool,
    pub checked: usize,
    /// `(member, torsion, Hom(M,E) = 0)` where the two sides differ.
    pub discrepancies: Vec<(usize, bool, bool)>,
}

impl CogeneratorReport {
    pub fn holds(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// `M ∈ T_F ⟺ Hom(M, E) = 0` over the universe.
pub fn cogenerator_check(e: &Module, f: &FilterFamily, universe: &Universe) -> Result<CogeneratorReport> {
    let injective = is_injective_in(universe, e)?.injective;
    let mut discrepancies = Vec::new();
    for (idx, m) in universe.iter().enumerate() {
        let torsion = torsion_member(f, m)?;
        let hom_zero = hom_modules(m, e)?.is_empty();
        if torsion != hom_zero {
            discrepancies.push((idx, torsion, hom_zero));
        }
    }
    Ok(CogeneratorReport {
        injective,
        checked: universe.len(),
        discrepancies,
    })
}
