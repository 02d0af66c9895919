use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::catcore::Category;
use crate::exactlin::{Matrix, Subspace};
use crate::{Limits, Result};

use super::module::{Element, Module, NatTrans, Submodule};
use super::ops::{find_isomorphism, hom_modules, submodule_generated};

/// Every module with `dim M(C) <= dim_bound` at each object, one per
/// isomorphism class, in canonical order.
#[derive(Clone, Debug)]
pub struct Universe {
    cat: Arc<Category>,
    dim_bound: usize,
    modules: Vec<Module>,
    limits: Limits,
}

impl Universe {
    pub fn category(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[Module] {
        &self.modules
    }

    pub fn get(&self, i: usize) -> &Module {
        &self.modules[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Module> {
        self.modules.iter()
    }

    /// Whether a module's dimension vector fits the universe bound.
    pub fn fits(&self, m: &Module) -> bool {
        m.dims().iter().all(|&d| d <= self.dim_bound)
    }

    /// Index of the member isomorphic to `m`; `None` when `m` fits the bound
    /// but matches nothing (impossible for a complete universe), or when it
    /// does not fit.
    pub fn index_of(&self, m: &Module) -> Result<Option<usize>> {
        if !self.fits(m) {
            return Ok(None);
        }
        let sig = m.signature();
        for (i, u) in self.modules.iter().enumerate() {
            if u.signature() == sig && find_isomorphism(u, m, self.limits)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

fn dim_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=bound).map(move |d| {
                    let mut v = prefix.clone();
                    v.push(d);
                    v
                })
            })
            .collect();
    }
    out
}

/// Enumerates the module universe of `cat` up to `dim_bound` per object.
///
/// Dimension vectors run in lexicographic order and, within one, arrow
/// matrices in row-major numeric order; the first representative of each
/// isomorphism class is kept.
pub fn enumerate_universe(cat: &Arc<Category>, dim_bound: usize, limits: Limits) -> Result<Universe> {
    let field = cat.field();
    let p = field.order().ok_or(crate::exactlin::LinAlgError::InfiniteField)?;
    let dvs = dim_vectors(cat.num_objects(), dim_bound);
    let estimate = dvs.iter().fold(0u64, |acc, dv| {
        let entries: u32 = cat.arrows().iter().map(|a| (dv[a.source] * dv[a.target]) as u32).sum();
        acc.saturating_add(p.checked_pow(entries).unwrap_or(u64::MAX))
    });
    limits.check("module universe", estimate)?;

    let mut modules: Vec<Module> = Vec::new();
    let mut by_signature: HashMap<(Vec<usize>, Vec<usize>), Vec<usize>> = HashMap::new();
    for dv in dvs {
        let choices: Vec<Vec<Matrix>> = cat
            .arrows()
            .iter()
            .map(|a| Matrix::enumerate_all(field, dv[a.source], dv[a.target]))
            .collect::<std::result::Result<_, _>>()?;
        let mut digits = vec![0usize; choices.len()];
        loop {
            let mats: Vec<Matrix> = digits.iter().zip(&choices).map(|(&d, c)| c[d].clone()).collect();
            if let Ok(m) = Module::from_arrow_matrices(cat.clone(), dv.clone(), mats) {
                let sig = m.signature();
                let bucket = by_signature.entry(sig).or_default();
                let mut seen = false;
                for &i in bucket.iter() {
                    if find_isomorphism(&modules[i], &m, limits)?.is_some() {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    bucket.push(modules.len());
                    modules.push(m);
                }
            }
            let mut carried = true;
            for (d, c) in digits.iter_mut().zip(&choices).rev() {
                *d += 1;
                if *d < c.len() {
                    carried = false;
                    break;
                }
                *d = 0;
            }
            if carried {
                break;
            }
        }
    }
    Ok(Universe {
        cat: cat.clone(),
        dim_bound,
        modules,
        limits,
    })
}

/// All submodules, found by closing under single generators from the zero
/// submodule. Sorted by total dimension, then by the subspaces.
pub fn enumerate_submodules(m: &Module, limits: Limits) -> Result<Vec<Submodule>> {
    let field = m.field();
    if !field.is_finite() {
        return Err(crate::exactlin::LinAlgError::InfiniteField.into());
    }
    let n = m.category().num_objects();
    let mut found: BTreeSet<Submodule> = BTreeSet::new();
    let zero = Submodule::zero(m);
    found.insert(zero.clone());
    let mut queue = vec![zero];
    let mut visited = 0u64;
    while let Some(s) = queue.pop() {
        for c in 0..n {
            // one representative per nonzero coset of S(C) in M(C)
            let free = s.parts[c].complement_positions();
            let reps = Subspace::span(
                field,
                m.dim(c),
                free.iter()
                    .map(|&j| crate::exactlin::unit_vector(field, m.dim(c), j))
                    .collect(),
            )?
            .vectors()?;
            for v in reps.into_iter().filter(|v| v.iter().any(|e| !e.is_zero())) {
                visited += 1;
                limits.check("submodule enumeration", visited)?;
                let principal = submodule_generated(m, &[Element::new(c, v)])?;
                let t = s.sum(&principal)?;
                if found.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
    }
    let mut out: Vec<Submodule> = found.into_iter().collect();
    out.sort_by(|a, b| a.total_dim().cmp(&b.total_dim()).then(a.cmp(b)));
    Ok(out)
}

/// Brute-force oracle for [`enumerate_submodules`]: every tuple of subspaces,
/// filtered by stability.
pub fn enumerate_submodules_bruteforce(m: &Module, limits: Limits) -> Result<Vec<Submodule>> {
    let field = m.field();
    let q = field.order().ok_or(crate::exactlin::LinAlgError::InfiniteField)?;
    let estimate = m
        .dims()
        .iter()
        .fold(1u64, |acc, &d| acc.saturating_mul(Subspace::count_all(q, d)));
    limits.check("subspace tuples", estimate)?;
    let options: Vec<Vec<Subspace>> = m
        .dims()
        .iter()
        .map(|&d| Subspace::enumerate_all(field, d))
        .collect::<std::result::Result<_, _>>()?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; options.len()];
    loop {
        let cand = Submodule {
            parts: digits.iter().zip(&options).map(|(&d, o)| o[d].clone()).collect(),
        };
        if cand.is_stable(m) {
            out.push(cand);
        }
        let mut carried = true;
        for (d, o) in digits.iter_mut().zip(&options).rev() {
            *d += 1;
            if *d < o.len() {
                carried = false;
                break;
            }
            *d = 0;
        }
        if carried {
            break;
        }
    }
    out.sort_by(|a, b| a.total_dim().cmp(&b.total_dim()).then(a.cmp(b)));
    Ok(out)
}

/// A failure of injectivity: a map from a submodule `K ⊆ N` into `E` that
/// does not extend to `N`.
#[derive(Clone, Debug)]
pub struct InjectivityWitness {
    pub module_index: usize,
    pub submodule: Submodule,
    pub map: NatTrans,
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub injective: bool,
    pub pairs_checked: usize,
    pub witness: Option<InjectivityWitness>,
}

/// Tests the extension property of `e` against every inclusion `K ⊆ N`
/// with `N` in the universe: restriction `Hom(N,E) -> Hom(K,E)` must be onto.
pub fn is_injective_in(universe: &Universe, e: &Module) -> Result<InjectivityReport> {
    let field = e.field();
    let mut pairs_checked = 0;
    for (ni, n) in universe.iter().enumerate() {
        n.check_same_category(e)?;
        let from_n = hom_modules(n, e)?;
        for k in enumerate_submodules(n, universe.limits())? {
            pairs_checked += 1;
            let (kmod, incl) = k.to_module(n)?;
            let from_k = hom_modules(&kmod, e)?;
            if from_k.is_empty() {
                continue;
            }
            let restricted: Vec<Vec<_>> = from_n
                .iter()
                .map(|phi| Ok(phi.after(&incl)?.flatten()))
                .collect::<Result<_>>()?;
            let width = from_k[0].flatten().len();
            let image = Subspace::span(field, width, restricted)?;
            if image.dim() < from_k.len() {
                let missing = from_k
                    .iter()
                    .find(|psi| !image.contains_vector(&psi.flatten()).unwrap_or(false))
                    .expect("a basis vector lies outside a smaller span")
                    .clone();
                return Ok(InjectivityReport {
                    injective: false,
                    pairs_checked,
                    witness: Some(InjectivityWitness {
                        module_index: ni,
                        submodule: k,
                        map: missing,
                    }),
                });
            }
        }
    }
    Ok(InjectivityReport {
        injective: true,
        pairs_checked,
        witness: None,
    })
}
