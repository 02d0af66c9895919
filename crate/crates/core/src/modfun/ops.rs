use std::sync::Arc;

use crate::catcore::Category;
use crate::exactlin::{FieldElem, Matrix, Subspace};
use crate::{Error, Limits, Result};

use super::module::{Element, Module, NatTrans, Submodule};

/// The representable functor `C(-, c)`: `B ↦ Hom(B, c)`, acting by precomposition.
pub fn representable(cat: &Arc<Category>, c: usize) -> Result<Module> {
    let n = cat.num_objects();
    if c >= n {
        return Err(Error::UnknownObject(c.to_string()));
    }
    let dims: Vec<usize> = (0..n).map(|b| cat.hom_dim(b, c)).collect();
    let mut action = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            action.push(
                (0..cat.hom_dim(s, t))
                    .map(|i| cat.precompose_matrix(&cat.basis_morphism(s, t, i), c))
                    .collect(),
            );
        }
    }
    Module::new(cat.clone(), dims, action)
}

/// A basis of the space of natural transformations `m -> n`, from the
/// naturality equations `N(f) X_C = X_C' M(f)` over all basis `f: C' -> C`.
pub fn hom_modules(m: &Module, n: &Module) -> Result<Vec<NatTrans>> {
    m.check_same_category(n)?;
    let cat = m.category();
    let field = m.field();
    let objs = cat.num_objects();
    // unknowns: X_C is dim N(C) x dim M(C), row-major, concatenated over C
    let mut offset = Vec::with_capacity(objs);
    let mut total = 0;
    for c in 0..objs {
        offset.push(total);
        total += n.dim(c) * m.dim(c);
    }
    let var = |c: usize, r: usize, k: usize| offset[c] + r * m.dim(c) + k;
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for s in 0..objs {
        for t in 0..objs {
            if s == t && cat.hom_dim(s, t) == 1 {
                // only the identity: naturality is automatic
                continue;
            }
            for i in 0..cat.hom_dim(s, t) {
                let mf = m.action(s, t, i); // M(t) -> M(s)
                let nf = n.action(s, t, i); // N(t) -> N(s)
                                            // (N(f) X_t - X_s M(f))[r][k] = 0 for r < dim N(s), k < dim M(t)
                for r in 0..n.dim(s) {
                    for k in 0..m.dim(t) {
                        let mut row = vec![field.zero(); total];
                        for q in 0..n.dim(t) {
                            let a = nf.get(r, q);
                            if !a.is_zero() {
                                let v = var(t, q, k);
                                row[v] = &row[v] + a;
                            }
                        }
                        for q in 0..m.dim(s) {
                            let b = mf.get(q, k);
                            if !b.is_zero() {
                                let v = var(s, r, q);
                                row[v] = &row[v] - b;
                            }
                        }
                        if row.iter().any(|e| !e.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        Subspace::full(field, total)
    } else {
        Matrix::from_rows(field, total, rows)?.kernel()
    };
    Ok(solutions
        .basis_vectors()
        .into_iter()
        .map(|v| NatTrans {
            comps: (0..objs)
                .map(|c| {
                    let len = n.dim(c) * m.dim(c);
                    Matrix::new(field, n.dim(c), m.dim(c), v[offset[c]..offset[c] + len].to_vec())
                        .expect("slice has the component's size")
                })
                .collect(),
        })
        .collect())
}

/// Smallest submodule containing the given elements.
pub fn submodule_generated(m: &Module, gens: &[Element]) -> Result<Submodule> {
    let cat = m.category();
    let n = cat.num_objects();
    for g in gens {
        g.check_in(m)?;
    }
    let mut parts: Vec<Subspace> = (0..n)
        .map(|c| {
            let vectors = gens
                .iter()
                .filter(|g| g.object == c)
                .map(|g| g.vector.clone())
                .collect();
            Subspace::span(m.field(), m.dim(c), vectors)
        })
        .collect::<std::result::Result<_, _>>()?;
    loop {
        let mut next = parts.clone();
        for s in 0..n {
            for t in 0..n {
                for i in 0..cat.hom_dim(s, t) {
                    let img = parts[t].image_under(m.action(s, t, i))?;
                    next[s] = next[s].sum(&img)?;
                }
            }
        }
        if next == parts {
            break;
        }
        parts = next;
    }
    Ok(Submodule { parts })
}

/// `m / k` together with the projection `m -> m/k`.
pub fn quotient(m: &Module, k: &Submodule) -> Result<(Module, NatTrans)> {
    if !k.is_stable(m) {
        return Err(Error::NotASubmodule("quotient by a non-stable family".into()));
    }
    let cat = m.category();
    let field = m.field();
    let n = cat.num_objects();
    let keep: Vec<Vec<usize>> = k.parts.iter().map(Subspace::complement_positions).collect();
    let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
    // projection: reduce modulo K(C), read off the complement coordinates
    let proj: Vec<Matrix> = (0..n)
        .map(|c| {
            let cols: Vec<Vec<FieldElem>> = (0..m.dim(c))
                .map(|j| {
                    let e = crate::exactlin::unit_vector(field, m.dim(c), j);
                    let r = k.parts[c].reduce(&e).expect("shape");
                    keep[c].iter().map(|&p| r[p].clone()).collect()
                })
                .collect();
            Matrix::from_columns(field, dims[c], &cols)
        })
        .collect();
    let lift: Vec<Matrix> = (0..n)
        .map(|c| {
            let cols: Vec<Vec<FieldElem>> = keep[c]
                .iter()
                .map(|&p| crate::exactlin::unit_vector(field, m.dim(c), p))
                .collect();
            Matrix::from_columns(field, m.dim(c), &cols)
        })
        .collect();
    let mut action = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            action.push(
                (0..cat.hom_dim(s, t))
                    .map(|i| proj[s].mul(m.action(s, t, i))?.mul(&lift[t]))
                    .collect::<std::result::Result<Vec<_>, _>>()?,
            );
        }
    }
    let q = Module::new(cat.clone(), dims, action)?;
    Ok((q, NatTrans { comps: proj }))
}

/// Objectwise direct sum, with the canonical injections.
pub fn coproduct(cat: &Arc<Category>, ms: &[Module]) -> Result<(Module, Vec<NatTrans>)> {
    let n = cat.num_objects();
    let field = cat.field();
    for m in ms {
        if !(Arc::ptr_eq(m.category(), cat) || **m.category() == **cat) {
            return Err(Error::CategoryMismatch);
        }
    }
    let dims: Vec<usize> = (0..n).map(|c| ms.iter().map(|m| m.dim(c)).sum()).collect();
    let mut action = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            let mats = (0..cat.hom_dim(s, t))
                .map(|i| {
                    ms.iter()
                        .try_fold(Matrix::zeros(field, 0, 0), |acc, m| acc.block_diag(m.action(s, t, i)))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            action.push(mats);
        }
    }
    let sum = Module::new(cat.clone(), dims.clone(), action)?;
    let mut injections = Vec::with_capacity(ms.len());
    let mut before = vec![0usize; n];
    for m in ms {
        let comps = (0..n)
            .map(|c| {
                let mut e = Matrix::zeros(field, dims[c], m.dim(c));
                for j in 0..m.dim(c) {
                    e.set(before[c] + j, j, field.one());
                }
                e
            })
            .collect();
        for (c, b) in before.iter_mut().enumerate() {
            *b += m.dim(c);
        }
        injections.push(NatTrans { comps });
    }
    Ok((sum, injections))
}

/// The field-linear dual `Hom_k(M(-), k)`, a module over the opposite category.
pub fn dual(m: &Module) -> Module {
    dual_over(m, Arc::new(m.category().opposite()))
}

/// `dual`, reusing a handle to the opposite category.
pub fn dual_over(m: &Module, opposite: Arc<Category>) -> Module {
    let n = opposite.num_objects();
    let mut action = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            // op-basis i of Hom_op(s,t) is basis i of Hom(t,s)
            action.push(
                (0..opposite.hom_dim(s, t))
                    .map(|i| m.action(t, s, i).transpose())
                    .collect(),
            );
        }
    }
    Module::new(opposite, m.dims().to_vec(), action).expect("transposed shapes")
}

/// `D(C(c, -))`: the dual of the covariant Hom functor at `c`, a module over `cat`.
pub fn dual_corepresentable(cat: &Arc<Category>, c: usize) -> Result<Module> {
    let op = Arc::new(cat.opposite());
    let rep = representable(&op, c)?;
    dual_over(&rep, cat.clone()).rebind(cat.clone())
}

/// Searches the space of maps `m -> n` for an isomorphism.
pub fn find_isomorphism(m: &Module, n: &Module, limits: Limits) -> Result<Option<NatTrans>> {
    m.check_same_category(n)?;
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(NatTrans::identity(m)));
    }
    if m.signature() != n.signature() {
        return Ok(None);
    }
    let basis = hom_modules(m, n)?;
    if basis.len() != hom_modules(m, m)?.len() {
        return Ok(None);
    }
    let field = m.field();
    let elems = field.elements()?;
    let p = elems.len() as u64;
    let count = p.checked_pow(basis.len() as u32).unwrap_or(u64::MAX);
    limits.check("isomorphism search", count)?;
    let mut digits = vec![0usize; basis.len()];
    for _ in 0..count {
        let mut phi = NatTrans::zero(m, n);
        for (d, b) in digits.iter().zip(&basis) {
            if *d != 0 {
                phi = phi.add(&b.scale(&elems[*d]))?;
            }
        }
        if phi.is_iso() {
            return Ok(Some(phi));
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < elems.len() {
                break;
            }
            *d = 0;
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &Module, n: &Module, limits: Limits) -> Result<bool> {
    Ok(find_isomorphism(m, n, limits)?.is_some())
}
