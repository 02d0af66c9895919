use crate::catcore::Category;
use crate::exactlin::Subspace;
use crate::modfun::{Module, Submodule};
use crate::{Error, Result};

use super::right::RightIdeal;

/// A subfunctor of the Hom bifunctor: `part(a, b) ⊆ Hom(a, b)`, closed under
/// composition on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoSidedIdeal {
    n: usize,
    parts: Vec<Subspace>,
}

impl TwoSidedIdeal {
    pub fn zero(cat: &Category) -> TwoSidedIdeal {
        let n = cat.num_objects();
        TwoSidedIdeal {
            n,
            parts: (0..n * n)
                .map(|k| Subspace::zero(cat.field(), cat.hom_dim(k / n, k % n)))
                .collect(),
        }
    }

    pub fn whole(cat: &Category) -> TwoSidedIdeal {
        let n = cat.num_objects();
        TwoSidedIdeal {
            n,
            parts: (0..n * n)
                .map(|k| Subspace::full(cat.field(), cat.hom_dim(k / n, k % n)))
                .collect(),
        }
    }

    pub fn part(&self, a: usize, b: usize) -> &Subspace {
        &self.parts[a * self.n + b]
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Subspace::is_zero)
    }

    /// The right ideal `I(-, c)`.
    pub fn column(&self, c: usize) -> RightIdeal {
        RightIdeal {
            target: c,
            parts: (0..self.n).map(|a| self.part(a, c).clone()).collect(),
        }
    }

    /// Closed under pre- and post-composition with basis morphisms.
    pub fn is_closed(&self, cat: &Category) -> bool {
        let n = cat.num_objects();
        for s in 0..n {
            for t in 0..n {
                for i in 0..cat.hom_dim(s, t) {
                    let g = cat.basis_morphism(s, t, i);
                    for x in 0..n {
                        // x -> s -> t
                        let post = cat.postcompose_matrix(&g, x);
                        // s -> t -> x
                        let pre = cat.precompose_matrix(&g, x);
                        let ok_post = self
                            .part(x, s)
                            .image_under(&post)
                            .and_then(|img| img.is_subspace_of(self.part(x, t)))
                            .unwrap_or(false);
                        let ok_pre = self
                            .part(t, x)
                            .image_under(&pre)
                            .and_then(|img| img.is_subspace_of(self.part(s, x)))
                            .unwrap_or(false);
                        if !(ok_post && ok_pre) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `I_B`: the span of all composites `a -> d -> b` with `d` in `objects`.
pub fn two_sided_from_objects(cat: &Category, objects: &[usize]) -> Result<TwoSidedIdeal> {
    let n = cat.num_objects();
    if let Some(&bad) = objects.iter().find(|&&d| d >= n) {
        return Err(Error::UnknownObject(bad.to_string()));
    }
    let mut parts = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut vs = Vec::new();
            for &d in objects {
                for i in 0..cat.hom_dim(a, d) {
                    let h = cat.basis_morphism(a, d, i);
                    for j in 0..cat.hom_dim(d, b) {
                        let g = cat.basis_morphism(d, b, j);
                        vs.push(cat.compose(&g, &h)?.coords);
                    }
                }
            }
            parts.push(Subspace::span(cat.field(), cat.hom_dim(a, b), vs)?);
        }
    }
    Ok(TwoSidedIdeal { n, parts })
}

/// `Ann(M)`: morphisms `f` with `M(f) = 0`.
pub fn annihilator_ideal(m: &Module) -> TwoSidedIdeal {
    let cat = m.category();
    let n = cat.num_objects();
    let parts = (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            // columns: the entries of M(basis_i), one column per basis morphism
            let cols: Vec<_> = (0..cat.hom_dim(a, b))
                .map(|i| m.action(a, b, i).entries().to_vec())
                .collect();
            crate::exactlin::Matrix::from_columns(m.field(), m.dim(a) * m.dim(b), &cols).kernel()
        })
        .collect();
    TwoSidedIdeal { n, parts }
}

/// `IM`: at `A`, the sum of `Im M(f)` over `f ∈ I(A, C)` and all `C`.
pub fn trace_submodule(i: &TwoSidedIdeal, m: &Module) -> Result<Submodule> {
    let cat = m.category();
    let n = cat.num_objects();
    if i.n != n {
        return Err(Error::CategoryMismatch);
    }
    let mut parts = Vec::with_capacity(n);
    for a in 0..n {
        let mut acc = Subspace::zero(m.field(), m.dim(a));
        for c in 0..n {
            for coords in i.part(a, c).basis_vectors() {
                let f = cat.morphism(a, c, coords)?;
                acc = acc.sum(&m.act(&f).image())?;
            }
        }
        parts.push(acc);
    }
    let s = Submodule { parts };
    debug_assert!(s.is_stable(m));
    Ok(s)
}
