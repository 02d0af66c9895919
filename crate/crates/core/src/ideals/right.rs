use std::fmt;
use std::sync::Arc;

use crate::catcore::{Category, Morphism};
use crate::exactlin::{Matrix, Subspace};
use crate::modfun::{enumerate_submodules, enumerate_submodules_bruteforce, representable, Element, Module, Submodule};
use crate::{Error, Limits, Result};

/// A subfunctor of `C(-, target)`: `parts[C']` is a subspace of `Hom(C', target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RightIdeal {
    pub target: usize,
    pub parts: Vec<Subspace>,
}

impl RightIdeal {
    pub fn zero(cat: &Category, target: usize) -> RightIdeal {
        RightIdeal {
            target,
            parts: (0..cat.num_objects())
                .map(|b| Subspace::zero(cat.field(), cat.hom_dim(b, target)))
                .collect(),
        }
    }

    pub fn whole(cat: &Category, target: usize) -> RightIdeal {
        RightIdeal {
            target,
            parts: (0..cat.num_objects())
                .map(|b| Subspace::full(cat.field(), cat.hom_dim(b, target)))
                .collect(),
        }
    }

    pub fn part(&self, b: usize) -> &Subspace {
        &self.parts[b]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.parts.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Subspace::is_zero)
    }

    pub fn is_whole(&self) -> bool {
        self.parts.iter().all(Subspace::is_full)
    }

    pub fn contains(&self, f: &Morphism) -> Result<bool> {
        if f.target != self.target {
            return Err(Error::TargetMismatch {
                expected: self.target,
                found: f.target,
            });
        }
        Ok(self.parts[f.source].contains_vector(&f.coords)?)
    }

    pub fn is_contained_in(&self, other: &RightIdeal) -> Result<bool> {
        check_targets(self, other)?;
        for (a, b) in self.parts.iter().zip(&other.parts) {
            if !a.is_subspace_of(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closed under precomposition with every basis morphism.
    pub fn is_closed(&self, cat: &Category) -> bool {
        let n = cat.num_objects();
        if self.parts.len() != n {
            return false;
        }
        for s in 0..n {
            for t in 0..n {
                for i in 0..cat.hom_dim(s, t) {
                    let pre = cat.precompose_matrix(&cat.basis_morphism(s, t, i), self.target);
                    match self.parts[t].image_under(&pre) {
                        Ok(img) if img.is_subspace_of(&self.parts[s]).unwrap_or(false) => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// The same data seen as a submodule of `C(-, target)`.
    pub fn to_submodule(&self) -> Submodule {
        Submodule {
            parts: self.parts.clone(),
        }
    }

    pub fn from_submodule(target: usize, s: Submodule) -> RightIdeal {
        RightIdeal { target, parts: s.parts }
    }

    /// `C(-, target) / self` with its projection.
    pub fn quotient_module(&self, cat: &Arc<Category>) -> Result<Module> {
        let rep = representable(cat, self.target)?;
        Ok(crate::modfun::quotient(&rep, &self.to_submodule())?.0)
    }

    /// Spanning morphisms: basis vectors of every part.
    pub fn generators(&self) -> Vec<Morphism> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(b, p)| {
                p.basis_vectors().into_iter().map(move |coords| Morphism {
                    source: b,
                    target: self.target,
                    coords,
                })
            })
            .collect()
    }

    pub fn display<'a>(&'a self, cat: &'a Category) -> IdealDisplay<'a> {
        IdealDisplay { ideal: self, cat }
    }
}

pub struct IdealDisplay<'a> {
    ideal: &'a RightIdeal,
    cat: &'a Category,
}

impl fmt::Display for IdealDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.ideal.generators();
        if gens.is_empty() {
            return write!(f, "0 -> {}", self.cat.object_name(self.ideal.target));
        }
        let names: Vec<String> = gens.iter().map(|g| self.cat.format_morphism(g)).collect();
        write!(
            f,
            "({}) -> {}",
            names.join(", "),
            self.cat.object_name(self.ideal.target)
        )
    }
}

fn check_targets(a: &RightIdeal, b: &RightIdeal) -> Result<()> {
    if a.target != b.target {
        return Err(Error::TargetMismatch {
            expected: a.target,
            found: b.target,
        });
    }
    Ok(())
}

/// Smallest right ideal into `c` containing `gens`.
pub fn right_ideal_closure(cat: &Category, c: usize, gens: &[Morphism]) -> Result<RightIdeal> {
    let n = cat.num_objects();
    if c >= n {
        return Err(Error::UnknownObject(c.to_string()));
    }
    for g in gens {
        if g.target != c {
            return Err(Error::TargetMismatch {
                expected: c,
                found: g.target,
            });
        }
        if g.coords.len() != cat.hom_dim(g.source, c) {
            return Err(Error::Shape("generator has the wrong number of coordinates".into()));
        }
    }
    let mut parts: Vec<Subspace> = (0..n)
        .map(|b| {
            let vs = gens
                .iter()
                .filter(|g| g.source == b)
                .map(|g| g.coords.clone())
                .collect();
            Subspace::span(cat.field(), cat.hom_dim(b, c), vs)
        })
        .collect::<std::result::Result<_, _>>()?;
    let pre: Vec<(usize, usize, Matrix)> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .flat_map(|(s, t)| (0..cat.hom_dim(s, t)).map(move |i| (s, t, i)))
        .map(|(s, t, i)| (s, t, cat.precompose_matrix(&cat.basis_morphism(s, t, i), c)))
        .collect();
    loop {
        let mut next = parts.clone();
        for (s, t, m) in &pre {
            next[*s] = next[*s].sum(&parts[*t].image_under(m)?)?;
        }
        if next == parts {
            return Ok(RightIdeal { target: c, parts });
        }
        parts = next;
    }
}

/// All right ideals into `c`, by generator closure. Ordered by total
/// dimension, then by subspaces.
pub fn enumerate_right_ideals(cat: &Arc<Category>, c: usize, limits: Limits) -> Result<Vec<RightIdeal>> {
    let rep = representable(cat, c)?;
    Ok(enumerate_submodules(&rep, limits)?
        .into_iter()
        .map(|s| RightIdeal::from_submodule(c, s))
        .collect())
}

/// Oracle for [`enumerate_right_ideals`]: every tuple of subspaces, kept when closed.
pub fn enumerate_right_ideals_bruteforce(cat: &Arc<Category>, c: usize, limits: Limits) -> Result<Vec<RightIdeal>> {
    let rep = representable(cat, c)?;
    Ok(enumerate_submodules_bruteforce(&rep, limits)?
        .into_iter()
        .map(|s| RightIdeal::from_submodule(c, s))
        .collect())
}

/// `(I(-) : h)` for `h: B -> C`: all `f` into `B` with `h ∘ f ∈ I`.
pub fn residuate(cat: &Category, i: &RightIdeal, h: &Morphism) -> Result<RightIdeal> {
    if h.target != i.target {
        return Err(Error::TargetMismatch {
            expected: i.target,
            found: h.target,
        });
    }
    let parts = (0..cat.num_objects())
        .map(|a| i.parts[a].preimage_under(&cat.postcompose_matrix(h, a)))
        .collect::<std::result::Result<_, _>>()?;
    Ok(RightIdeal {
        target: h.source,
        parts,
    })
}

/// Matrix of `f ↦ M(f)(x)` from `Hom(C', C)` to `M(C')`, for `x ∈ M(C)`.
fn evaluation_matrix(m: &Module, x: &Element, b: usize) -> Matrix {
    let cat = m.category();
    let cols: Vec<_> = (0..cat.hom_dim(b, x.object))
        .map(|i| m.action(b, x.object, i).apply(&x.vector).expect("element checked"))
        .collect();
    Matrix::from_columns(m.field(), m.dim(b), &cols)
}

/// `Ann(x, -)`: morphisms `f` into `C` with `M(f)(x) = 0`.
pub fn annihilator(m: &Module, x: &Element) -> Result<RightIdeal> {
    x.check_in(m)?;
    let parts = (0..m.category().num_objects())
        .map(|b| evaluation_matrix(m, x, b).kernel())
        .collect();
    Ok(RightIdeal {
        target: x.object,
        parts,
    })
}

/// `(K(-) : x)`: morphisms `f` into `C` with `N(f)(x) ∈ K`.
pub fn residuate_rel(n: &Module, k: &Submodule, x: &Element) -> Result<RightIdeal> {
    x.check_in(n)?;
    if !k.is_stable(n) {
        return Err(Error::NotASubmodule("residuation by a non-stable family".into()));
    }
    let parts = (0..n.category().num_objects())
        .map(|b| k.parts[b].preimage_under(&evaluation_matrix(n, x, b)))
        .collect::<std::result::Result<_, _>>()?;
    Ok(RightIdeal {
        target: x.object,
        parts,
    })
}

pub fn ideal_intersect(i: &RightIdeal, j: &RightIdeal) -> Result<RightIdeal> {
    check_targets(i, j)?;
    let parts = i
        .parts
        .iter()
        .zip(&j.parts)
        .map(|(a, b)| a.intersect(b))
        .collect::<std::result::Result<_, _>>()?;
    Ok(RightIdeal {
        target: i.target,
        parts,
    })
}

pub fn ideal_sum(i: &RightIdeal, j: &RightIdeal) -> Result<RightIdeal> {
    check_targets(i, j)?;
    let parts = i
        .parts
        .iter()
        .zip(&j.parts)
        .map(|(a, b)| a.sum(b))
        .collect::<std::result::Result<_, _>>()?;
    Ok(RightIdeal {
        target: i.target,
        parts,
    })
}
