use std::fmt;
use std::sync::Arc;

use crate::catcore::{Category, Morphism};
use crate::exactlin::{zero_vector, Field, FieldElem, Matrix, Subspace};
use crate::{Error, Result};

/// A contravariant functor from a category to finite-dimensional vector spaces.
///
/// For a basis morphism `f: s -> t`, `action(s, t, i)` is the matrix of
/// `M(f): M(t) -> M(s)`.
#[derive(Clone, Debug)]
pub struct Module {
    cat: Arc<Category>,
    dims: Vec<usize>,
    action: Vec<Vec<Matrix>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.same_category(other) && self.dims == other.dims && self.action == other.action
    }
}

impl Eq for Module {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorialityViolation {
    /// `M(1_C)` is not the identity.
    Identity { object: usize },
    /// `M(g ∘ f) != M(f) M(g)` for basis morphisms `f: a -> b`, `g: b -> c`.
    Composition {
        objects: [usize; 3],
        first: usize,
        second: usize,
    },
    /// The matrix supplied for an arrow disagrees with its value in the Hom basis.
    Arrow { arrow: usize },
}

/// Violated functor identities; empty exactly when the data is a module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorialityReport {
    pub violations: Vec<FunctorialityViolation>,
}

impl FunctorialityReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, cat: &Category) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| match v {
                FunctorialityViolation::Identity { object } => {
                    format!("M(1_{}) is not the identity", cat.object_name(*object))
                }
                FunctorialityViolation::Composition {
                    objects: [a, b, c],
                    first,
                    second,
                } => format!(
                    "M(g∘f) != M(f)M(g) for f = {}, g = {}",
                    cat.path_name(&cat.hom_basis(*a, *b)[*first]),
                    cat.path_name(&cat.hom_basis(*b, *c)[*second])
                ),
                FunctorialityViolation::Arrow { arrow } => {
                    format!("matrix of arrow `{}` violates a relation", cat.arrows()[*arrow].name)
                }
            })
            .collect()
    }
}

impl Module {
    /// Builds a module from raw basis actions, checking shapes only.
    pub fn new(cat: Arc<Category>, dims: Vec<usize>, action: Vec<Vec<Matrix>>) -> Result<Module> {
        let n = cat.num_objects();
        if dims.len() != n || action.len() != n * n {
            return Err(Error::Shape(format!("module data for {} objects expected", n)));
        }
        for s in 0..n {
            for t in 0..n {
                let mats = &action[s * n + t];
                if mats.len() != cat.hom_dim(s, t) {
                    return Err(Error::Shape(format!(
                        "expected {} action matrices for Hom({}, {})",
                        cat.hom_dim(s, t),
                        cat.object_name(s),
                        cat.object_name(t)
                    )));
                }
                for m in mats {
                    if m.shape() != (dims[s], dims[t]) || m.field() != cat.field() {
                        return Err(Error::Shape(format!(
                            "action matrix for Hom({}, {}) must be {}x{} over {}",
                            cat.object_name(s),
                            cat.object_name(t),
                            dims[s],
                            dims[t],
                            cat.field()
                        )));
                    }
                }
            }
        }
        Ok(Module { cat, dims, action })
    }

    pub fn zero(cat: Arc<Category>) -> Module {
        let n = cat.num_objects();
        Module::from_arrow_matrices_unchecked(
            cat.clone(),
            vec![0; n],
            cat.arrows().iter().map(|_| Matrix::zeros(cat.field(), 0, 0)).collect(),
        )
        .expect("zero module shapes")
    }

    /// Builds a module from one matrix per arrow (`M(α): M(target) -> M(source)`),
    /// composing along basis paths. Shapes are checked, functoriality is not.
    pub fn from_arrow_matrices_unchecked(
        cat: Arc<Category>,
        dims: Vec<usize>,
        arrow_mats: Vec<Matrix>,
    ) -> Result<Module> {
        let n = cat.num_objects();
        let field = cat.field();
        if dims.len() != n {
            return Err(Error::Shape(format!("expected {n} dimensions, got {}", dims.len())));
        }
        if arrow_mats.len() != cat.arrows().len() {
            return Err(Error::Shape(format!(
                "expected {} arrow matrices, got {}",
                cat.arrows().len(),
                arrow_mats.len()
            )));
        }
        for (arrow, m) in cat.arrows().iter().zip(&arrow_mats) {
            if m.shape() != (dims[arrow.source], dims[arrow.target]) || m.field() != field {
                return Err(Error::Shape(format!(
                    "matrix for arrow `{}` must be {}x{} over {}",
                    arrow.name, dims[arrow.source], dims[arrow.target], field
                )));
            }
        }
        let mut action = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let mats = cat
                    .hom_basis(s, t)
                    .iter()
                    .map(|path| {
                        // path = α_k ∘ ... ∘ α_1, so M(path) = M(α_1) ... M(α_k)
                        path.arrows
                            .iter()
                            .try_fold(Matrix::identity(field, dims[s]), |acc, &ai| acc.mul(&arrow_mats[ai]))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                action.push(mats);
            }
        }
        let m = Module { cat, dims, action };
        Ok(m)
    }

    /// Builds a module from arrow matrices and rejects data that is not a functor.
    pub fn from_arrow_matrices(cat: Arc<Category>, dims: Vec<usize>, arrow_mats: Vec<Matrix>) -> Result<Module> {
        let m = Module::from_arrow_matrices_unchecked(cat, dims, arrow_mats.clone())?;
        let mut report = m.check_functoriality();
        for (ai, given) in arrow_mats.iter().enumerate() {
            if m.act(&m.cat.arrow_morphism(ai)) != *given {
                report.violations.push(FunctorialityViolation::Arrow { arrow: ai });
            }
        }
        if !report.is_empty() {
            return Err(Error::NotAModule(report.describe(&m.cat).join("; ")));
        }
        Ok(m)
    }

    pub fn category(&self) -> &Arc<Category> {
        &self.cat
    }

    pub fn field(&self) -> Field {
        self.cat.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_category(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.cat, &other.cat) || *self.cat == *other.cat
    }

    pub(crate) fn check_same_category(&self, other: &Module) -> Result<()> {
        if self.same_category(other) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    /// The same module over an equal category handle.
    pub fn rebind(self, cat: Arc<Category>) -> Result<Module> {
        if *cat != *self.cat {
            return Err(Error::CategoryMismatch);
        }
        Ok(Module { cat, ..self })
    }

    pub fn action(&self, s: usize, t: usize, i: usize) -> &Matrix {
        &self.action[s * self.cat.num_objects() + t][i]
    }

    /// `M(f)` for an arbitrary morphism, extended linearly from the basis.
    pub fn act(&self, f: &Morphism) -> Matrix {
        let (s, t) = (f.source, f.target);
        let mut out = Matrix::zeros(self.field(), self.dims[s], self.dims[t]);
        for (i, c) in f.coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.action(s, t, i).scale(c)).expect("action shapes agree");
            }
        }
        out
    }

    /// `M(f)(x)` for `x ∈ M(f.target)`.
    pub fn act_on(&self, f: &Morphism, x: &[FieldElem]) -> Vec<FieldElem> {
        let (s, t) = (f.source, f.target);
        let mut out = zero_vector(self.field(), self.dims[s]);
        for (i, c) in f.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let y = self.action(s, t, i).apply(x).expect("element shape");
            for (o, v) in out.iter_mut().zip(&y) {
                *o = &*o + &(c * v);
            }
        }
        out
    }

    /// `M(α)` for every arrow, in declaration order.
    pub fn arrow_matrices(&self) -> Vec<Matrix> {
        (0..self.cat.arrows().len())
            .map(|ai| self.act(&self.cat.arrow_morphism(ai)))
            .collect()
    }

    /// Checks `M(1_C) = id` and `M(g∘f) = M(f)M(g)` on all composable basis pairs.
    pub fn check_functoriality(&self) -> FunctorialityReport {
        let cat = &self.cat;
        let n = cat.num_objects();
        let mut violations = Vec::new();
        for c in 0..n {
            if !self
                .act(&cat.identity(c))
                .eq(&Matrix::identity(self.field(), self.dims[c]))
            {
                violations.push(FunctorialityViolation::Identity { object: c });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for i in 0..cat.hom_dim(a, b) {
                        for j in 0..cat.hom_dim(b, c) {
                            let composite = Morphism {
                                source: a,
                                target: c,
                                coords: cat.compose_basis(a, b, c, i, j).to_vec(),
                            };
                            let lhs = self.act(&composite);
                            let rhs = self
                                .action(a, b, i)
                                .mul(self.action(b, c, j))
                                .expect("action shapes agree");
                            if lhs != rhs {
                                violations.push(FunctorialityViolation::Composition {
                                    objects: [a, b, c],
                                    first: i,
                                    second: j,
                                });
                            }
                        }
                    }
                }
            }
        }
        FunctorialityReport { violations }
    }

    /// Iso-invariant fingerprint: dimensions and ranks of all basis actions.
    pub fn signature(&self) -> (Vec<usize>, Vec<usize>) {
        let ranks = self.action.iter().flatten().map(Matrix::rank).collect();
        (self.dims.clone(), ranks)
    }
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(ToString::to_string).collect();
        write!(f, "dims ({})", dims.join(","))?;
        for (arrow, m) in self.cat.arrows().iter().zip(self.arrow_matrices()) {
            write!(f, " {}={}", arrow.name, m)?;
        }
        Ok(())
    }
}

/// A vector `x ∈ M(object)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub object: usize,
    pub vector: Vec<FieldElem>,
}

impl Element {
    pub fn new(object: usize, vector: Vec<FieldElem>) -> Element {
        Element { object, vector }
    }

    pub fn basis(m: &Module, object: usize, i: usize) -> Element {
        Element {
            object,
            vector: crate::exactlin::unit_vector(m.field(), m.dim(object), i),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(FieldElem::is_zero)
    }

    pub(crate) fn check_in(&self, m: &Module) -> Result<()> {
        if self.object >= m.category().num_objects() || self.vector.len() != m.dim(self.object) {
            return Err(Error::Shape(format!("element does not live in M({})", self.object)));
        }
        Ok(())
    }
}

/// A natural transformation `M -> N`, one matrix `M(C) -> N(C)` per object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTrans {
    pub comps: Vec<Matrix>,
}

impl NatTrans {
    pub fn identity(m: &Module) -> NatTrans {
        NatTrans {
            comps: m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect(),
        }
    }

    pub fn zero(m: &Module, n: &Module) -> NatTrans {
        NatTrans {
            comps: m
                .dims()
                .iter()
                .zip(n.dims())
                .map(|(&dm, &dn)| Matrix::zeros(m.field(), dn, dm))
                .collect(),
        }
    }

    /// Shapes match and `N(f) ∘ η_C = η_C' ∘ M(f)` for every basis `f: C' -> C`.
    pub fn is_natural(&self, source: &Module, target: &Module) -> bool {
        let cat = source.category();
        let n = cat.num_objects();
        if self.comps.len() != n {
            return false;
        }
        for c in 0..n {
            if self.comps[c].shape() != (target.dim(c), source.dim(c)) {
                return false;
            }
        }
        for s in 0..n {
            for t in 0..n {
                for i in 0..cat.hom_dim(s, t) {
                    let lhs = target.action(s, t, i).mul(&self.comps[t]).expect("shape");
                    let rhs = self.comps[s].mul(source.action(s, t, i)).expect("shape");
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `self ∘ other` (first `other`, then `self`).
    pub fn after(&self, other: &NatTrans) -> Result<NatTrans> {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.mul(b))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(NatTrans { comps })
    }

    pub fn add(&self, other: &NatTrans) -> Result<NatTrans> {
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.add(b))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(NatTrans { comps })
    }

    pub fn scale(&self, s: &FieldElem) -> NatTrans {
        NatTrans {
            comps: self.comps.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    /// Entries of all components, concatenated.
    pub fn flatten(&self) -> Vec<FieldElem> {
        self.comps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    /// Objectwise kernel, as a submodule of the source.
    pub fn kernel(&self) -> Submodule {
        Submodule {
            parts: self.comps.iter().map(Matrix::kernel).collect(),
        }
    }

    /// Objectwise image, as a submodule of the target.
    pub fn image(&self) -> Submodule {
        Submodule {
            parts: self.comps.iter().map(Matrix::image).collect(),
        }
    }
}

/// A stable family of subspaces `K(C) ⊆ M(C)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule {
    pub parts: Vec<Subspace>,
}

impl Submodule {
    pub fn zero(m: &Module) -> Submodule {
        Submodule {
            parts: m.dims().iter().map(|&d| Subspace::zero(m.field(), d)).collect(),
        }
    }

    pub fn whole(m: &Module) -> Submodule {
        Submodule {
            parts: m.dims().iter().map(|&d| Subspace::full(m.field(), d)).collect(),
        }
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

    fn check_parent(&self, m: &Module) -> Result<()> {
        let ok = self.parts.len() == m.dims().len()
            && self
                .parts
                .iter()
                .zip(m.dims())
                .all(|(p, &d)| p.ambient_dim() == d && p.field() == m.field());
        if ok {
            Ok(())
        } else {
            Err(Error::NotASubmodule("subspace shapes do not match the module".into()))
        }
    }

    /// `M(f)` maps `K(C)` into `K(C')` for every basis `f: C' -> C`.
    pub fn is_stable(&self, m: &Module) -> bool {
        if self.check_parent(m).is_err() {
            return false;
        }
        let cat = m.category();
        let n = cat.num_objects();
        for s in 0..n {
            for t in 0..n {
                for i in 0..cat.hom_dim(s, t) {
                    let img = self.parts[t].image_under(m.action(s, t, i)).expect("shape");
                    if !img.is_subspace_of(&self.parts[s]).expect("shape") {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_contained_in(&self, other: &Submodule) -> Result<bool> {
        for (a, b) in self.parts.iter().zip(&other.parts) {
            if !a.is_subspace_of(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.intersect(b))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Submodule { parts })
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.sum(b))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Submodule { parts })
    }

    /// The submodule as a module in its own right, with the inclusion into `m`.
    pub fn to_module(&self, m: &Module) -> Result<(Module, NatTrans)> {
        self.check_parent(m)?;
        if !self.is_stable(m) {
            return Err(Error::NotASubmodule("family is not stable under the action".into()));
        }
        let cat = m.category();
        let n = cat.num_objects();
        let field = m.field();
        let dims = self.dims();
        let incl: Vec<Matrix> = self.parts.iter().map(|p| p.basis().transpose()).collect();
        let mut action = Vec::with_capacity(n * n);
        for s in 0..n {
            for t in 0..n {
                let mats = (0..cat.hom_dim(s, t))
                    .map(|i| {
                        let cols: Vec<Vec<FieldElem>> = self.parts[t]
                            .basis_vectors()
                            .iter()
                            .map(|v| {
                                let y = m.action(s, t, i).apply(v)?;
                                self.parts[s].coordinates(&y)
                            })
                            .collect::<std::result::Result<_, _>>()?;
                        Ok(Matrix::from_columns(field, dims[s], &cols))
                    })
                    .collect::<Result<Vec<_>>>()?;
                action.push(mats);
            }
        }
        let sub = Module::new(cat.clone(), dims, action)?;
        Ok((sub, NatTrans { comps: incl }))
    }
}
