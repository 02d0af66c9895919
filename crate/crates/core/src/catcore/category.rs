use std::collections::HashMap;
use std::fmt;

use crate::exactlin::{unit_vector, zero_vector, Field, FieldElem, Matrix};
use crate::{Error, Limits, Result};

use super::presentation::{CategoryPresentation, PathWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// A morphism `source -> target` as coordinates in the Hom basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub coords: Vec<FieldElem>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElem::is_zero)
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::NotComposable(format!(
                "cannot add morphisms {}->{} and {}->{}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(Morphism {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, s: &FieldElem) -> Morphism {
        Morphism {
            coords: self.coords.iter().map(|a| a * s).collect(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawViolation {
    Associativity { objects: [usize; 4], basis: [usize; 3] },
    LeftIdentity { source: usize, target: usize, basis: usize },
    RightIdentity { source: usize, target: usize, basis: usize },
}

/// A finite presented preadditive category: Hom bases of residue classes
/// of paths and the bilinear composition table on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Category {
    name: String,
    field: Field,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    hom: Vec<Vec<Vec<Path>>>,
    arrow_coords: Vec<Vec<FieldElem>>,
    /// `table[(a*n + b)*n + c][i*dim(b,c) + j]` = coordinates of `basis_j ∘ basis_i`.
    table: Vec<Vec<Vec<FieldElem>>>,
    identities: Vec<usize>,
    nilpotency_bound: usize,
}

impl Category {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nilpotency_bound(&self) -> usize {
        self.nilpotency_bound
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn arrow_morphism(&self, idx: usize) -> Morphism {
        let a = &self.arrows[idx];
        Morphism {
            source: a.source,
            target: a.target,
            coords: self.arrow_coords[idx].clone(),
        }
    }

    pub fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.hom[a][b].len()
    }

    pub fn hom_basis(&self, a: usize, b: usize) -> &[Path] {
        &self.hom[a][b]
    }

    /// Sum of `dim Hom(B, c)` over all objects `B`.
    pub fn total_dim_into(&self, c: usize) -> usize {
        (0..self.num_objects()).map(|b| self.hom_dim(b, c)).sum()
    }

    pub fn total_hom_dim(&self) -> usize {
        let n = self.num_objects();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.hom_dim(a, b))
            .sum()
    }

    pub fn identity_index(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identity(&self, a: usize) -> Morphism {
        self.basis_morphism(a, a, self.identities[a])
    }

    pub fn zero(&self, a: usize, b: usize) -> Morphism {
        Morphism {
            source: a,
            target: b,
            coords: zero_vector(self.field, self.hom_dim(a, b)),
        }
    }

    pub fn basis_morphism(&self, a: usize, b: usize, i: usize) -> Morphism {
        Morphism {
            source: a,
            target: b,
            coords: unit_vector(self.field, self.hom_dim(a, b), i),
        }
    }

    pub fn morphism(&self, a: usize, b: usize, coords: Vec<FieldElem>) -> Result<Morphism> {
        if coords.len() != self.hom_dim(a, b) {
            return Err(Error::Shape(format!(
                "morphism {}->{} needs {} coordinates, got {}",
                self.objects[a],
                self.objects[b],
                self.hom_dim(a, b),
                coords.len()
            )));
        }
        Ok(Morphism {
            source: a,
            target: b,
            coords,
        })
    }

    /// Every morphism `a -> b` (finite fields only), in coordinate order.
    pub fn morphisms(&self, a: usize, b: usize) -> Result<Vec<Morphism>> {
        let full = crate::exactlin::Subspace::full(self.field, self.hom_dim(a, b));
        Ok(full
            .vectors()?
            .into_iter()
            .map(|coords| Morphism {
                source: a,
                target: b,
                coords,
            })
            .collect())
    }

    fn idx3(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.num_objects();
        (a * n + b) * n + c
    }

    /// Coordinates of `basis_j(b,c) ∘ basis_i(a,b)` in `Hom(a,c)`.
    pub fn compose_basis(&self, a: usize, b: usize, c: usize, i: usize, j: usize) -> &[FieldElem] {
        &self.table[self.idx3(a, b, c)][i * self.hom_dim(b, c) + j]
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism> {
        if f.target != g.source {
            return Err(Error::NotComposable(format!(
                "{} -> {} then {} -> {}",
                self.objects[f.source], self.objects[f.target], self.objects[g.source], self.objects[g.target]
            )));
        }
        let (a, b, c) = (f.source, f.target, g.target);
        let mut out = zero_vector(self.field, self.hom_dim(a, c));
        for (i, fi) in f.coords.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in g.coords.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let s = fi * gj;
                for (o, x) in out.iter_mut().zip(self.compose_basis(a, b, c, i, j)) {
                    if !x.is_zero() {
                        *o = &*o + &(&s * x);
                    }
                }
            }
        }
        Ok(Morphism {
            source: a,
            target: c,
            coords: out,
        })
    }

    /// Matrix of `x ↦ x ∘ f` from `Hom(f.target, c)` to `Hom(f.source, c)`.
    pub fn precompose_matrix(&self, f: &Morphism, c: usize) -> Matrix {
        let (a, b) = (f.source, f.target);
        let cols: Vec<Vec<FieldElem>> = (0..self.hom_dim(b, c))
            .map(|j| {
                self.compose(&self.basis_morphism(b, c, j), f)
                    .expect("composable by construction")
                    .coords
            })
            .collect();
        Matrix::from_columns(self.field, self.hom_dim(a, c), &cols)
    }

    /// Matrix of `x ↦ h ∘ x` from `Hom(a, h.source)` to `Hom(a, h.target)`.
    pub fn postcompose_matrix(&self, h: &Morphism, a: usize) -> Matrix {
        let (b, c) = (h.source, h.target);
        let cols: Vec<Vec<FieldElem>> = (0..self.hom_dim(a, b))
            .map(|i| {
                self.compose(h, &self.basis_morphism(a, b, i))
                    .expect("composable by construction")
                    .coords
            })
            .collect();
        Matrix::from_columns(self.field, self.hom_dim(a, c), &cols)
    }

    /// Evaluates a path word as a morphism.
    pub fn evaluate_word(&self, word: &PathWord) -> Result<Morphism> {
        match word {
            PathWord::Identity(o) => Ok(self.identity(self.object_index(o)?)),
            PathWord::Arrows(names) => {
                let mut iter = names.iter();
                let first = iter.next().ok_or_else(|| Error::BadPresentation("empty path".into()))?;
                let mut acc = self.arrow_morphism(self.arrow_index(first)?);
                for name in iter {
                    let next = self.arrow_morphism(self.arrow_index(name)?);
                    acc = self.compose(&next, &acc)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("1_{}", self.objects[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&i| self.arrows[i].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Renders a morphism as a combination of basis paths, e.g. `a + 2 b.c`.
    pub fn format_morphism(&self, m: &Morphism) -> String {
        let terms: Vec<String> = m
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let name = self.path_name(&self.hom[m.source][m.target][i]);
                if c.is_one() {
                    name
                } else {
                    format!("{c} {name}")
                }
            })
            .collect();
        if terms.is_empty() {
            format!("0_{}_{}", self.objects[m.source], self.objects[m.target])
        } else {
            terms.join(" + ")
        }
    }

    /// Exhaustive check of the identity and associativity laws on basis elements.
    pub fn verify_laws(&self) -> Vec<LawViolation> {
        let n = self.num_objects();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for i in 0..self.hom_dim(a, b) {
                    let f = self.basis_morphism(a, b, i);
                    let left = self.compose(&self.identity(b), &f).expect("composable");
                    if left != f {
                        out.push(LawViolation::LeftIdentity {
                            source: a,
                            target: b,
                            basis: i,
                        });
                    }
                    let right = self.compose(&f, &self.identity(a)).expect("composable");
                    if right != f {
                        out.push(LawViolation::RightIdentity {
                            source: a,
                            target: b,
                            basis: i,
                        });
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for i in 0..self.hom_dim(a, b) {
                            let f = self.basis_morphism(a, b, i);
                            for j in 0..self.hom_dim(b, c) {
                                let g = self.basis_morphism(b, c, j);
                                let gf = self.compose(&g, &f).expect("composable");
                                for k in 0..self.hom_dim(c, d) {
                                    let h = self.basis_morphism(c, d, k);
                                    let lhs = self
                                        .compose(&self.compose(&h, &g).expect("composable"), &f)
                                        .expect("composable");
                                    let rhs = self.compose(&h, &gf).expect("composable");
                                    if lhs != rhs {
                                        out.push(LawViolation::Associativity {
                                            objects: [a, b, c, d],
                                            basis: [i, j, k],
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The opposite category; `opposite` is an involution.
    pub fn opposite(&self) -> Category {
        let n = self.num_objects();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                source: a.target,
                target: a.source,
            })
            .collect();
        let hom: Vec<Vec<Vec<Path>>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        self.hom[b][a]
                            .iter()
                            .map(|p| Path {
                                source: a,
                                target: b,
                                arrows: p.arrows.iter().rev().copied().collect(),
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut table = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // i ∈ Hom_op(a,b) = Hom(b,a), j ∈ Hom_op(b,c) = Hom(c,b);
                    // j ∘_op i = i ∘ j ∈ Hom(c,a).
                    let (dab, dbc) = (self.hom_dim(b, a), self.hom_dim(c, b));
                    let mut entries = Vec::with_capacity(dab * dbc);
                    for i in 0..dab {
                        for j in 0..dbc {
                            entries.push(self.compose_basis(c, b, a, j, i).to_vec());
                        }
                    }
                    table.push(entries);
                }
            }
        }
        Category {
            name,
            field: self.field,
            objects: self.objects.clone(),
            arrows,
            hom,
            arrow_coords: self.arrow_coords.clone(),
            table,
            identities: self.identities.clone(),
            nilpotency_bound: self.nilpotency_bound,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "category {} over {}", self.name, self.field)?;
        let n = self.num_objects();
        for a in 0..n {
            for b in 0..n {
                let basis: Vec<String> = self.hom[a][b].iter().map(|p| self.path_name(p)).collect();
                writeln!(
                    f,
                    "  Hom({}, {}) dim {}: [{}]",
                    self.objects[a],
                    self.objects[b],
                    basis.len(),
                    basis.join(", ")
                )?;
            }
        }
        Ok(())
    }
}

/// Compiles a presentation with the default enumeration limits.
pub fn compile_quiver(p: &CategoryPresentation) -> Result<Category> {
    compile_quiver_with(p, Limits::default())
}

/// Compiles a quiver presentation into Hom bases and a composition table.
///
/// Hom(A,B) is spanned by paths `A -> B` shorter than the nilpotency bound,
/// modulo the two-sided ideal generated by the relations. Paths are ordered
/// by (length, arrow sequence); each relation eliminates its largest path.
pub fn compile_quiver_with(p: &CategoryPresentation, limits: Limits) -> Result<Category> {
    let field = p.field;
    if p.objects.is_empty() {
        return Err(Error::BadPresentation("no objects declared".into()));
    }
    if p.nilpotency_bound == 0 {
        return Err(Error::BadPresentation("nilpotency bound must be at least 1".into()));
    }
    let n = p.objects.len();
    let mut object_ix: HashMap<&str, usize> = HashMap::new();
    for (i, o) in p.objects.iter().enumerate() {
        if object_ix.insert(o.as_str(), i).is_some() {
            return Err(Error::DuplicateName(o.clone()));
        }
    }
    let mut arrows = Vec::with_capacity(p.arrows.len());
    let mut arrow_ix: HashMap<&str, usize> = HashMap::new();
    for a in &p.arrows {
        let source = *object_ix
            .get(a.source.as_str())
            .ok_or_else(|| Error::UnknownObject(a.source.clone()))?;
        let target = *object_ix
            .get(a.target.as_str())
            .ok_or_else(|| Error::UnknownObject(a.target.clone()))?;
        if object_ix.contains_key(a.name.as_str()) || arrow_ix.insert(a.name.as_str(), arrows.len()).is_some() {
            return Err(Error::DuplicateName(a.name.clone()));
        }
        arrows.push(Arrow {
            name: a.name.clone(),
            source,
            target,
        });
    }

    let bound = p.nilpotency_bound;
    // all paths shorter than the bound, grouped by (source, target)
    let mut paths: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
    let mut frontier: Vec<Path> = (0..n)
        .map(|a| Path {
            source: a,
            target: a,
            arrows: Vec::new(),
        })
        .collect();
    let mut count = 0u64;
    for _len in 0..bound {
        let mut next = Vec::new();
        for path in frontier {
            count += 1;
            limits.check("path enumeration", count)?;
            for (ai, arrow) in arrows.iter().enumerate() {
                if arrow.source == path.target {
                    let mut ext = path.arrows.clone();
                    ext.push(ai);
                    next.push(Path {
                        source: path.source,
                        target: arrow.target,
                        arrows: ext,
                    });
                }
            }
            paths[path.source][path.target].push(path);
        }
        frontier = next;
    }
    for row in paths.iter_mut() {
        for list in row.iter_mut() {
            list.sort_by(|x, y| x.arrows.len().cmp(&y.arrows.len()).then(x.arrows.cmp(&y.arrows)));
        }
    }
    let position = |path: &Path| -> Option<usize> {
        paths[path.source][path.target]
            .binary_search_by(|q| q.arrows.len().cmp(&path.arrows.len()).then(q.arrows.cmp(&path.arrows)))
            .ok()
    };

    // relations as (source, target, [(coeff, arrow sequence)])
    let mut rels: Vec<(usize, usize, Vec<(FieldElem, Vec<usize>)>)> = Vec::new();
    for (ri, rel) in p.relations.iter().enumerate() {
        let mut endpoints: Option<(usize, usize)> = None;
        let mut terms = Vec::new();
        for term in &rel.terms {
            if term.coeff.field() != field {
                return Err(Error::BadPresentation(format!(
                    "relation {} has a coefficient outside {field}",
                    ri + 1
                )));
            }
            let (s, t, seq) = match &term.path {
                PathWord::Identity(o) => {
                    let a = *object_ix
                        .get(o.as_str())
                        .ok_or_else(|| Error::UnknownObject(o.clone()))?;
                    (a, a, Vec::new())
                }
                PathWord::Arrows(names) => {
                    if names.is_empty() {
                        return Err(Error::BadPresentation(format!(
                            "relation {} contains an empty path",
                            ri + 1
                        )));
                    }
                    let seq = names
                        .iter()
                        .map(|nm| {
                            arrow_ix
                                .get(nm.as_str())
                                .copied()
                                .ok_or_else(|| Error::UnknownArrow(nm.clone()))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    for w in seq.windows(2) {
                        if arrows[w[0]].target != arrows[w[1]].source {
                            return Err(Error::BadPresentation(format!(
                                "relation {}: arrows `{}` and `{}` do not compose",
                                ri + 1,
                                arrows[w[0]].name,
                                arrows[w[1]].name
                            )));
                        }
                    }
                    (arrows[seq[0]].source, arrows[*seq.last().unwrap()].target, seq)
                }
            };
            match endpoints {
                None => endpoints = Some((s, t)),
                Some(e) if e != (s, t) => {
                    return Err(Error::BadPresentation(format!(
                        "relation {} combines paths that are not parallel",
                        ri + 1
                    )))
                }
                _ => {}
            }
            terms.push((term.coeff.clone(), seq));
        }
        if let Some((s, t)) = endpoints {
            rels.push((s, t, terms));
        }
    }

    // ideal generators u·r·v per (x, y), as coordinate rows over the path list
    let mut generators: Vec<Vec<Vec<Vec<FieldElem>>>> = vec![vec![Vec::new(); n]; n];
    for (s, t, terms) in &rels {
        for x in 0..n {
            for u in &paths[x][*s] {
                for y in 0..n {
                    for v in &paths[*t][y] {
                        if u.len() + v.len() >= bound {
                            continue;
                        }
                        let dim = paths[x][y].len();
                        let mut row = zero_vector(field, dim);
                        let mut nonzero = false;
                        for (c, seq) in terms {
                            let total = u.len() + seq.len() + v.len();
                            if total >= bound {
                                continue;
                            }
                            let mut arrows_seq = u.arrows.clone();
                            arrows_seq.extend(seq);
                            arrows_seq.extend(&v.arrows);
                            let path = Path {
                                source: x,
                                target: y,
                                arrows: arrows_seq,
                            };
                            let k = position(&path).expect("short paths are enumerated");
                            row[k] = &row[k] + c;
                            nonzero = true;
                        }
                        if nonzero && row.iter().any(|e| !e.is_zero()) {
                            generators[x][y].push(row);
                        }
                    }
                }
            }
        }
    }

    // normal forms: eliminate the largest path of every relation row
    let mut hom: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
    // reduction[x][y][k] = coordinates of path k in the Hom basis
    let mut reduction: Vec<Vec<Vec<Vec<FieldElem>>>> = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for y in 0..n {
            let list = &paths[x][y];
            let m = list.len();
            let reversed_rows: Vec<Vec<FieldElem>> = generators[x][y]
                .iter()
                .map(|r| r.iter().rev().cloned().collect())
                .collect();
            let (rr, pivots_rev) = if reversed_rows.is_empty() {
                (Matrix::zeros(field, 0, m), Vec::new())
            } else {
                Matrix::from_rows(field, m, reversed_rows)?.rref_with_pivots()
            };
            let pivot_of: HashMap<usize, usize> = pivots_rev
                .iter()
                .enumerate()
                .map(|(row, &rc)| (m - 1 - rc, row))
                .collect();
            if x == y && pivot_of.contains_key(&0) {
                return Err(Error::DegeneratePresentation(p.objects[x].clone()));
            }
            let basis_positions: Vec<usize> = (0..m).filter(|k| !pivot_of.contains_key(k)).collect();
            let basis_of: HashMap<usize, usize> = basis_positions.iter().enumerate().map(|(bi, &k)| (k, bi)).collect();
            let d = basis_positions.len();
            let red: Vec<Vec<FieldElem>> = (0..m)
                .map(|k| match pivot_of.get(&k) {
                    None => unit_vector(field, d, basis_of[&k]),
                    Some(&row) => {
                        let mut v = zero_vector(field, d);
                        for (&kk, &bi) in &basis_of {
                            let e = rr.get(row, m - 1 - kk);
                            if !e.is_zero() {
                                v[bi] = -e;
                            }
                        }
                        v
                    }
                })
                .collect();
            hom[x][y] = basis_positions.iter().map(|&k| list[k].clone()).collect();
            reduction[x][y] = red;
        }
    }

    let reduce_path = |path: &Path| -> Vec<FieldElem> {
        let d = hom[path.source][path.target].len();
        if path.len() >= bound {
            return zero_vector(field, d);
        }
        let k = position(path).expect("short paths are enumerated");
        reduction[path.source][path.target][k].clone()
    };

    // the identity survives (checked above) and is the smallest path
    debug_assert!((0..n).all(|a| hom[a][a].first().is_some_and(Path::is_empty)));
    let identities = vec![0; n];

    let arrow_coords = arrows
        .iter()
        .enumerate()
        .map(|(i, a)| {
            reduce_path(&Path {
                source: a.source,
                target: a.target,
                arrows: vec![i],
            })
        })
        .collect();

    let mut table = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut entries = Vec::with_capacity(hom[a][b].len() * hom[b][c].len());
                for pi in &hom[a][b] {
                    for qj in &hom[b][c] {
                        let mut seq = pi.arrows.clone();
                        seq.extend(&qj.arrows);
                        entries.push(reduce_path(&Path {
                            source: a,
                            target: c,
                            arrows: seq,
                        }));
                    }
                }
                table.push(entries);
            }
        }
    }

    Ok(Category {
        name: p.name.clone(),
        field,
        objects: p.objects.clone(),
        arrows,
        hom,
        arrow_coords,
        table,
        identities,
        nilpotency_bound: bound,
    })
}
