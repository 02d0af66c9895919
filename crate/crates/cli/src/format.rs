//! Line-oriented text files.
//!
//! A file is a sequence of sections opened by `[category]`, `[module]`,
//! `[ideal]` or `[filter]`. Inside a section every line reads
//! `key [argument] = value`; `#` starts a comment line.
//!
//! ```text
//! [category]
//! name = A2
//! field = GF(2)
//! objects = 1 2
//! bound = 2
//! arrow a = 1 -> 2
//! relation = 1*a.b + 1*c
//!
//! [module]
//! name = P2
//! dims = 1 1
//! arrow a = [[1]]
//!
//! [ideal]
//! name = a
//! target = 2
//! gen = 1*a
//!
//! [filter]
//! name = vanish-1
//! base 1 = whole
//! base 2 = <1*a>
//! ```
//!
//! Paths are in traversal order (`a.b` is `b∘a`), identities are `id(X)`.
//! A matrix for arrow `s -> t` has `dim M(s)` rows and `dim M(t)` columns.

use std::fmt;
use std::sync::Arc;

use torsionlab_core::catcore::{
    ArrowDecl, Category, CategoryPresentation, Morphism, Path, PathWord, Relation, RelationTerm,
};
use torsionlab_core::exactlin::{parse_scalar, Field, FieldElem, Matrix};
use torsionlab_core::ideals::{right_ideal_closure, RightIdeal};
use torsionlab_core::modfun::Module;
use torsionlab_core::torsion::FilterFamily;

/// A parse or resolution error at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionKind {
    Category,
    Module,
    Ideal,
    Filter,
}

impl SectionKind {
    fn header(self) -> &'static str {
        match self {
            SectionKind::Category => "[category]",
            SectionKind::Module => "[module]",
            SectionKind::Ideal => "[ideal]",
            SectionKind::Filter => "[filter]",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub arg: Option<String>,
    pub value: String,
    pub line: usize,
    /// Column of the first character of `value`.
    pub value_column: usize,
}

impl Entry {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::at(self.line, self.value_column, message)
    }
}

#[derive(Clone, Debug)]
pub struct Section {
    pub kind: SectionKind,
    pub line: usize,
    pub entries: Vec<Entry>,
}

impl Section {
    fn single(&self, key: &str) -> Result<&Entry, ParseError> {
        let mut found = self.entries.iter().filter(|e| e.key == key);
        let first = found
            .next()
            .ok_or_else(|| ParseError::at(self.line, 1, format!("{} lacks `{key}`", self.kind.header())))?;
        if let Some(dup) = found.next() {
            return Err(ParseError::at(dup.line, 1, format!("duplicate `{key}`")));
        }
        Ok(first)
    }

    fn name(&self) -> Result<String, ParseError> {
        Ok(self.single("name")?.value.clone())
    }

    fn allow_keys(&self, keys: &[&str]) -> Result<(), ParseError> {
        match self.entries.iter().find(|e| !keys.contains(&e.key.as_str())) {
            Some(e) => Err(ParseError::at(
                e.line,
                1,
                format!("unknown key `{}` in {}", e.key, self.kind.header()),
            )),
            None => Ok(()),
        }
    }
}

/// Splits a file into sections without interpreting values.
pub fn parse_sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if trimmed.starts_with('[') {
            let kind = match trimmed {
                "[category]" => SectionKind::Category,
                "[module]" => SectionKind::Module,
                "[ideal]" => SectionKind::Ideal,
                "[filter]" => SectionKind::Filter,
                other => return Err(ParseError::at(line, indent + 1, format!("unknown section `{other}`"))),
            };
            sections.push(Section {
                kind,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let section = sections
            .last_mut()
            .ok_or_else(|| ParseError::at(line, indent + 1, "entry before any section header"))?;
        let eq = raw
            .find('=')
            .ok_or_else(|| ParseError::at(line, raw.trim_end().len() + 1, "expected `=`"))?;
        let mut head = raw[..eq].split_whitespace();
        let key = head
            .next()
            .ok_or_else(|| ParseError::at(line, indent + 1, "missing key before `=`"))?
            .to_string();
        let arg = head.next().map(str::to_string);
        if let Some(extra) = head.next() {
            let col = raw.find(extra).unwrap_or(0) + 1;
            return Err(ParseError::at(line, col, format!("unexpected `{extra}` before `=`")));
        }
        let after = &raw[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        section.entries.push(Entry {
            key,
            arg,
            value: after.trim().to_string(),
            line,
            value_column: eq + 2 + lead,
        });
    }
    Ok(sections)
}

fn sections_of(text: &str, kind: SectionKind) -> Result<Vec<Section>, ParseError> {
    let all = parse_sections(text)?;
    let picked: Vec<Section> = all.into_iter().filter(|s| s.kind == kind).collect();
    if picked.is_empty() {
        return Err(ParseError::at(1, 1, format!("no {} section", kind.header())));
    }
    Ok(picked)
}

fn core_error(e: &Entry, err: impl fmt::Display) -> ParseError {
    e.error(err.to_string())
}

// ---------------------------------------------------------------- paths

fn parse_word(e: &Entry, s: &str) -> Result<PathWord, ParseError> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix("id(").and_then(|r| r.strip_suffix(')')) {
        return Ok(PathWord::Identity(inner.trim().to_string()));
    }
    let names: Vec<String> = s.split('.').map(|n| n.trim().to_string()).collect();
    if names.iter().any(|n| n.is_empty() || n.contains(char::is_whitespace)) {
        return Err(e.error(format!("malformed path `{s}`")));
    }
    Ok(PathWord::Arrows(names))
}

fn write_word(w: &PathWord) -> String {
    match w {
        PathWord::Identity(o) => format!("id({o})"),
        PathWord::Arrows(names) => names.join("."),
    }
}

/// `c1*p1 + c2*p2`, coefficient optional; `0` is the empty sum.
fn parse_terms(e: &Entry, s: &str, field: Field) -> Result<Vec<RelationTerm>, ParseError> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    s.split('+')
        .map(|t| {
            let t = t.trim();
            let (coeff, path) = match t.split_once('*') {
                Some((c, p)) => (parse_scalar(field, c).map_err(|err| core_error(e, err))?, p),
                None => (field.one(), t),
            };
            Ok(RelationTerm {
                coeff,
                path: parse_word(e, path)?,
            })
        })
        .collect()
}

fn write_terms(terms: &[RelationTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|t| format!("{}*{}", t.coeff, write_word(&t.path)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn path_word(cat: &Category, p: &Path) -> PathWord {
    if p.arrows.is_empty() {
        PathWord::Identity(cat.object_name(p.source).to_string())
    } else {
        PathWord::Arrows(p.arrows.iter().map(|&i| cat.arrows()[i].name.clone()).collect())
    }
}

/// A morphism as a combination of basis paths.
pub fn write_morphism(cat: &Category, m: &Morphism) -> String {
    let terms: Vec<RelationTerm> = m
        .coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| RelationTerm {
            coeff: c.clone(),
            path: path_word(cat, &cat.hom_basis(m.source, m.target)[i]),
        })
        .collect();
    write_terms(&terms)
}

fn parse_morphism(e: &Entry, s: &str, cat: &Category) -> Result<Morphism, ParseError> {
    let terms = parse_terms(e, s, cat.field())?;
    if terms.is_empty() {
        return Err(e.error("a bare `0` has no source and target"));
    }
    let mut acc: Option<Morphism> = None;
    for t in terms {
        let m = cat
            .evaluate_word(&t.path)
            .map_err(|err| core_error(e, err))?
            .scale(&t.coeff);
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m).map_err(|err| core_error(e, err))?,
        });
    }
    Ok(acc.expect("at least one term"))
}

// ----------------------------------------------------------- categories

fn parse_category_section(s: &Section) -> Result<CategoryPresentation, ParseError> {
    s.allow_keys(&["name", "field", "objects", "bound", "arrow", "relation"])?;
    let name = s.name()?;
    let fe = s.single("field")?;
    let field: Field = fe.value.parse().map_err(|err| core_error(fe, err))?;
    let oe = s.single("objects")?;
    let objects: Vec<String> = oe.value.split_whitespace().map(str::to_string).collect();
    if objects.is_empty() {
        return Err(oe.error("the object list is empty"));
    }
    let be = s.single("bound")?;
    let bound: usize = be
        .value
        .parse()
        .map_err(|_| be.error(format!("`{}` is not a path-length bound", be.value)))?;
    let mut p = CategoryPresentation::new(&name, field, &[], bound);
    p.objects = objects;
    for e in s.entries.iter().filter(|e| e.key == "arrow") {
        let arrow = e
            .arg
            .as_deref()
            .ok_or_else(|| e.error("`arrow` needs a name: `arrow a = 1 -> 2`"))?;
        let (src, tgt) = e
            .value
            .split_once("->")
            .ok_or_else(|| e.error("expected `source -> target`"))?;
        for end in [src.trim(), tgt.trim()] {
            if !p.objects.iter().any(|o| o == end) {
                return Err(e.error(format!("arrow `{arrow}` names unknown object `{end}`")));
            }
        }
        p.arrows.push(ArrowDecl::new(arrow, src.trim(), tgt.trim()));
    }
    for e in s.entries.iter().filter(|e| e.key == "relation") {
        let terms = parse_terms(e, &e.value, field)?;
        for t in &terms {
            match &t.path {
                PathWord::Arrows(names) => {
                    if let Some(bad) = names.iter().find(|n| !p.arrows.iter().any(|a| &&a.name == n)) {
                        return Err(e.error(format!("relation names unknown arrow `{bad}`")));
                    }
                }
                PathWord::Identity(o) => {
                    if !p.objects.contains(o) {
                        return Err(e.error(format!("relation names unknown object `{o}`")));
                    }
                }
            }
        }
        p.relations.push(Relation { terms });
    }
    Ok(p)
}

pub fn parse_category(text: &str) -> Result<CategoryPresentation, ParseError> {
    parse_category_section(&sections_of(text, SectionKind::Category)?[0])
}

pub fn serialize_category(p: &CategoryPresentation) -> String {
    let mut out = String::from("[category]\n");
    out += &format!("name = {}\n", p.name);
    out += &format!("field = {}\n", p.field);
    out += &format!("objects = {}\n", p.objects.join(" "));
    out += &format!("bound = {}\n", p.nilpotency_bound);
    for a in &p.arrows {
        out += &format!("arrow {} = {} -> {}\n", a.name, a.source, a.target);
    }
    for r in &p.relations {
        out += &format!("relation = {}\n", write_terms(&r.terms));
    }
    out
}

// -------------------------------------------------------------- modules

fn parse_matrix(e: &Entry, field: Field, rows: usize, cols: usize) -> Result<Matrix, ParseError> {
    let s = e.value.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| e.error("a matrix is written `[[..], [..]]`"))?
        .trim();
    let mut parsed: Vec<Vec<FieldElem>> = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| e.error("expected `[` opening a row"))?;
        let close = body.find(']').ok_or_else(|| e.error("unclosed row"))?;
        let row: Vec<FieldElem> = if body[..close].trim().is_empty() {
            Vec::new()
        } else {
            body[..close]
                .split(',')
                .map(|x| parse_scalar(field, x).map_err(|err| core_error(e, err)))
                .collect::<Result<_, _>>()?
        };
        parsed.push(row);
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(e.error("rows are separated by `,`"));
        }
    }
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        return Err(e.error(format!("expected a {rows}x{cols} matrix")));
    }
    Matrix::from_rows(field, cols, parsed).map_err(|err| core_error(e, err))
}

fn write_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .row_vecs()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn parse_module_section(s: &Section, cat: &Arc<Category>) -> Result<(String, Module), ParseError> {
    s.allow_keys(&["name", "dims", "arrow"])?;
    let name = s.name()?;
    let de = s.single("dims")?;
    let dims: Vec<usize> = de
        .value
        .split_whitespace()
        .map(|d| d.parse().map_err(|_| de.error(format!("`{d}` is not a dimension"))))
        .collect::<Result<_, _>>()?;
    if dims.len() != cat.num_objects() {
        return Err(de.error(format!("expected {} dimensions", cat.num_objects())));
    }
    let mut mats: Vec<Option<Matrix>> = vec![None; cat.arrows().len()];
    for e in s.entries.iter().filter(|e| e.key == "arrow") {
        let an = e.arg.as_deref().ok_or_else(|| e.error("`arrow` needs a name"))?;
        let idx = cat.arrow_index(an).map_err(|err| core_error(e, err))?;
        if mats[idx].is_some() {
            return Err(e.error(format!("arrow `{an}` given twice")));
        }
        let a = &cat.arrows()[idx];
        mats[idx] = Some(parse_matrix(e, cat.field(), dims[a.source], dims[a.target])?);
    }
    let mut filled = Vec::with_capacity(mats.len());
    for (a, m) in cat.arrows().iter().zip(mats) {
        match m {
            Some(m) => filled.push(m),
            None if dims[a.source] * dims[a.target] == 0 => {
                filled.push(Matrix::zeros(cat.field(), dims[a.source], dims[a.target]))
            }
            None => {
                return Err(ParseError::at(
                    s.line,
                    1,
                    format!("missing matrix for arrow `{}`", a.name),
                ))
            }
        }
    }
    let m = Module::from_arrow_matrices(cat.clone(), dims, filled)
        .map_err(|err| ParseError::at(s.line, 1, err.to_string()))?;
    Ok((name, m))
}

/// Every `[module]` section of a file, by name.
pub fn parse_modules(text: &str, cat: &Arc<Category>) -> Result<Vec<(String, Module)>, ParseError> {
    sections_of(text, SectionKind::Module)?
        .iter()
        .map(|s| parse_module_section(s, cat))
        .collect()
}

pub fn parse_module(text: &str, cat: &Arc<Category>) -> Result<Module, ParseError> {
    Ok(parse_modules(text, cat)?.remove(0).1)
}

/// Arrows with an empty matrix are omitted.
pub fn serialize_module(name: &str, m: &Module) -> String {
    let cat = m.category();
    let mut out = String::from("[module]\n");
    out += &format!("name = {name}\n");
    out += &format!(
        "dims = {}\n",
        m.dims().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    );
    for (a, mat) in cat.arrows().iter().zip(m.arrow_matrices()) {
        if mat.rows() * mat.cols() > 0 {
            out += &format!("arrow {} = {}\n", a.name, write_matrix(&mat));
        }
    }
    out
}

// --------------------------------------------------------------- ideals

fn parse_generator_list(e: &Entry, s: &str, cat: &Category, target: usize) -> Result<RightIdeal, ParseError> {
    let s = s.trim();
    if s == "whole" {
        return Ok(RightIdeal::whole(cat, target));
    }
    let inner = s
        .strip_prefix('<')
        .and_then(|r| r.strip_suffix('>'))
        .ok_or_else(|| e.error("expected `whole` or `<gen; gen; ..>`"))?;
    let gens: Vec<Morphism> = inner
        .split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| parse_morphism(e, g, cat))
        .collect::<Result<_, _>>()?;
    check_targets(e, cat, &gens, target)?;
    right_ideal_closure(cat, target, &gens).map_err(|err| core_error(e, err))
}

fn check_targets(e: &Entry, cat: &Category, gens: &[Morphism], target: usize) -> Result<(), ParseError> {
    match gens.iter().find(|g| g.target != target) {
        Some(g) => Err(e.error(format!(
            "generator ends at `{}`, not `{}`",
            cat.object_name(g.target),
            cat.object_name(target)
        ))),
        None => Ok(()),
    }
}

fn write_generator_list(cat: &Category, i: &RightIdeal) -> String {
    if i.is_whole() {
        return "whole".into();
    }
    let gens: Vec<String> = i.generators().iter().map(|g| write_morphism(cat, g)).collect();
    format!("<{}>", gens.join("; "))
}

fn parse_ideal_section(s: &Section, cat: &Category) -> Result<(String, RightIdeal), ParseError> {
    s.allow_keys(&["name", "target", "gen"])?;
    let name = s.name()?;
    let te = s.single("target")?;
    let target = cat.object_index(&te.value).map_err(|err| core_error(te, err))?;
    let mut gens = Vec::new();
    for e in s.entries.iter().filter(|e| e.key == "gen") {
        let g = parse_morphism(e, &e.value, cat)?;
        check_targets(e, cat, std::slice::from_ref(&g), target)?;
        gens.push(g);
    }
    let i = right_ideal_closure(cat, target, &gens).map_err(|err| core_error(te, err))?;
    Ok((name, i))
}

pub fn parse_ideals(text: &str, cat: &Category) -> Result<Vec<(String, RightIdeal)>, ParseError> {
    sections_of(text, SectionKind::Ideal)?
        .iter()
        .map(|s| parse_ideal_section(s, cat))
        .collect()
}

pub fn parse_ideal(text: &str, cat: &Category) -> Result<RightIdeal, ParseError> {
    Ok(parse_ideals(text, cat)?.remove(0).1)
}

/// Generators are the canonical basis of each part.
pub fn serialize_ideal(name: &str, cat: &Category, i: &RightIdeal) -> String {
    let mut out = String::from("[ideal]\n");
    out += &format!("name = {name}\n");
    out += &format!("target = {}\n", cat.object_name(i.target));
    for g in i.generators() {
        out += &format!("gen = {}\n", write_morphism(cat, &g));
    }
    out
}

// -------------------------------------------------------------- filters

fn parse_filter_section(s: &Section, cat: &Category) -> Result<(String, FilterFamily), ParseError> {
    s.allow_keys(&["name", "base"])?;
    let name = s.name()?;
    let mut base: Vec<Vec<RightIdeal>> = vec![Vec::new(); cat.num_objects()];
    for e in s.entries.iter().filter(|e| e.key == "base") {
        let obj = e
            .arg
            .as_deref()
            .ok_or_else(|| e.error("`base` needs an object: `base 2 = <..>`"))?;
        let c = cat.object_index(obj).map_err(|err| core_error(e, err))?;
        base[c].push(parse_generator_list(e, &e.value, cat, c)?);
    }
    let f = FilterFamily::new(cat, base).map_err(|err| ParseError::at(s.line, 1, err.to_string()))?;
    Ok((name, f))
}

pub fn parse_filters(text: &str, cat: &Category) -> Result<Vec<(String, FilterFamily)>, ParseError> {
    sections_of(text, SectionKind::Filter)?
        .iter()
        .map(|s| parse_filter_section(s, cat))
        .collect()
}

pub fn parse_filter(text: &str, cat: &Category) -> Result<FilterFamily, ParseError> {
    Ok(parse_filters(text, cat)?.remove(0).1)
}

pub fn serialize_filter(name: &str, cat: &Category, f: &FilterFamily) -> String {
    let mut out = String::from("[filter]\n");
    out += &format!("name = {name}\n");
    for c in 0..cat.num_objects() {
        for i in f.base(c) {
            out += &format!("base {} = {}\n", cat.object_name(c), write_generator_list(cat, i));
        }
    }
    out
}

fn inline_entry(s: &str) -> Entry {
    Entry {
        key: "witness".into(),
        arg: None,
        value: s.to_string(),
        line: 1,
        value_column: 1,
    }
}

/// `<gen; gen>@X` or `whole@X`, as used in report witnesses.
pub fn write_ideal_inline(cat: &Category, i: &RightIdeal) -> String {
    format!("{}@{}", write_generator_list(cat, i), cat.object_name(i.target))
}

pub fn parse_ideal_inline(cat: &Category, s: &str) -> Result<RightIdeal, ParseError> {
    let e = inline_entry(s);
    let (gens, obj) = s.rsplit_once('@').ok_or_else(|| e.error("expected `<..>@object`"))?;
    let target = cat.object_index(obj.trim()).map_err(|err| core_error(&e, err))?;
    parse_generator_list(&e, gens, cat, target)
}

pub fn parse_morphism_inline(cat: &Category, s: &str) -> Result<Morphism, ParseError> {
    parse_morphism(&inline_entry(s), s, cat)
}
