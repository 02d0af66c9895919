use crate::exactlin::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl ArrowDecl {
    pub fn new(name: &str, source: &str, target: &str) -> ArrowDecl {
        ArrowDecl {
            name: name.to_string(),
            source: source.to_string(),
            target: target.to_string(),
        }
    }
}

/// A path written in traversal order: `Arrows(["a", "b"])` is "a, then b",
/// i.e. the composite `b ∘ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathWord {
    Identity(String),
    Arrows(Vec<String>),
}

impl PathWord {
    pub fn arrows(names: &[&str]) -> PathWord {
        PathWord::Arrows(names.iter().map(|s| s.to_string()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: FieldElem,
    pub path: PathWord,
}

/// A formal linear combination of parallel paths declared to be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

impl Relation {
    /// A single path set to zero.
    pub fn zero_path(field: Field, names: &[&str]) -> Relation {
        Relation {
            terms: vec![RelationTerm {
                coeff: field.one(),
                path: PathWord::arrows(names),
            }],
        }
    }

    /// `left - right = 0`.
    pub fn commutes(field: Field, left: &[&str], right: &[&str]) -> Relation {
        Relation {
            terms: vec![
                RelationTerm {
                    coeff: field.one(),
                    path: PathWord::arrows(left),
                },
                RelationTerm {
                    coeff: -&field.one(),
                    path: PathWord::arrows(right),
                },
            ],
        }
    }
}

/// A quiver with relations over a field; paths of length at least
/// `nilpotency_bound` are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryPresentation {
    pub name: String,
    pub field: Field,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Relation>,
    pub nilpotency_bound: usize,
}

impl CategoryPresentation {
    pub fn new(name: &str, field: Field, objects: &[&str], nilpotency_bound: usize) -> Self {
        CategoryPresentation {
            name: name.to_string(),
            field,
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
            relations: Vec::new(),
            nilpotency_bound,
        }
    }

    pub fn arrow(mut self, name: &str, source: &str, target: &str) -> Self {
        self.arrows.push(ArrowDecl::new(name, source, target));
        self
    }

    pub fn relation(mut self, r: Relation) -> Self {
        self.relations.push(r);
        self
    }

    /// Linear quiver `1 -> 2 -> ... -> n` without relations.
    pub fn linear(n: usize, field: Field) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut p = CategoryPresentation::new(&format!("A{n}"), field, &refs, n.max(1));
        for i in 1..n {
            let arrow = if n == 2 { "a".to_string() } else { format!("a{i}") };
            p = p.arrow(&arrow, &names[i - 1], &names[i]);
        }
        p
    }
}
