use std::sync::Arc;

use super::*;
use crate::catcore::{compile_quiver, Category, CategoryPresentation};
use crate::exactlin::{Field, Matrix};
use crate::{Error, Limits};

fn a2() -> Arc<Category> {
    Arc::new(compile_quiver(&CategoryPresentation::linear(2, Field::gf2())).unwrap())
}

fn simple(cat: &Arc<Category>, at: usize) -> Module {
    let dims: Vec<usize> = (0..cat.num_objects()).map(|c| usize::from(c == at)).collect();
    let mats = cat
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(cat.field(), dims[a.source], dims[a.target]))
        .collect();
    Module::from_arrow_matrices(cat.clone(), dims, mats).unwrap()
}

#[test]
fn representables_on_a2() {
    let c = a2();
    let p2 = representable(&c, 1).unwrap();
    assert_eq!(p2.dims(), &[1, 1]);
    assert!(p2.check_functoriality().is_empty());
    assert_eq!(representable(&c, 0).unwrap().dims(), &[1, 0]);
    assert!(Module::zero(c.clone()).check_functoriality().is_empty());
    let pt = Arc::new(compile_quiver(&CategoryPresentation::new("pt", Field::gf2(), &["*"], 1)).unwrap());
    assert_eq!(representable(&pt, 0).unwrap().dims(), &[1]);
}

#[test]
fn violated_zero_relation_is_reported() {
    let f = Field::gf2();
    let cat = Arc::new(compile_quiver(&CategoryPresentation::new("loop", f, &["1"], 2).arrow("x", "1", "1")).unwrap());
    let bad = Module::from_arrow_matrices_unchecked(cat.clone(), vec![1], vec![Matrix::identity(f, 1)]).unwrap();
    let report = bad.check_functoriality();
    assert!(!report.is_empty());
    assert!(report.describe(&cat)[0].contains("f = x, g = x"));
    assert!(matches!(
        Module::from_arrow_matrices(cat, vec![1], vec![Matrix::identity(f, 1)]),
        Err(Error::NotAModule(_))
    ));
}

#[test]
fn hom_spaces_on_a2() {
    let c = a2();
    let p2 = representable(&c, 1).unwrap();
    // Yoneda at C = 2
    assert_eq!(hom_modules(&p2, &p2).unwrap().len(), p2.dim(1));
    assert!(hom_modules(&p2, &Module::zero(c.clone())).unwrap().is_empty());
    assert!(hom_modules(&simple(&c, 1), &simple(&c, 0)).unwrap().is_empty());
    // S1 sits inside P2
    assert_eq!(hom_modules(&simple(&c, 0), &p2).unwrap().len(), 1);
    for phi in hom_modules(&p2, &simple(&c, 1)).unwrap() {
        assert!(phi.is_natural(&p2, &simple(&c, 1)));
    }
}

#[test]
fn generated_submodules_and_quotients() {
    let c = a2();
    let f = c.field();
    let p2 = representable(&c, 1).unwrap();
    let a = Element::new(0, vec![f.one()]);
    let sa = submodule_generated(&p2, &[a]).unwrap();
    assert_eq!(sa.dims(), vec![1, 0]);
    assert!(submodule_generated(&p2, &[Element::new(1, vec![f.zero()])])
        .unwrap()
        .is_zero());
    assert_eq!(
        submodule_generated(&p2, &[Element::new(1, vec![f.one()])]).unwrap(),
        Submodule::whole(&p2)
    );

    let (q, proj) = quotient(&p2, &sa).unwrap();
    assert_eq!(q.dims(), &[0, 1]);
    assert!(proj.is_natural(&p2, &q));
    assert!(proj.is_epi());
    assert_eq!(proj.kernel(), sa);
    assert!(is_isomorphic(&q, &simple(&c, 1), Limits::default()).unwrap());

    let (same, _) = quotient(&p2, &Submodule::zero(&p2)).unwrap();
    assert!(is_isomorphic(&same, &p2, Limits::default()).unwrap());
    assert!(quotient(&p2, &Submodule::whole(&p2)).unwrap().0.is_zero());
}

#[test]
fn coproducts() {
    let c = a2();
    let (empty, inj) = coproduct(&c, &[]).unwrap();
    assert!(empty.is_zero() && inj.is_empty());
    let p2 = representable(&c, 1).unwrap();
    let (one, _) = coproduct(&c, std::slice::from_ref(&p2)).unwrap();
    assert_eq!(one, p2);
    let (s, inj) = coproduct(&c, &[simple(&c, 0), simple(&c, 1)]).unwrap();
    assert_eq!(s.dims(), &[1, 1]);
    assert!(s.arrow_matrices()[0].is_zero());
    assert!(inj[0].is_natural(&simple(&c, 0), &s) && inj[1].is_natural(&simple(&c, 1), &s));
    assert!(!is_isomorphic(&s, &p2, Limits::default()).unwrap());
}

#[test]
fn duals() {
    let c = a2();
    assert!(dual(&Module::zero(c.clone())).is_zero());
    let ds1 = dual(&simple(&c, 0));
    assert_eq!(ds1.dims(), &[1, 0]);
    assert_eq!(ds1.category().name(), format!("{}^op", c.name()));
    let p2 = representable(&c, 1).unwrap();
    let back = dual(&dual(&p2)).rebind(c.clone()).unwrap();
    assert!(is_isomorphic(&back, &p2, Limits::default()).unwrap());
}

#[test]
fn a2_universe_has_five_classes() {
    let c = a2();
    let u = enumerate_universe(&c, 1, Limits::default()).unwrap();
    assert_eq!(u.len(), 5);
    let dims: Vec<Vec<usize>> = u.iter().map(|m| m.dims().to_vec()).collect();
    assert_eq!(dims, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 1]]);
    let p2 = representable(&c, 1).unwrap();
    assert!(u.index_of(&p2).unwrap().is_some());
    let zero_only = enumerate_universe(&c, 0, Limits::default()).unwrap();
    assert_eq!(zero_only.len(), 1);
    assert!(zero_only.get(0).is_zero());
}

#[test]
fn loop_universe_excludes_the_non_nilpotent_action() {
    let f = Field::gf2();
    let cat = Arc::new(compile_quiver(&CategoryPresentation::new("loop", f, &["1"], 2).arrow("x", "1", "1")).unwrap());
    let u = enumerate_universe(&cat, 1, Limits::default()).unwrap();
    assert_eq!(u.len(), 2);
    assert!(u.get(1).arrow_matrices()[0].is_zero());
}

#[test]
fn universe_refuses_above_the_ceiling() {
    let c = a2();
    let err = enumerate_universe(&c, 3, Limits::with_ceiling(10)).unwrap_err();
    assert!(matches!(err, Error::CeilingExceeded { .. }));
}

#[test]
fn yoneda_and_duality_laws_on_the_a2_universe() {
    let c = a2();
    let u = enumerate_universe(&c, 2, Limits::default()).unwrap();
    let reps: Vec<Module> = (0..2).map(|x| representable(&c, x).unwrap()).collect();
    let duals: Vec<Module> = (0..2).map(|x| dual_corepresentable(&c, x).unwrap()).collect();
    for m in u.iter() {
        for x in 0..2 {
            assert_eq!(hom_modules(&reps[x], m).unwrap().len(), m.dim(x));
            assert_eq!(hom_modules(m, &duals[x]).unwrap().len(), m.dim(x));
        }
    }
    // M over the category, N over its opposite: Hom(M, DN) and Hom(N, DM) agree
    let op = Arc::new(c.opposite());
    let u_op = enumerate_universe(&op, 2, Limits::default()).unwrap();
    for m in u.iter() {
        let dm = dual_over(m, op.clone());
        for n in u_op.iter() {
            let dn = dual_over(n, c.clone());
            assert_eq!(hom_modules(m, &dn).unwrap().len(), hom_modules(n, &dm).unwrap().len());
        }
    }
}

#[test]
fn submodule_enumeration_matches_the_oracle() {
    let c = a2();
    let u = enumerate_universe(&c, 2, Limits::default()).unwrap();
    for m in u.iter() {
        let fast = enumerate_submodules(m, Limits::default()).unwrap();
        let slow = enumerate_submodules_bruteforce(m, Limits::default()).unwrap();
        assert_eq!(fast, slow);
    }
}

#[test]
fn injectivity_on_a2() {
    let c = a2();
    let u = enumerate_universe(&c, 1, Limits::default()).unwrap();
    assert!(is_injective_in(&u, &Module::zero(c.clone())).unwrap().injective);
    assert!(
        is_injective_in(&u, &dual_corepresentable(&c, 1).unwrap())
            .unwrap()
            .injective
    );
    assert!(
        is_injective_in(&u, &dual_corepresentable(&c, 0).unwrap())
            .unwrap()
            .injective
    );
    let s1 = is_injective_in(&u, &simple(&c, 0)).unwrap();
    assert!(!s1.injective);
    let w = s1.witness.unwrap();
    assert_eq!(u.get(w.module_index).dims(), &[1, 1]);
    assert!(!w.map.is_zero());
}

#[test]
fn cyclic_decompositions() {
    let c = a2();
    let none = cyclic_decomposition(&Module::zero(c.clone())).unwrap();
    assert!(none.summands.is_empty() && none.surjective);

    let p2 = representable(&c, 1).unwrap();
    let d = cyclic_decomposition(&p2).unwrap();
    assert!(d.surjective);
    let top = d.summands.iter().find(|s| s.object == 1).unwrap();
    assert!(top.kernel.is_zero());

    let s1 = simple(&c, 0);
    let d = cyclic_decomposition(&s1).unwrap();
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.cover.dims(), &[1, 0]);
    assert!(d.surjective);

    for m in enumerate_universe(&c, 2, Limits::default()).unwrap().iter() {
        assert!(cyclic_decomposition(m).unwrap().surjective);
    }
}

#[test]
fn dual_of_s1_is_simple_over_the_opposite() {
    let c = a2();
    let ds1 = dual(&simple(&c, 0));
    let op = ds1.category().clone();
    let s1_op = simple(&op, 0);
    assert!(is_isomorphic(&ds1, &s1_op, Limits::default()).unwrap());
}
