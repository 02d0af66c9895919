use std::sync::Arc;

use super::*;
use crate::catcore::{compile_quiver, gen_stable_tube, CategoryPresentation};
use crate::exactlin::Field;
use crate::ideals::{right_ideal_closure, RightIdeal};
use crate::torsion::{check_axioms, enumerate_filters};

fn linear(n: usize) -> Arc<Category> {
    Arc::new(compile_quiver(&CategoryPresentation::linear(n, Field::gf2())).unwrap())
}

#[test]
fn neighbourhood_bases() {
    let c = linear(2);
    let full = neighborhoods(&c, &FilterFamily::full(&c), 0, 1).unwrap();
    assert!(full.is_discrete());
    let improper = neighborhoods(&c, &FilterFamily::improper(&c), 0, 1).unwrap();
    assert!(improper.is_indiscrete());
    let a = right_ideal_closure(&c, 1, &[c.arrow_morphism(0)]).unwrap();
    let f = FilterFamily::principal(&c, vec![RightIdeal::whole(&c, 0), a]).unwrap();
    let nb = neighborhoods(&c, &f, 0, 1).unwrap();
    assert_eq!(nb.zero_basis.len(), 1);
    assert!(nb.zero_basis[0].is_full() && nb.zero_basis[0].dim() == 1);
    assert!(neighborhoods(&c, &f, 2, 1).is_err());
}

#[test]
fn trivial_filters_give_discrete_and_indiscrete_topologies() {
    let c = linear(2);
    for (f, opens) in [(FilterFamily::full(&c), 4), (FilterFamily::improper(&c), 2)] {
        let r = verify_topology(&c, &f, (0, 0, 1), Limits::default()).unwrap();
        assert!(r.passed() && r.translation.passed());
        assert_eq!(r.open_count, Some(opens));
        assert!(verify_topology_all(&c, &f, Limits::default())
            .unwrap()
            .iter()
            .all(TopologyReport::passed));
    }
}

/// (c) on some triple fails exactly when T3 fails, with enumeration and
/// with the multilinear fallback alike.
fn composition_tracks_t3(c: &Arc<Category>) {
    let fallback = Limits::with_ceiling(0);
    for f in enumerate_filters(c, Limits::default()).unwrap() {
        let t3 = check_axioms(c, &f, Limits::default()).unwrap().t3.passed();
        let reports = verify_topology_all(c, &f, Limits::default()).unwrap();
        assert_eq!(reports.iter().all(|r| r.composition.passed()), t3);
        assert!(reports.iter().all(|r| r.open_sets.passed() && r.addition.passed()));
        assert!(reports.iter().all(|r| r.translation.passed()));
        for r in &reports {
            if let Check::Fail(TopoWitness::Composition { f: f1, g, f2, g2 }) = &r.composition {
                let gf = c.compose(g, f1).unwrap();
                let d = sub(&c.compose(g2, f2).unwrap().coords, &gf.coords);
                assert!(!f.meet(r.c).part(r.a).contains_vector(&d).unwrap());
                assert!(f
                    .meet(r.b)
                    .part(r.a)
                    .contains_vector(&sub(&f2.coords, &f1.coords))
                    .unwrap());
                assert!(f
                    .meet(r.c)
                    .part(r.b)
                    .contains_vector(&sub(&g2.coords, &g.coords))
                    .unwrap());
            }
        }
        let coarse = verify_topology_all(c, &f, fallback).unwrap();
        for (x, y) in reports.iter().zip(&coarse) {
            assert_eq!(x.composition.passed(), y.composition.passed());
            assert!(y.basis_level);
        }
    }
}

#[test]
fn composition_continuity_is_t3_on_a2_and_a3() {
    composition_tracks_t3(&linear(2));
    composition_tracks_t3(&linear(3));
}

#[test]
fn every_linear_filter_gives_a_linear_topology() {
    let c = linear(2);
    for f in enumerate_filters(&c, Limits::default()).unwrap() {
        if check_axioms(&c, &f, Limits::default()).unwrap().is_linear() {
            assert!(verify_topology_all(&c, &f, Limits::default())
                .unwrap()
                .iter()
                .all(TopologyReport::passed));
        }
    }
}

#[test]
fn open_set_gate_falls_back_to_basis_level() {
    let tube = Arc::new(gen_stable_tube(2, 2, Field::gf2()).unwrap().category);
    let f = FilterFamily::full(&tube);
    let limits = Limits {
        open_set_cosets: 0,
        ..Limits::default()
    };
    let (a, c) = (0..tube.num_objects())
        .flat_map(|a| (0..tube.num_objects()).map(move |c| (a, c)))
        .find(|&(a, c)| tube.hom_dim(a, c) > 0)
        .unwrap();
    let r = verify_topology(&tube, &f, (a, a, c), limits).unwrap();
    assert!(r.basis_level && r.open_count.is_none());
    assert!(r.open_sets.passed());
    assert!(matches!(r.translation, Check::NotChecked(_)));
    assert!(r.passed());
}

#[test]
fn rationals_are_refused() {
    let c = Arc::new(compile_quiver(&CategoryPresentation::linear(2, Field::Rational)).unwrap());
    assert!(verify_topology(&c, &FilterFamily::full(&c), (0, 0, 0), Limits::default()).is_err());
}
