use std::sync::Arc;

use proptest::prelude::*;
use torsionlab_core::catcore::{compile_quiver, Category, CategoryPresentation};
use torsionlab_core::exactlin::{Field, Matrix, Subspace};
use torsionlab_core::ideals::{enumerate_right_ideals, ideal_intersect, residuate};
use torsionlab_core::torsion::{enumerate_filters, filter_member};
use torsionlab_core::Limits;

fn matrix(p: u32, max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(0..i64::from(p), r * c).prop_map(move |v| {
            let f = Field::Prime(p);
            let rows = v
                .chunks(c)
                .map(|row| row.iter().map(|&x| f.from_i64(x)).collect())
                .collect();
            Matrix::from_rows(f, c, rows).unwrap()
        })
    })
}

fn same_ambient_pair(p: u32) -> impl Strategy<Value = (Subspace, Subspace)> {
    (1usize..=5, 0usize..=5, 0usize..=5).prop_flat_map(move |(n, k1, k2)| {
        let f = Field::Prime(p);
        let gen = move |k: usize| {
            prop::collection::vec(0..i64::from(p), k * n).prop_map(move |v| {
                let rows: Vec<Vec<_>> = v
                    .chunks(n)
                    .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                    .collect();
                Subspace::span(f, n, rows).unwrap()
            })
        };
        (gen(k1), gen(k2))
    })
}

proptest! {
    #[test]
    fn rref_is_idempotent_gf2(m in matrix(2, 6)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn rref_is_idempotent_gf3(m in matrix(3, 6)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn dimension_formula((u, v) in same_ambient_pair(3)) {
        let sum = u.sum(&v).unwrap();
        let meet = u.intersect(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && u.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn equal_spans_store_equal_bases((u, v) in same_ambient_pair(2)) {
        let both = u.sum(&v).unwrap();
        let again = v.sum(&u).unwrap();
        prop_assert_eq!(&both, &again);
        let same = u.is_subspace_of(&v).unwrap() && v.is_subspace_of(&u).unwrap();
        prop_assert_eq!(same, u == v);
    }

    #[test]
    fn solve_agrees_with_image(m in matrix(3, 4), seed in prop::collection::vec(0i64..3, 4)) {
        let f = Field::Prime(3);
        let rhs: Vec<_> = (0..m.rows()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
        match m.solve(&rhs).unwrap() {
            Some(x) => prop_assert_eq!(m.apply(&x).unwrap(), rhs),
            None => prop_assert!(!m.image().contains_vector(&rhs).unwrap()),
        }
    }
}

#[test]
fn rank_nullity_on_every_small_matrix() {
    let f = Field::gf2();
    for rows in 1..=4 {
        for cols in 1..=4 {
            for m in Matrix::enumerate_all(f, rows, cols).unwrap() {
                let (k, i) = m.kernel_image();
                assert_eq!(k.dim() + i.dim(), cols, "{m:?}");
                assert_eq!(i.dim(), m.rank());
            }
        }
    }
}

fn a3() -> Arc<Category> {
    Arc::new(compile_quiver(&CategoryPresentation::linear(3, Field::gf2())).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn filter_membership_is_upward_closed(fi in 0usize..64, c in 0usize..3, x in 0usize..64, y in 0usize..64) {
        let cat = a3();
        let filters = enumerate_filters(&cat, Limits::default()).unwrap();
        let f = &filters[fi % filters.len()];
        let ideals = enumerate_right_ideals(&cat, c, Limits::default()).unwrap();
        let (i, j) = (&ideals[x % ideals.len()], &ideals[y % ideals.len()]);
        if i.is_contained_in(j).unwrap() && filter_member(f, i).unwrap() {
            prop_assert!(filter_member(f, j).unwrap());
        }
    }

    #[test]
    fn residuation_preserves_meets(c in 0usize..3, b in 0usize..3, x in 0usize..64, y in 0usize..64, h in 0usize..8) {
        let cat = a3();
        let ideals = enumerate_right_ideals(&cat, c, Limits::default()).unwrap();
        let (i, j) = (&ideals[x % ideals.len()], &ideals[y % ideals.len()]);
        let homs = cat.morphisms(b, c).unwrap();
        let h = &homs[h % homs.len()];
        let lhs = residuate(&cat, &ideal_intersect(i, j).unwrap(), h).unwrap();
        let rhs = ideal_intersect(&residuate(&cat, i, h).unwrap(), &residuate(&cat, j, h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        if i.is_contained_in(j).unwrap() {
            prop_assert!(residuate(&cat, i, h).unwrap().is_contained_in(&residuate(&cat, j, h).unwrap()).unwrap());
        }
    }
}
