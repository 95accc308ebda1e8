mod common;

use common::{q, runner};
use homsplit::sample::{self, grid_matrix, int_grid};
use homsplit::{bundle_specialize, parse, BilinearOp, Bindings, LinearMap, Polynomial, Vector};
use proptest::prelude::*;

fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-3i64..=3, n).prop_map(|v| Vector::from_coords(v.into_iter().map(Polynomial::from_int)))
}

fn scalar() -> impl Strategy<Value = Polynomial> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Polynomial::constant(q(n, d)))
}

/// A symbolic 3-dimensional op with parameter `a` in some coefficients.
fn symbolic_op() -> BilinearOp {
    let p = |s: &str| parse(s).unwrap();
    BilinearOp::from_entries(
        3,
        [
            (1, 1, 2, p("a")),
            (1, 2, 3, p("1/2")),
            (2, 1, 3, p("a^2 - 1")),
            (3, 3, 1, p("-2")),
            (2, 2, 2, p("a + 1")),
        ],
    )
}

#[test]
fn op_is_bilinear() {
    let op = symbolic_op();
    let mut r = runner(300);
    r.run(&(vector(3), vector(3), vector(3), scalar()), |(x, y, z, c)| {
        let lhs = op.apply(&x.add(&y.scale(&c)).unwrap(), &z).unwrap();
        let rhs = op
            .apply(&x, &z)
            .unwrap()
            .add(&op.apply(&y, &z).unwrap().scale(&c))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = op.apply(&z, &x.add(&y.scale(&c)).unwrap()).unwrap();
        let rhs = op
            .apply(&z, &x)
            .unwrap()
            .add(&op.apply(&z, &y).unwrap().scale(&c))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
    .unwrap();
}

#[test]
fn basis_products_read_table_rows() {
    let op = symbolic_op();
    for i in 1..=3 {
        for j in 1..=3 {
            let v = op.apply(&Vector::basis(3, i), &Vector::basis(3, j)).unwrap();
            for k in 1..=3 {
                assert_eq!(v.coord(k), &op.get(i, j, k));
            }
        }
    }
}

#[test]
fn composition_matches_sequential_application() {
    let grid = int_grid(-2, 2);
    let mut rng = sample::rng(common::seed());
    let mut r = runner(200);
    for _ in 0..50 {
        let s = grid_matrix(&mut rng, 3, 2, &grid);
        let t = grid_matrix(&mut rng, 2, 3, &grid);
        r.run(&vector(3), |x| {
            let st = s.compose(&t).unwrap();
            prop_assert_eq!(st.apply(&x).unwrap(), s.apply(&t.apply(&x).unwrap()).unwrap());
            Ok(())
        })
        .unwrap();
    }
}

#[test]
fn map_columns_are_images() {
    let m = LinearMap::from_ints(&[&[1, 2], &[3, 4]]);
    assert_eq!(
        m.apply(&Vector::basis(2, 2)).unwrap(),
        Vector::from_coords([2, 4].map(Polynomial::from_int))
    );
}

#[test]
fn specialize_commutes_with_apply() {
    let op = symbolic_op();
    let mut r = runner(200);
    r.run(&(vector(3), vector(3), -3i64..=3), |(x, y, a)| {
        let mut b = Bindings::new();
        b.insert("a".into(), q(a, 1));
        let before = op.specialize(&b).apply(&x, &y).unwrap();
        let after = op.apply(&x, &y).unwrap().specialize(&b);
        prop_assert_eq!(before, after);
        Ok(())
    })
    .unwrap();
}

#[test]
fn bundle_specialize_rejects_unknown_and_drops_bound() {
    let b = homsplit::io::load_algebra(common::corpus_root().join("dim2/D1.json")).unwrap();
    let mut bind = Bindings::new();
    bind.insert("a".into(), q(3, 1));
    let s = bundle_specialize(&b, &bind).unwrap();
    assert!(s.parameters.is_empty());
    assert!(s.is_parameter_free());
    assert_eq!(s.twist.get(1, 1), &Polynomial::from_int(3));
    bind.insert("zz".into(), q(1, 1));
    assert!(bundle_specialize(&b, &bind).is_err());
}
