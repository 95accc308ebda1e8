mod common;

use std::collections::BTreeMap;

use common::{eval, q, runner};
use homsplit::polyring::Monomial;
use homsplit::{parse, Polynomial, Rational};
use proptest::prelude::*;

const VARS: [&str; 3] = ["a", "b", "eta"];

fn poly() -> impl Strategy<Value = Polynomial> {
    let term = (-6i64..=6, 1i64..=4, 0u32..=2, 0u32..=2, 0u32..=1);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(), |acc, (n, d, ea, eb, ee)| {
            let m = Monomial::from_pairs([("a", ea), ("b", eb), ("eta", ee)].into_iter().filter(|(_, e)| *e > 0));
            acc + Polynomial::term(q(n, d), m)
        })
    })
}

fn point() -> impl Strategy<Value = BTreeMap<String, Rational>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), 3).prop_map(|v| {
        VARS.iter()
            .zip(v)
            .map(|(name, (n, d))| (name.to_string(), q(n, d)))
            .collect()
    })
}

#[test]
fn ring_axioms() {
    let mut r = runner(1000);
    r.run(&(poly(), poly(), poly()), |(x, y, z)| {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &Polynomial::zero(), x.clone());
        prop_assert_eq!(&x * &Polynomial::one(), x.clone());
        prop_assert!((&x - &x.clone()).is_zero());
        prop_assert!((&x * &Polynomial::zero()).is_zero());
        Ok(())
    })
    .unwrap();
}

#[test]
fn operations_agree_with_evaluation() {
    let mut r = runner(500);
    r.run(&(poly(), poly(), point()), |(x, y, pt)| {
        prop_assert_eq!(eval(&(&x + &y), &pt), eval(&x, &pt) + eval(&y, &pt));
        prop_assert_eq!(eval(&(&x * &y), &pt), eval(&x, &pt) * eval(&y, &pt));
        prop_assert_eq!(eval(&(-&x), &pt), -eval(&x, &pt));
        Ok(())
    })
    .unwrap();
}

#[test]
fn display_parse_round_trip() {
    let mut r = runner(1000);
    r.run(&poly(), |x| {
        let text = x.to_string();
        prop_assert_eq!(parse(&text).unwrap(), x.clone(), "text {}", text);
        Ok(())
    })
    .unwrap();
}

#[test]
fn specialization_is_a_homomorphism() {
    let mut r = runner(500);
    r.run(&(poly(), poly(), point()), |(x, y, pt)| {
        let s = |p: &Polynomial| p.specialize(&pt);
        prop_assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        prop_assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
        prop_assert_eq!(s(&x).as_constant().unwrap(), eval(&x, &pt));
        Ok(())
    })
    .unwrap();
}

#[test]
fn partial_specialization_composes() {
    let mut r = runner(300);
    r.run(&(poly(), point()), |(x, pt)| {
        let first: BTreeMap<_, _> = pt.iter().take(1).map(|(k, v)| (k.clone(), v.clone())).collect();
        let rest: BTreeMap<_, _> = pt.iter().skip(1).map(|(k, v)| (k.clone(), v.clone())).collect();
        prop_assert_eq!(x.specialize(&first).specialize(&rest), x.specialize(&pt));
        Ok(())
    })
    .unwrap();
}

#[test]
fn canonical_text() {
    let p = parse("1/2*a + a*b - 1/2*a").unwrap();
    assert_eq!(p.to_string(), "a*b");
    assert_eq!(parse("(a+1)^2 - a^2 - 2*a").unwrap(), Polynomial::one());
    assert_eq!(parse("2/4").unwrap().to_string(), "1/2");
}

#[test]
fn imaginary_unit_reduction_matches_complex_arithmetic() {
    // (1 + i)(1 - i) = 2 and (a + b i)^2 = a^2 - b^2 + 2ab i
    let p = parse("(1 + i)*(1 - i)").unwrap().reduce_imaginary("i");
    assert_eq!(p, Polynomial::from_int(2));
    let sq = parse("(a + b*i)^2").unwrap().reduce_imaginary("i");
    assert_eq!(sq, parse("a^2 - b^2 + 2*a*b*i").unwrap());
}
