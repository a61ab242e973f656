#![allow(dead_code)]
// Randomized algebraic laws of the engine, driven by proptest with a fixed seed.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use superfda::algebra::{DgaMorphism, Element, FreeDga, GeneratorTable, Monomial};
use superfda::brane_cocycles::Families;
use superfda::catalog;
use superfda::cyclification::cyclify;
use superfda::scalar::GaussianRational;
use superfda::superspace::{fiber_reconstruct, Spacetimes};

const SEED: [u8; 32] = *b"superfda-engine-properties-seed!";

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn algebras() -> &'static Vec<(String, Arc<FreeDga>)> {
    static A: OnceLock<Vec<(String, Arc<FreeDga>)>> = OnceLock::new();
    A.get_or_init(|| catalog::ALGEBRAS.iter().map(|n| (n.to_string(), catalog::algebra(n).unwrap())).collect())
}

/// A term: up to three generator picks and a small Gaussian coefficient.
type Term = (Vec<Index>, i8, i8);

fn term() -> impl Strategy<Value = Term> {
    (prop::collection::vec(any::<Index>(), 0..=3), -3i8..=3, -2i8..=2)
}

fn coefficient(re: i8, im: i8) -> GaussianRational {
    let c = &GaussianRational::int(i64::from(re)) + &GaussianRational::imag(i64::from(im), 1);
    if c.is_zero() {
        GaussianRational::one()
    } else {
        c
    }
}

fn build_term(t: &GeneratorTable, (picks, re, im): &Term) -> Element {
    let factors: Vec<Element> = picks.iter().map(|i| Element::generator(i.index(t.len()))).collect();
    t.mul_all(&factors).scale(&coefficient(*re, *im))
}

fn build(t: &GeneratorTable, terms: &[Term]) -> Element {
    let mut x = Element::zero();
    for tm in terms {
        x = &x + &build_term(t, tm);
    }
    x
}

fn elements() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec(term(), 1..=3)
}

fn sign_of_degree(t: &GeneratorTable, x: &Element) -> GaussianRational {
    let n = x.first_term().map(|(m, _)| t.monomial_bidegree(m).n).unwrap_or(0);
    if n % 2 == 0 {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    }
}

pub fn associativity(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(any::<Index>(), elements(), elements(), elements()), |(a, x, y, z)| {
            let alg = &algebras()[a.index(algebras().len())].1;
            let (x, y, z) = (build(alg, &x), build(alg, &y), build(alg, &z));
            prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn graded_commutativity(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(any::<Index>(), term(), term()), |(a, x, y)| {
            let alg = &algebras()[a.index(algebras().len())].1;
            let (x, y) = (build_term(alg, &x), build_term(alg, &y));
            let (Some((mx, _)), Some((my, _))) = (x.first_term(), y.first_term()) else { return Ok(()) };
            let odd = alg.monomial_bidegree(mx).swap_is_odd(alg.monomial_bidegree(my));
            let yx = alg.mul(&y, &x);
            prop_assert_eq!(alg.mul(&x, &y), if odd { -yx } else { yx });
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn leibniz_and_square_zero_for_d(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(any::<Index>(), term(), elements()), |(a, x, y)| {
            let alg = &algebras()[a.index(algebras().len())].1;
            let (x, y) = (build_term(alg, &x), build(alg, &y));
            let lhs = alg.d(&alg.mul(&x, &y));
            let rhs = &alg.mul(&alg.d(&x), &y) + &alg.mul(&x, &alg.d(&y)).scale(&sign_of_degree(alg, &x));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(alg.d(&alg.d(&y)).is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn leibniz_for_s(cases: u32) -> Result<(), String> {
    let cycs: Vec<_> = ["lS4", "bT1", "ku", "sku"].iter().map(|n| cyclify(&catalog::algebra(n).unwrap()).unwrap()).collect();
    runner(cases)
        .run(&(any::<Index>(), term(), elements()), |(a, x, y)| {
            let c = &cycs[a.index(cycs.len())];
            let (h, r) = (&c.base, &c.result);
            let (x, y) = (build_term(h, &x), build(h, &y));
            let lhs = c.s(&h.mul(&x, &y));
            let rhs = &r.mul(&c.s(&x), &y) + &r.mul(&x, &c.s(&y)).scale(&sign_of_degree(h, &x));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(r.d(&r.d(&y)).is_zero());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn fiber_split_reconstructs(cases: u32) -> Result<(), String> {
    let s = Spacetimes::shared();
    let steps = [&s.ext_iia, &s.ext_iib, &s.ext_m];
    runner(cases)
        .run(&(any::<Index>(), elements()), |(a, x)| {
            let step = steps[a.index(steps.len())];
            let x = build(&step.result, &x);
            let split = step.split(&x);
            prop_assert!(!split.restriction.contains_generator(step.generator) && !split.integral.contains_generator(step.generator));
            prop_assert_eq!(fiber_reconstruct(&step.result, step.generator, &split), x);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn composites_of_valid_morphisms_are_valid(cases: u32) -> Result<(), String> {
    let s = Spacetimes::shared();
    let f = Families::shared();
    let into_ext = DgaMorphism::compose(&s.iia_to_ext().unwrap(), &f.iia.morphism).unwrap();
    let into_doubled = DgaMorphism::compose(&s.to_doubled_a, &f.iia.morphism).unwrap();
    if !(into_ext.is_valid() && into_doubled.is_valid()) {
        return Err("composite morphisms fail validation".into());
    }
    let (ku, iia) = (&f.iia.coefficients, &s.iia10);
    runner(cases)
        .run(&(elements(), elements()), |(x, y)| {
            // single generators only: images of ω-products are products of whole brane cocycles
            let x: Vec<Term> = x.into_iter().map(|(p, re, im)| (p.into_iter().take(1).collect(), re, im)).collect();
            let x = build(ku, &x);
            prop_assert_eq!(into_doubled.apply(&x), s.to_doubled_a.apply(&f.iia.morphism.apply(&x)));
            prop_assert_eq!(into_ext.apply(&ku.d(&x)), s.ext_iia.result.d(&into_ext.apply(&x)));
            let y = build(iia, &y);
            let to_ext = s.iia_to_ext().unwrap();
            prop_assert_eq!(to_ext.apply(&iia.mul(&y, &y)), s.ext_iia.result.mul(&to_ext.apply(&y), &to_ext.apply(&y)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn monomial_order_is_canonical(cases: u32) -> Result<(), String> {
    let t = &algebras()[0].1;
    runner(cases)
        .run(&prop::collection::vec(any::<Index>(), 1..=4), |picks| {
            let ids: Vec<usize> = picks.iter().map(|i| i.index(t.len())).collect();
            let forward = t.mul_all(&ids.iter().map(|&i| Element::generator(i)).collect::<Vec<_>>());
            let mut sorted = ids.clone();
            sorted.sort();
            let backward = t.mul_all(&sorted.iter().map(|&i| Element::generator(i)).collect::<Vec<_>>());
            prop_assert_eq!(forward.len(), backward.len());
            if let (Some((m, _)), Some((n, _))) = (forward.first_term(), backward.first_term()) {
                prop_assert_eq!(m, n);
                prop_assert!(m.word_length() as usize == ids.len() || m == &Monomial::unit());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Every law with its case count.
pub const LAWS: &[(&str, fn(u32) -> Result<(), String>, u32)] = &[
    ("associativity", associativity, 96),
    ("graded commutativity", graded_commutativity, 128),
    ("Leibniz and d^2 = 0 for d", leibniz_and_square_zero_for_d, 128),
    ("Leibniz for s", leibniz_for_s, 96),
    ("fiber-split reconstruction", fiber_split_reconstructs, 128),
    ("morphism composition", composites_of_valid_morphisms_are_valid, 24),
    ("canonical monomial order", monomial_order_is_canonical, 96),
];
