use std::sync::Arc;

use superfda::algebra::{DgaMorphism, Element};
use superfda::brane_cocycles::{l_s4, ns5_iia, twisted_ku, CoefficientWindow, Families};
use superfda::cyclification::{adjunction_unit, cyclify, cyclify_morphism, free_loop, oxidize, reduce, verify_bijection, SlicedMorphism};
use superfda::superspace::Spacetimes;
use superfda::{Error, GaussianRational};

fn m_morphism_on_ext() -> DgaMorphism {
    let s = Spacetimes::shared();
    DgaMorphism::compose(&s.m11_to_ext().unwrap(), &Families::shared().mbranes.morphism).unwrap()
}

#[test]
fn loop_algebras() {
    let ls4 = Arc::new(l_s4());
    let l = free_loop(&ls4).unwrap();
    assert_eq!(l.len(), 4);
    assert!(l.check_d_squared().is_ok());
    let line = superfda::superspace::line_algebra("w", superfda::algebra::Bidegree::even(3)).unwrap();
    let ll = free_loop(&line).unwrap();
    assert!(ll.differentials().iter().all(Element::is_zero));

    let c = cyclify(&Arc::new(twisted_ku(CoefficientWindow::KU).unwrap())).unwrap();
    assert!(c.result.differential(c.omega).is_zero());
    assert!(c.result.check_d_squared().is_ok());
    let r = &c.result;
    // d w2 = h3 w0 + omega2 s_w2
    assert_eq!(r.render(r.differential(r.id("w2").unwrap())), "h3*w0 + s_w2*omega2");
}

#[test]
fn s_commutes_with_lifted_morphisms() {
    let small = Arc::new(twisted_ku(CoefficientWindow { min: 0, max: 4 }).unwrap());
    let big = Arc::new(twisted_ku(CoefficientWindow::KU).unwrap());
    let f = DgaMorphism::by_name(small.clone(), big.clone(), vec![]).unwrap();
    let (cs, cb) = (cyclify(&small).unwrap(), cyclify(&big).unwrap());
    let lf = cyclify_morphism(&f, &cs, &cb).unwrap();
    let x = small.mul(&small.gen("h3"), &small.gen("w2"));
    assert_eq!(lf.apply(&cs.s(&x)), cb.s(&lf.apply(&x)));
}

#[test]
fn reduction_of_m_branes() {
    let s = Spacetimes::shared();
    let f = Families::shared();
    let cyc = cyclify(&f.mbranes.coefficients).unwrap();
    let reduced = reduce(&m_morphism_on_ext(), &s.ext_m, &cyc).unwrap();
    let img = |n: &str| &reduced.morphism.images[cyc.result.id(n).unwrap()];
    assert_eq!(img("g4"), f.iia.element("D2"));
    assert_eq!(img("s_g4"), f.iia.element("F1"));
    assert_eq!(img("s_g7"), f.iia.element("D4"));
    assert_eq!(*img("g7"), ns5_iia(s, &f.mbranes).unwrap());
    assert_eq!(img("omega2"), f.iia.element("D0"));
    assert!(reduced.morphism.is_valid());
    assert_eq!(oxidize(&reduced, &s.ext_m, &cyc).unwrap(), m_morphism_on_ext());
}

#[test]
fn zero_morphisms_and_the_unit() {
    let s = Spacetimes::shared();
    let h = Arc::new(l_s4());
    let cyc = cyclify(&h).unwrap();
    let zero = DgaMorphism::new(h.clone(), s.ext_m.result.clone(), vec![Element::zero(); h.len()], false).unwrap();
    let r = reduce(&zero, &s.ext_m, &cyc).unwrap();
    for (v, x) in r.morphism.images.iter().enumerate() {
        assert_eq!(x.is_zero(), v != cyc.omega);
    }
    assert!(oxidize(&r, &s.ext_m, &cyc).unwrap().images.iter().all(Element::is_zero));

    let cyc_ext = cyclify(&s.ext_m.result).unwrap();
    let unit = adjunction_unit(&s.ext_m, &cyc_ext).unwrap();
    assert!(unit.curved && unit.is_valid());
    let se = &unit.images[cyc_ext.shift[s.ext_m.generator]];
    assert_eq!(*se, Element::scalar(-GaussianRational::one()));
}

#[test]
fn bijections_for_all_families() {
    let s = Spacetimes::shared();
    let f = Families::shared();
    let m = &f.mbranes;
    let cases = [
        ("m", m_morphism_on_ext(), &s.ext_m, m.coefficients.clone()),
        ("iia", DgaMorphism::compose(&s.iia_to_ext().unwrap(), &f.iia.morphism).unwrap(), &s.ext_iia, f.iia.coefficients.clone()),
    ];
    for (name, phi, ext, h) in cases {
        let entries = verify_bijection(name, &phi, ext, &cyclify(&h).unwrap(), &cyclify(&ext.result).unwrap());
        assert_eq!(entries.len(), 4);
        for e in entries {
            assert!(e.is_pass(), "{name}: {} {}", e.id, e.detail);
        }
    }
}

#[test]
fn error_cases() {
    let s = Spacetimes::shared();
    let h = Arc::new(l_s4());
    let cyc = cyclify(&h).unwrap();

    let cyc_ext = cyclify(&s.ext_m.result).unwrap();
    let unit = adjunction_unit(&s.ext_m, &cyc_ext).unwrap();
    let cyc_base = cyclify(&s.ext_m.base).unwrap();
    assert!(matches!(cyclify_morphism(&unit, &cyc_ext, &cyc_base), Err(Error::CurvedInput(_))));

    let into_m11 = Families::shared().mbranes.morphism.clone();
    assert!(matches!(reduce(&into_m11, &s.ext_m, &cyc), Err(Error::NotAnExtension(_))));

    let r = reduce(&m_morphism_on_ext(), &s.ext_m, &cyclify(&Families::shared().mbranes.coefficients).unwrap()).unwrap();
    let c = cyclify(&Families::shared().mbranes.coefficients).unwrap();
    assert!(matches!(SlicedMorphism::new(r.morphism.clone(), Element::zero(), &c), Err(Error::SliceConditionViolated(_))));
    let mut bad = r.clone();
    bad.morphism.images[c.omega] = Element::zero();
    assert!(matches!(oxidize(&bad, &s.ext_m, &c), Err(Error::SliceConditionViolated(_))));

    let t = superfda::algebra::GeneratorTable::new(&[("x", superfda::algebra::Bidegree::odd(0))]).unwrap();
    let zero_deg = Arc::new(superfda::algebra::FreeDga::declare("x", t, vec![Element::zero()]).unwrap());
    assert!(matches!(cyclify(&zero_deg), Err(Error::IllegalShift(_))));
}
