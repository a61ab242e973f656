use std::sync::Arc;

use superfda::algebra::{renaming_isomorphism, Bidegree, DgaMorphism, Element};
use superfda::brane_cocycles::Families;
use superfda::clifford::CliffordModel;
use superfda::superspace::{fiber_integrate, fiber_product, fiber_reconstruct, super_minkowski, verify_extension_tower, ExtensionStep, Spacetimes, SuperMinkowskiSpec};
use superfda::Error;

#[test]
fn spacetime_sizes_and_d_squared() {
    let s = Spacetimes::shared();
    for (alg, n) in [(&s.m11, 43), (&s.iia10, 42), (&s.iib10, 42), (&s.mink9, 41)] {
        assert_eq!(alg.len(), n, "{}", alg.label());
        assert!(alg.check_d_squared().is_ok());
        assert_eq!(alg.name(0), "e0");
        assert!(alg.name(alg.len() - 1).starts_with("psi"));
    }
    let rebuilt = super_minkowski(&SuperMinkowskiSpec::m11(), CliffordModel::shared()).unwrap();
    assert!(rebuilt == *s.m11);
}

#[test]
fn extension_tower_entries_all_pass() {
    let entries = verify_extension_tower(Spacetimes::shared());
    assert!(entries.len() >= 10);
    for e in &entries {
        assert!(e.is_pass(), "{} {}", e.id, e.detail);
    }
}

#[test]
fn extensions_and_hooks() {
    let s = Spacetimes::shared();
    assert_eq!(s.ext_m.generator_name(), "e10");
    assert_eq!(s.ext_m.result.bidegree(s.ext_m.generator), Bidegree::even(1));
    assert!(s.ext_m.projection().is_valid());
    let hook = s.ext_m.cocycle_map().unwrap();
    assert!(hook.is_valid());
    assert_eq!(hook.apply(&Element::generator(0)), s.c2_m);
    assert!(renaming_isomorphism(&s.ext_m.result, &s.m11, &[]).is_ok());

    // the M2 cocycle defines the next higher extension
    let m2 = Families::shared().mbranes.element("M2").clone();
    let step = ExtensionStep::new(s.m11.clone(), m2, "b3", "m2brane").unwrap();
    assert_eq!(step.result.bidegree(step.generator), Bidegree::even(3));

    // e0 e1 is not closed in 11d
    let bad = s.m11.mul(&s.m11.gen("e0"), &s.m11.gen("e1"));
    assert!(matches!(ExtensionStep::new(s.m11.clone(), bad, "x", "bad"), Err(Error::NotClosed(_))));
}

#[test]
fn fiber_integration_reduces_m2() {
    let s = Spacetimes::shared();
    let f = Families::shared();
    let t = &s.ext_m.result;
    let e = s.ext_m.generator;
    let m2 = s.m11_to_ext().unwrap().apply(f.mbranes.element("M2"));
    let split = fiber_integrate(t, e, &m2);
    let inc = s.ext_m.projection();
    assert_eq!(split.integral, inc.apply(f.iia.element("F1")));
    assert_eq!(split.restriction, inc.apply(f.iia.element("D2")));
    assert_eq!(fiber_reconstruct(t, e, &split), m2);
}

#[test]
fn fiber_integration_trivial_cases() {
    let s = Spacetimes::shared();
    let t = &s.ext_m.result;
    let e = s.ext_m.generator;
    let y = t.mul(&t.gen("e3"), &t.gen("psi5"));
    let free = fiber_integrate(t, e, &y);
    assert_eq!(free.restriction, y);
    assert!(free.integral.is_zero());
    let with_e = fiber_integrate(t, e, &t.mul(&Element::generator(e), &y));
    assert!(with_e.restriction.is_zero());
    assert_eq!(with_e.integral, -y);
}

#[test]
fn doubled_spacetime() {
    let s = Spacetimes::shared();
    let d = &s.doubled;
    assert_eq!(d.doubled.len(), s.mink9.len() + 2);
    assert!(d.doubled.check_d_squared().is_ok());
    assert_eq!(d.doubled.differential(d.doubled.id("e9A").unwrap()), &s.c2_iia);
    assert_eq!(d.doubled.differential(d.doubled.id("e9B").unwrap()), &s.c2_iib);
    assert!(d.p_a.is_valid() && d.p_b.is_valid());
    assert!(s.to_doubled_a.is_valid() && s.to_doubled_b.is_valid());
    let via_a = DgaMorphism::compose(&d.p_a, &s.ext_iia.projection()).unwrap();
    let via_b = DgaMorphism::compose(&d.p_b, &s.ext_iib.projection()).unwrap();
    assert_eq!(via_a, via_b);

    assert!(matches!(fiber_product(&s.ext_iia, &s.ext_iib, "e9A", "e9A", "dup"), Err(Error::NameCollision(_))));
    let other_base = ExtensionStep::new(Arc::clone(&s.iia10), s.c2_m.clone(), "e10", "m").unwrap();
    assert!(fiber_product(&s.ext_iia, &other_base, "a", "b", "mixed").is_err());
}
