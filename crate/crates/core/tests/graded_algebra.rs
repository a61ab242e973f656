use std::sync::Arc;

use superfda::algebra::{homogeneous_basis, solve_exactness, Bidegree, DegreeCaps, DerivationSpec, DgaMorphism, Element, FreeDga, GeneratorTable};
use superfda::brane_cocycles::Families;
use superfda::superspace::Spacetimes;
use superfda::tduality::{ku_display, phi_t};
use superfda::{Error, GaussianRational};

fn table(decls: &[(&str, Bidegree)]) -> GeneratorTable {
    GeneratorTable::new(decls).unwrap()
}

#[test]
fn declaring_algebras() {
    let t = table(&[("g4", Bidegree::even(4)), ("g7", Bidegree::even(7))]);
    let d7 = t.mul(&t.gen("g4"), &t.gen("g4")).scale(&GaussianRational::ratio(-1, 2));
    let ls4 = FreeDga::declare("lS4", t, vec![Element::zero(), d7]).unwrap();
    assert_eq!(ls4.render(ls4.differential(1)), "-1/2*g4^2");

    let line = FreeDga::declare("bR", table(&[("omega2", Bidegree::even(2))]), vec![Element::zero()]).unwrap();
    assert!(line.check_d_squared().is_ok());

    let t = table(&[("x", Bidegree::even(1))]);
    assert!(t.mul(&t.gen("x"), &t.gen("x")).is_zero());
    let x = t.gen("x");
    assert!(matches!(FreeDga::declare("bad", t, vec![x]), Err(Error::DegreeMismatch { .. })));
}

#[test]
fn not_square_zero_names_the_generator() {
    let t = table(&[("a", Bidegree::even(2)), ("b", Bidegree::even(3)), ("c", Bidegree::even(4))]);
    let (a, b) = (t.gen("a"), t.gen("b"));
    let err = FreeDga::declare("bad", t, vec![Element::zero(), Element::zero(), b.clone()]).unwrap_err();
    assert!(matches!(err, Error::DegreeMismatch { .. }));
    let t = table(&[("a", Bidegree::even(2)), ("b", Bidegree::even(3)), ("c", Bidegree::even(4))]);
    let (aa, ab) = (t.mul(&a, &a), t.mul(&a, &b));
    let err = FreeDga::declare("bad", t, vec![Element::zero(), aa, ab]).unwrap_err();
    match err {
        Error::NotSquareZero { generator, residue } => {
            assert_eq!(generator, "c");
            assert_eq!(residue, "a^3");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn koszul_signs_on_super_minkowski() {
    let m11 = &Spacetimes::shared().m11;
    let (e0, e1, p1, p2) = (m11.gen("e0"), m11.gen("e1"), m11.gen("psi1"), m11.gen("psi2"));
    assert_eq!(m11.mul(&e1, &e0), -m11.mul(&e0, &e1));
    assert_eq!(m11.mul(&p2, &p1), m11.mul(&p1, &p2));
    assert!(m11.mul(&e0, &e0).is_zero());
    assert_eq!(m11.render(&m11.mul(&p1, &p1)), "psi1^2");
}

#[test]
fn derivations() {
    let m11 = &Spacetimes::shared().m11;
    let (e0, e1) = (m11.gen("e0"), m11.gen("e1"));
    let want = &m11.mul(m11.differential(m11.id("e0").unwrap()), &e1) - &m11.mul(&e0, m11.differential(m11.id("e1").unwrap()));
    assert_eq!(m11.d(&m11.mul(&e0, &e1)), want);
    assert!(m11.d(&Element::one()).is_zero());
    assert!(m11.derive(&DerivationSpec { shift: Bidegree::even(1), values: m11.differentials().to_vec() }, &Element::one()).is_zero());
}

#[test]
fn morphism_checks() {
    let ku = Arc::new(ku_display(false, -1, 4).unwrap());
    assert!(DgaMorphism::identity(ku.clone()).is_valid());
    let (fwd, bwd) = phi_t(&ku, &Arc::new(ku_display(true, -1, 4).unwrap())).unwrap();
    assert!(fwd.is_valid() && bwd.is_valid());
    assert!(DgaMorphism::compose(&bwd, &fwd).unwrap().is_identity());

    let killed = DgaMorphism::by_name(ku.clone(), ku.clone(), vec![("c2", Element::zero())]).unwrap();
    let defect = killed.validate().unwrap_err();
    assert_eq!(defect.generator, "h3");
    // image(d h3) − d(image h3) = 0 − (−c2 ct2)
    assert_eq!(ku.render(&defect.difference), "c2*ct2");

    let other = Arc::new(ku_display(false, -1, 2).unwrap());
    let wrong = DgaMorphism::identity(other);
    assert!(matches!(DgaMorphism::compose(&wrong, &fwd), Err(Error::TableMismatch(_))));
    assert_eq!(DgaMorphism::compose(&DgaMorphism::identity(ku.clone()), &fwd).unwrap(), fwd);
}

#[test]
fn adjoining_generators() {
    let s = Spacetimes::shared();
    let c2 = s.c2_iia.clone();
    let ext = s.mink9.adjoin("ext", &[("e9", Bidegree::even(1))], |_| Ok(vec![c2])).unwrap();
    assert!(ext.extends(&s.mink9));
    assert!(ext == *s.ext_iia.result);

    let m2 = Families::shared().mbranes.element("M2").clone();
    let m2brane = s.m11.adjoin("m2brane", &[("b3", Bidegree::even(3))], |_| Ok(vec![m2])).unwrap();
    assert_eq!(m2brane.len(), s.m11.len() + 1);
    assert!(matches!(s.m11.adjoin("dup", &[("e0", Bidegree::even(1))], |_| Ok(vec![Element::zero()])), Err(Error::NameCollision(_))));
}

#[test]
fn exactness_and_bases() {
    let m11 = &Spacetimes::shared().m11;
    assert_eq!(solve_exactness(m11, &Element::zero(), DegreeCaps::default()).unwrap(), Some(Element::zero()));
    let de0 = m11.differential(m11.id("e0").unwrap()).clone();
    let x = solve_exactness(m11, &de0, DegreeCaps::default()).unwrap().unwrap();
    assert_eq!(m11.d(&x), de0);

    let t = table(&[("e0", Bidegree::even(1)), ("e1", Bidegree::even(1))]);
    let b = homogeneous_basis(&t, Bidegree::even(2), DegreeCaps::default()).unwrap();
    assert_eq!(b.len(), 1);
    let t = table(&[("psi1", Bidegree::odd(1)), ("psi2", Bidegree::odd(1))]);
    let b = homogeneous_basis(&t, Bidegree::even(2), DegreeCaps::default()).unwrap();
    let rendered: Vec<String> = b.iter().map(|m| t.render_monomial(m)).collect();
    assert_eq!(rendered, ["psi1*psi2", "psi1^2", "psi2^2"]);
    let t = table(&[("s_psi1", Bidegree::odd(0))]);
    assert_eq!(homogeneous_basis(&t, Bidegree::odd(0), DegreeCaps::default()).unwrap().len(), 1);
}
