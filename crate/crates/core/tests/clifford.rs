use superfda::clifford::{
    bilinear_element, build_gamma_d9, eta, find_charge_conjugation, gamma_iib, hermiticity_phases, intertwiners, lift_to_d11, CliffordModel, Convention, MatrixQ,
};
use superfda::superspace::{psi_ids, Spacetimes};
use superfda::{Error, GaussianRational};

fn scaled_identity(n: usize, k: i64) -> MatrixQ {
    MatrixQ::identity(n).scale(&GaussianRational::int(k))
}

#[test]
fn nine_dimensional_gammas() {
    let g = build_gamma_d9().unwrap();
    assert_eq!(g.len(), 9);
    assert_eq!(g[0].mul(&g[0]), MatrixQ::identity(16));
    assert_eq!(g[1].mul(&g[1]), scaled_identity(16, -1));
    assert!(g[0].anticommutator(&g[1]).is_zero());
    assert_eq!(g[0].dagger(), g[0]);
    for a in 1..9 {
        assert_eq!(g[a].dagger(), g[a].scale(&GaussianRational::int(-1)));
    }
    for m in &g {
        assert!(m.nonzeros().all(|(_, _, v)| [GaussianRational::one(), -GaussianRational::one(), GaussianRational::i(), -GaussianRational::i()].contains(v)));
    }
}

#[test]
fn eleven_dimensional_lift() {
    let g = lift_to_d11(&build_gamma_d9().unwrap()).unwrap();
    assert_eq!(g.len(), 11);
    for a in 0..11 {
        for b in 0..11 {
            let want = if a == b { scaled_identity(32, -2 * eta(a)) } else { MatrixQ::zero(32, 32) };
            assert_eq!(g[a].anticommutator(&g[b]), want, "({a},{b})");
        }
    }
    assert_eq!(g[9].mul(&g[9]), scaled_identity(32, -1));
    assert_eq!(g[10].mul(&g[10]), scaled_identity(32, -1));
    assert_eq!(g[9].mul(&g[10]), g[10].mul(&g[9]).scale(&GaussianRational::int(-1)));
}

#[test]
fn iib_overlay() {
    let model = CliffordModel::shared();
    let (iib, sigma) = gamma_iib(&model.gammas);
    let i = GaussianRational::i();
    assert_eq!(iib[9], model.gammas[9].mul(&model.gammas[10]).scale(&i));
    assert_eq!(iib[9].mul(&iib[9]), MatrixQ::identity(32));
    assert_eq!(model.gammas[9], iib[9].mul(&model.gammas[10]).scale(&i));
    assert_eq!(sigma[0], model.gammas[9]);
    let g9g10 = model.gammas[9].mul(&model.gammas[10]);
    assert!(g9g10.commutator(&iib[3]).is_zero());
    let g01 = model.antisymmetrized_product(&[0, 1], Convention::Iib).unwrap();
    assert!(g01.commutator(&model.gammas[10]).is_zero());
}

#[test]
fn antisymmetrized_products() {
    let model = CliffordModel::shared();
    let g = &model.gammas;
    assert_eq!(model.antisymmetrized_product(&[0, 1], Convention::Iia).unwrap(), g[0].mul(&g[1]));
    assert_eq!(model.antisymmetrized_product(&[1, 0], Convention::Iia).unwrap(), g[1].mul(&g[0]));
    assert!(model.antisymmetrized_product(&[0, 0], Convention::Iia).unwrap().is_zero());
    assert_eq!(model.antisymmetrized_product(&[9, 10], Convention::Iia).unwrap(), g[9].mul(&g[10]));
    assert!(matches!(model.antisymmetrized_product(&[11], Convention::Iia), Err(Error::IndexOutOfRange { index: 11, len: 11 })));
    assert!(matches!(model.antisymmetrized_product(&[10], Convention::Iib), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn charge_conjugation() {
    let model = CliffordModel::shared();
    let plus = intertwiners(&model.gammas, 1);
    let minus = intertwiners(&model.gammas, -1);
    assert!(plus.len() <= 1 && minus.len() <= 1 && plus.len() + minus.len() >= 1);
    let c = find_charge_conjugation(&model.gammas).unwrap();
    assert_eq!(c, model.charge_conjugation);
    for a in 0..11 {
        let up = model.gamma_upper(Convention::Iia, a).unwrap();
        assert!(c.mul(&up).is_symmetric(), "C Gamma^{a}");
    }
    // invertible: C Cᵀ is a nonzero multiple of the identity for an intertwiner between irreducibles
    let cct = c.mul(&c.transpose());
    assert!(cct.ratio_to(&MatrixQ::identity(32)).is_some_and(|r| !r.is_zero()));
}

#[test]
fn hermiticity_pattern_is_diagnostic() {
    // frozen observation for this basis; the cocycle identities are the gate, not this pattern
    let phases = hermiticity_phases(CliffordModel::shared());
    assert_eq!(phases[0], (0, Some(GaussianRational::int(-1))));
    assert!(phases[1..].iter().all(|(_, p)| p.is_none()));
}

#[test]
fn bilinears() {
    let s = Spacetimes::shared();
    let model = CliffordModel::shared();
    let m11 = &s.m11;
    let psi = psi_ids(m11).unwrap();
    let one = GaussianRational::one();
    for a in [0, 4, 10] {
        let m = model.charge_conjugation.mul(&model.gamma_upper(Convention::Iia, a).unwrap());
        let x = bilinear_element(m11, &m, &psi, &[], &one).unwrap();
        assert_eq!(&x, m11.differential(m11.id(&format!("e{a}")).unwrap()));
    }
    let iia = &s.iia10;
    let g10 = model.charge_conjugation.mul(&model.gammas[10]);
    assert_eq!(bilinear_element(iia, &g10, &psi_ids(iia).unwrap(), &[], &one).unwrap(), s.c2_m);

    let mut anti = MatrixQ::zero(32, 32);
    anti.set(0, 1, one.clone());
    anti.set(1, 0, -one.clone());
    assert!(bilinear_element(m11, &anti, &psi, &[], &one).unwrap().is_zero());
    let sym = g10.add(&g10.transpose()).scale(&GaussianRational::ratio(1, 2));
    assert_eq!(bilinear_element(m11, &g10, &psi, &[], &one).unwrap(), bilinear_element(m11, &sym, &psi, &[], &one).unwrap());
    let three = GaussianRational::int(3);
    assert_eq!(bilinear_element(m11, &g10, &psi, &[], &three).unwrap(), bilinear_element(m11, &g10, &psi, &[], &one).unwrap().scale(&three));
    assert!(matches!(bilinear_element(m11, &MatrixQ::identity(16), &psi, &[], &one), Err(Error::DimensionMismatch(_))));
}
