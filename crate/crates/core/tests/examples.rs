//! Every example, run through its `run_example` and checked against frozen outputs.

macro_rules! example {
    ($m:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $m {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(engine_basics, "engine_basics.rs");
example!(clifford_model, "clifford_model.rs");
example!(m_brane_cocycles, "m_brane_cocycles.rs");
example!(type_ii_towers, "type_ii_towers.rs");
example!(superspace_tower, "superspace_tower.rs");
example!(cyclification, "cyclification.rs");
example!(t_duality, "t_duality.rs");
example!(hori_formula, "hori_formula.rs");
example!(tfold_ftheory, "tfold_ftheory.rs");
example!(fda_format, "fda_format.rs");
example!(verify_suite, "verify_suite.rs");

#[test]
fn engine_basics_example() {
    let r = engine_basics::run_example();
    assert_eq!(r.square_of_odd, "t^2");
    assert_eq!(r.d_of_product, "x*y*t");
    assert_eq!(r.primitive.as_deref(), Some("z"));
    assert!(r.closed_but_not_exact);
}

#[test]
fn clifford_model_example() {
    let r = clifford_model::run_example();
    assert_eq!(r.spinor_dim, 32);
    assert_eq!(r.fingerprint.len(), 64);
    assert!(r.failed.is_empty(), "{:?}", r.failed);
    assert_eq!(r.checks, 6);
}

#[test]
fn m_brane_example() {
    let r = m_brane_cocycles::run_example();
    assert_eq!((r.m2_terms, r.m5_terms), (912, 7840));
    assert!(r.m2_closed && r.fierz_holds);
}

#[test]
fn type_ii_towers_example() {
    let r = type_ii_towers::run_example();
    assert_eq!(r.iia_relations, ["F1", "D0", "D2", "D4", "D6", "D8", "D10"]);
    assert_eq!(r.iib_relations, ["F1", "D1", "D3", "D5", "D7", "D9"]);
    assert!(r.failed.is_empty(), "{:?}", r.failed);
    assert!(r.d10_detail.contains("3072 terms") && r.d10_detail.contains("equal: true"));
}

#[test]
fn superspace_example() {
    let r = superspace_tower::run_example();
    let counts: Vec<usize> = r.generators.iter().map(|(_, n)| *n).collect();
    assert_eq!(counts, [41, 42, 42, 43]);
    assert!(r.d_e9_iia.starts_with("-psi1^2 - psi2^2"));
    assert_eq!(r.entries.len(), 10);
    assert!(r.entries.iter().all(|(_, ok)| *ok));
}

#[test]
fn cyclification_example() {
    let r = cyclification::run_example();
    assert_eq!(r.cyclified_generators, ["g4:(4,even)", "g7:(7,even)", "s_g4:(3,even)", "s_g7:(6,even)", "omega2:(2,even)"]);
    assert_eq!(r.d_g4, "s_g4*omega2");
    assert!(r.reduced_omega2.starts_with("-2*i*psi1*psi17"));
    assert!(r.round_trip && r.reduced_valid);
}

#[test]
fn t_duality_example() {
    let r = t_duality::run_example();
    assert_eq!(r.window, "cycSKU[0,9]");
    assert_eq!(r.phi_t_c2, "ct2");
    assert_eq!(r.global_generators, 13);
    assert_eq!(r.entries.len(), 10);
    assert!(r.entries.iter().all(|(_, ok)| *ok), "{:?}", r.entries);
}

#[test]
fn hori_example() {
    let r = hori_formula::run_example();
    assert_eq!(r.poincare, "e9A*e9B");
    assert_eq!(r.transformed_terms, 2240);
    assert!(r.hori_of_one_vanishes);
    assert!(r.entries.iter().all(|(_, ok)| *ok), "{:?}", r.entries);
}

#[test]
fn tfold_ftheory_example() {
    let r = tfold_ftheory::run_example();
    assert!(r.tfold_a_df2.starts_with("2*e0*psi1*psi12"));
    assert_eq!(r.ftheory_generators, 44);
    assert_eq!(r.sduality_k, "-1/2");
    assert!(r.tfolds_pass);
}

#[test]
fn fda_format_example() {
    let r = fda_format::run_example();
    assert_eq!(r.entries.len(), 3);
    assert!(r.entries.iter().all(|(_, ok)| *ok));
    assert!(r.matches_builtin && r.round_trip);
    assert!(r.diagnostic.starts_with("3:5: error: degree mismatch on x"));
}

#[test]
fn verify_suite_example() {
    let r = verify_suite::run_example();
    assert_eq!(r.ids.len(), 10);
    assert!(r.all_pass);
    let v: serde_json::Value = serde_json::from_str(&r.json).unwrap();
    assert_eq!(v["summary"]["pass"], 10);
}
