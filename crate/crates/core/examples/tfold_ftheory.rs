// The two T-fold pushouts, the F-theory algebra and its S-duality derivation.

use superfda::brane_cocycles::Families;
use superfda::clifford::CliffordModel;
use superfda::superspace::Spacetimes;
use superfda::tduality::{f_theory_algebra, s_duality_derivation, tfold_algebra, verify_tfold, TDualitySuite, TFoldVariant};

pub struct TFoldTour {
    pub tfold_a_df2: String,
    pub ftheory_generators: usize,
    pub sduality_k: String,
    pub tfolds_pass: bool,
}

pub fn run_example() -> TFoldTour {
    let (s, f, model) = (Spacetimes::shared(), Families::shared(), CliffordModel::shared());
    let corr = &TDualitySuite::shared().corr;
    let a = tfold_algebra(TFoldVariant::A, s, f).unwrap().result;
    let ft = f_theory_algebra(s).unwrap().result;
    let sd = s_duality_derivation(s, model).unwrap();
    TFoldTour {
        tfold_a_df2: a.render_truncated(a.differential(a.id("f2").unwrap()), 3),
        ftheory_generators: ft.len(),
        sduality_k: sd.k.to_string(),
        tfolds_pass: [TFoldVariant::A, TFoldVariant::B].into_iter().all(|v| verify_tfold(v, s, f, corr).is_pass()),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("T-fold A: d f2 = {}", r.tfold_a_df2);
    println!("F-theory algebra: {} generators, S-duality constant k = {}", r.ftheory_generators, r.sduality_k);
    println!("both T-fold checks pass: {}", r.tfolds_pass);
}
