// The Hori pull-push through the correspondence space at a small degree cap.

use superfda::algebra::Element;
use superfda::brane_cocycles::Families;
use superfda::tduality::{rr_field, verify_hori_capped, TDualitySuite};

pub struct HoriTour {
    pub poincare: String,
    pub transformed_terms: usize,
    pub hori_of_one_vanishes: bool,
    pub entries: Vec<(String, bool)>,
}

pub fn run_example() -> HoriTour {
    let cap = 6;
    let f = Families::shared();
    let t = TDualitySuite::shared();
    let c = &t.corr;
    let xa = rr_field(&c.string_iia, &f.iia, cap).unwrap();
    let h = c.hori_transform(&xa, cap).unwrap();
    HoriTour {
        poincare: c.gerbe_a.render(&c.poincare),
        transformed_terms: h.len(),
        hori_of_one_vanishes: c.hori_transform(&Element::one(), cap).unwrap().is_zero(),
        entries: verify_hori_capped(t, f, cap).into_iter().map(|e| (e.id.clone(), e.is_pass())).collect(),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("P = {}", r.poincare);
    println!("pull-push of exp(-f2) C^IIA through degree 6: {} terms; hori(1) = 0: {}", r.transformed_terms, r.hori_of_one_vanishes);
    for (id, ok) in &r.entries {
        println!("{} {id}", if *ok { "ok  " } else { "FAIL" });
    }
}
