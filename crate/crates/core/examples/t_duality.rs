// φ_T on the cyclified K-theory coefficients and the boxed D-brane identities.

use superfda::algebra::DgaMorphism;
use superfda::brane_cocycles::Families;
use superfda::superspace::Spacetimes;
use superfda::tduality::{verify_phi_t, verify_t_duality_theorem, TDualitySuite};

pub struct TDualityTour {
    pub window: String,
    pub phi_t_c2: String,
    pub global_generators: usize,
    pub entries: Vec<(String, bool)>,
}

pub fn run_example() -> TDualityTour {
    let (s, f) = (Spacetimes::shared(), Families::shared());
    let t = TDualitySuite::shared();
    let red_a = t.reduced_on_window(false).unwrap();
    let lhs = DgaMorphism::compose(&red_a, &t.phi_t).unwrap();
    let entries = verify_phi_t(t).into_iter().chain(verify_t_duality_theorem(t, s, f)).map(|e| (e.id.clone(), e.is_pass())).collect();
    TDualityTour {
        window: t.sku.label().to_string(),
        phi_t_c2: t.ku.render(t.phi_t.image("c2").unwrap()),
        global_generators: lhs.images.len(),
        entries,
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("common window {}, phi_T(c2) = {}", r.window, r.phi_t_c2);
    println!("global identity compared on {} generators", r.global_generators);
    for (id, ok) in &r.entries {
        println!("{} {id}", if *ok { "ok  " } else { "FAIL" });
    }
}
