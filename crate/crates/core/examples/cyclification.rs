// Cyclifying lS4, then reducing the M-brane cocycle to IIA and oxidizing it back.

use std::sync::Arc;

use superfda::algebra::DgaMorphism;
use superfda::brane_cocycles::{l_s4, Families};
use superfda::cyclification::{cyclify, oxidize, reduce};
use superfda::superspace::Spacetimes;

pub struct CyclificationTour {
    pub cyclified_generators: Vec<String>,
    pub d_g4: String,
    pub reduced_omega2: String,
    pub round_trip: bool,
    pub reduced_valid: bool,
}

pub fn run_example() -> CyclificationTour {
    let s = Spacetimes::shared();
    let f = Families::shared();
    let cyc = cyclify(&Arc::new(l_s4())).unwrap();
    let r = &cyc.result;
    let phi = DgaMorphism::compose(&s.m11_to_ext().unwrap(), &f.mbranes.morphism).unwrap();
    let reduced = reduce(&phi, &s.ext_m, &cyc).unwrap();
    let back = oxidize(&reduced, &s.ext_m, &cyc).unwrap();
    let base = &s.ext_m.base;
    CyclificationTour {
        cyclified_generators: r.generators().iter().map(|g| format!("{}:{}", g.name, g.bidegree)).collect(),
        d_g4: r.render(r.differential(r.id("g4").unwrap())),
        reduced_omega2: base.render_truncated(&reduced.morphism.images[cyc.omega], 3),
        round_trip: back == phi,
        reduced_valid: reduced.morphism.is_valid(),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("cyc(lS4) generators: {}", r.cyclified_generators.join(" "));
    println!("d g4 = {}", r.d_g4);
    println!("omega2 reduces to {}", r.reduced_omega2);
    println!("reduced morphism valid: {}, oxidize(reduce(phi)) = phi: {}", r.reduced_valid, r.round_trip);
}
