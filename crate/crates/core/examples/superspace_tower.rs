// Building 10d and 11d super-Minkowski as central extensions of 9d by 2-cocycles.

use superfda::superspace::{verify_extension_tower, Spacetimes};

pub struct SuperspaceTour {
    pub generators: Vec<(String, usize)>,
    pub d_e9_iia: String,
    pub entries: Vec<(String, bool)>,
}

pub fn run_example() -> SuperspaceTour {
    let s = Spacetimes::shared();
    let ext = &s.ext_iia.result;
    let generators = [&s.mink9, &s.iia10, &s.iib10, &s.m11].iter().map(|a| (a.label().to_string(), a.len())).collect();
    SuperspaceTour {
        generators,
        d_e9_iia: ext.render_truncated(ext.differential(s.ext_iia.generator), 4),
        entries: verify_extension_tower(s).into_iter().map(|e| (e.id.clone(), e.is_pass())).collect(),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    for (label, n) in &r.generators {
        println!("{label}: {n} generators");
    }
    println!("d e9 = {}", r.d_e9_iia);
    for (id, ok) in &r.entries {
        println!("{} {id}", if *ok { "ok  " } else { "FAIL" });
    }
}
