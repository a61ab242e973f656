// The IIA and IIB F1/Dp towers, the assembled morphisms out of twisted K-theory, and the
// separately computed top IIA step.

use superfda::brane_cocycles::{report_d10, tower_relations, verify_tower, Families};

pub struct TowerTour {
    pub iia_relations: Vec<String>,
    pub iib_relations: Vec<String>,
    pub failed: Vec<String>,
    pub d10_detail: String,
}

pub fn run_example() -> TowerTour {
    let f = Families::shared();
    let names = |fam| tower_relations(fam).into_iter().map(|r| r.target).collect();
    let entries: Vec<_> = verify_tower(&f.iia).into_iter().chain(verify_tower(&f.iib)).collect();
    TowerTour {
        iia_relations: names(&f.iia),
        iib_relations: names(&f.iib),
        failed: entries.iter().filter(|e| e.is_fail()).map(|e| e.id.clone()).collect(),
        d10_detail: report_d10(&f.iia)[0].detail.clone(),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("IIA: {:?}", r.iia_relations);
    println!("IIB: {:?}", r.iib_relations);
    println!("failed: {:?}", r.failed);
    println!("{}", r.d10_detail);
}
