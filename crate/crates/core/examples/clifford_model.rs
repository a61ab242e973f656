// The 11d gamma matrices, the charge conjugation matrix, and the IIB gamma.

use superfda::clifford::{check_foundation, check_iib_relations, CliffordModel};

pub struct CliffordTour {
    pub spinor_dim: usize,
    pub fingerprint: String,
    pub failed: Vec<String>,
    pub checks: usize,
}

pub fn run_example() -> CliffordTour {
    let model = CliffordModel::shared();
    let entries: Vec<_> = check_foundation(model).into_iter().chain(check_iib_relations(model)).collect();
    CliffordTour {
        spinor_dim: model.dim(),
        fingerprint: model.fingerprint(),
        failed: entries.iter().filter(|e| e.is_fail()).map(|e| e.id.clone()).collect(),
        checks: entries.len(),
    }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("{}x{} gammas, fingerprint {}", r.spinor_dim, r.spinor_dim, &r.fingerprint[..16]);
    println!("{} checks, failed: {:?}", r.checks, r.failed);
}
