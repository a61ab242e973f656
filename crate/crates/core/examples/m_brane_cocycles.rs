// μ_M2 and μ_M5 on 11d super-Minkowski: closedness and the Fierz identity dμ_M5 = −½ μ_M2².

use superfda::brane_cocycles::Families;
use superfda::scalar::GaussianRational;

pub struct MBraneTour {
    pub m2_terms: usize,
    pub m5_terms: usize,
    pub m2_closed: bool,
    pub fierz_holds: bool,
}

pub fn run_example() -> MBraneTour {
    let fam = &Families::shared().mbranes;
    let m11 = &fam.spacetime;
    let (m2, m5) = (fam.element("M2"), fam.element("M5"));
    let half = GaussianRational::ratio(1, 2);
    let rhs = m11.mul(m2, m2).scale(&half);
    MBraneTour { m2_terms: m2.len(), m5_terms: m5.len(), m2_closed: m11.is_closed(m2), fierz_holds: (&m11.d(m5) + &rhs).is_zero() }
}

#[allow(dead_code)]
fn main() {
    let r = run_example();
    println!("mu_M2: {} terms, closed {}", r.m2_terms, r.m2_closed);
    println!("mu_M5: {} terms, d mu_M5 + 1/2 mu_M2^2 = 0: {}", r.m5_terms, r.fierz_holds);
}
