use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use super::dga::FreeDga;
use super::element::{Bidegree, Element, Homogeneity, Monomial};
use super::linsolve::{self, SparseRow};
use super::table::GeneratorTable;
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Bounds that make a homogeneous monomial basis finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeCaps {
    /// Largest total degree of a basis monomial.
    pub max_degree: i32,
    /// Exponent bound for polynomial generators of degree 0; required if any exist.
    pub degree_zero_exponent: Option<u32>,
}

impl Default for DegreeCaps {
    fn default() -> Self {
        DegreeCaps { max_degree: 4, degree_zero_exponent: None }
    }
}

/// All capped monomials of bidegree `b`, in id-lexicographic order.
pub fn homogeneous_basis(table: &GeneratorTable, b: Bidegree, caps: DegreeCaps) -> Result<Vec<Monomial>> {
    if b.n > caps.max_degree {
        return Err(Error::CapTooSmall(format!("bidegree {b} above the degree cap {}", caps.max_degree)));
    }
    if b.n < 0 {
        return Ok(Vec::new());
    }
    let n = table.len();
    let mut max_exp = Vec::with_capacity(n);
    for id in 0..n {
        let bd = table.bidegree(id);
        let m = if table.is_exterior(id) {
            1
        } else if bd.n == 0 {
            match caps.degree_zero_exponent {
                Some(e) => e,
                None => {
                    return Err(Error::CapTooSmall(format!(
                        "polynomial generator {} of degree 0 needs an exponent cap",
                        table.name(id)
                    )))
                }
            }
        } else {
            (b.n / bd.n) as u32
        };
        max_exp.push(m);
    }
    let mut out = Vec::new();
    let mut cur: SmallVec<[(u32, u32); 8]> = SmallVec::new();
    fn rec(
        table: &GeneratorTable,
        max_exp: &[u32],
        id: usize,
        rem: i32,
        par: u32,
        target_par: u32,
        cur: &mut SmallVec<[(u32, u32); 8]>,
        out: &mut Vec<Monomial>,
    ) {
        if id == max_exp.len() {
            if rem == 0 && par % 2 == target_par {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let bd = table.bidegree(id);
        for e in 0..=max_exp[id] {
            let used = bd.n * e as i32;
            if used > rem {
                break;
            }
            if e > 0 {
                cur.push((id as u32, e));
            }
            rec(table, max_exp, id + 1, rem - used, par + bd.parity.bit() * e, target_par, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    rec(table, &max_exp, 0, b.n, 0, b.parity.bit(), &mut cur, &mut out);
    out.sort();
    Ok(out)
}

/// Finds `x` with `d x = target` inside the capped basis one degree below, if one exists.
pub fn solve_exactness(alg: &FreeDga, target: &Element, caps: DegreeCaps) -> Result<Option<Element>> {
    let b = match alg.homogeneity(target) {
        Homogeneity::Zero => return Ok(Some(Element::zero())),
        Homogeneity::Mixed => {
            return Err(Error::DegreeMismatch {
                generator: "target".into(),
                expected: "homogeneous".into(),
                found: "mixed".into(),
            })
        }
        Homogeneity::Homogeneous(b) => b,
    };
    let below = Bidegree::new(b.n - 1, b.parity);
    if below.n < 0 {
        return Ok(None);
    }
    let basis = homogeneous_basis(alg, below, caps)?;
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut rhs: Vec<GaussianRational> = Vec::new();
    let mut row_index = |m: &Monomial, rows: &mut Vec<SparseRow>, rhs: &mut Vec<GaussianRational>| -> usize {
        *row_of.entry(m.clone()).or_insert_with(|| {
            rows.push(BTreeMap::new());
            rhs.push(GaussianRational::zero());
            rows.len() - 1
        })
    };
    for (j, m) in basis.iter().enumerate() {
        let dm = alg.d(&Element::term(m.clone(), GaussianRational::one()));
        for (mm, c) in dm.terms() {
            let r = row_index(mm, &mut rows, &mut rhs);
            rows[r].insert(j, c.clone());
        }
    }
    for (m, c) in target.terms() {
        let r = row_index(m, &mut rows, &mut rhs);
        rhs[r] = c.clone();
    }
    let Some(x) = linsolve::solve(&rows, &rhs, basis.len()) else { return Ok(None) };
    let sol = Element::from_terms(basis.into_iter().zip(x));
    debug_assert_eq!(alg.d(&sol), *target);
    Ok(Some(sol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        let t = GeneratorTable::new(&[("e0", Bidegree::even(1)), ("e1", Bidegree::even(1))]).unwrap();
        let b = homogeneous_basis(&t, Bidegree::even(2), DegreeCaps::default()).unwrap();
        assert_eq!(b.len(), 1);
        let t = GeneratorTable::new(&[("p1", Bidegree::odd(1)), ("p2", Bidegree::odd(1))]).unwrap();
        let b = homogeneous_basis(&t, Bidegree::even(2), DegreeCaps::default()).unwrap();
        let names: Vec<String> = b.iter().map(|m| t.render_monomial(m)).collect();
        assert_eq!(names, vec!["p1*p2", "p1^2", "p2^2"]);
        let t = GeneratorTable::new(&[("s_psi1", Bidegree::odd(0))]).unwrap();
        let b = homogeneous_basis(&t, Bidegree::odd(0), DegreeCaps::default()).unwrap();
        assert_eq!(b.len(), 1);
        let t = GeneratorTable::new(&[("s_e0", Bidegree::even(0))]).unwrap();
        assert!(matches!(
            homogeneous_basis(&t, Bidegree::even(0), DegreeCaps::default()),
            Err(Error::CapTooSmall(_))
        ));
    }
}
