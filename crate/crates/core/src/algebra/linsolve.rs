//! Exact sparse linear algebra over the Gaussian rationals.
//!
//! Rows are scaled to Gaussian-integer entries and eliminated fraction-free
//! (`r ← p·r − a·pivot`), dividing out the integer content after every step.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

pub type SparseRow = BTreeMap<usize, GaussianRational>;

fn integralize(row: &mut SparseRow) {
    let mut l = BigInt::one();
    for v in row.values() {
        l = l.lcm(&v.denom_lcm());
    }
    let mut g = BigInt::zero();
    let scale = GaussianRational::from(BigRational::from_integer(l));
    for v in row.values_mut() {
        *v = &*v * &scale;
        g = g.gcd(v.re().numer());
        g = g.gcd(v.im().numer());
    }
    if !g.is_zero() && !g.is_one() {
        let inv = GaussianRational::from(BigRational::new(BigInt::one(), g));
        for v in row.values_mut() {
            *v = &*v * &inv;
        }
    }
}

/// Incremental row echelon form.
#[derive(Default)]
pub struct Echelon {
    /// pivot column -> row whose smallest column is the pivot
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    /// Reduces `row` against the current pivots; returns the remainder (possibly empty).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        if row.is_empty() {
            return row;
        }
        integralize(&mut row);
        let mut floor = 0usize;
        loop {
            let next = row.range(floor..).map(|(c, _)| *c).find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { return row };
            let prow = &self.pivots[&c];
            let p = prow[&c].clone();
            let a = row[&c].clone();
            for v in row.values_mut() {
                *v = &*v * &p;
            }
            for (col, pv) in prow {
                let delta = pv * &a;
                let e = row.entry(*col).or_insert_with(GaussianRational::zero);
                *e -= &delta;
            }
            row.retain(|_, v| !v.is_zero());
            if row.is_empty() {
                return row;
            }
            integralize(&mut row);
            floor = c + 1;
        }
    }

    /// Inserts a row; returns false if it was linearly dependent on earlier rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(row);
        match r.keys().next().copied() {
            None => false,
            Some(c) => {
                self.pivots.insert(c, r);
                true
            }
        }
    }

    /// Back substitution with the given values for non-pivot columns below `ncols`.
    pub fn back_substitute(&self, ncols: usize, rhs_col: Option<usize>, free: &BTreeMap<usize, GaussianRational>) -> Vec<GaussianRational> {
        let mut x: Vec<GaussianRational> = vec![GaussianRational::zero(); ncols];
        for (c, v) in free {
            x[*c] = v.clone();
        }
        for (c, row) in self.pivots.iter().rev() {
            if *c >= ncols {
                continue;
            }
            let mut acc = match rhs_col {
                Some(rc) => row.get(&rc).cloned().unwrap_or_else(GaussianRational::zero),
                None => GaussianRational::zero(),
            };
            for (col, v) in row.range(c + 1..) {
                if *col < ncols {
                    acc -= &(v * &x[*col]);
                }
            }
            x[*c] = &acc / &row[c];
        }
        x
    }
}

/// Some solution of `A x = b` (free variables set to zero), or `None` if inconsistent.
/// `rows[i]` holds row `i` of `A` keyed by column.
pub fn solve(rows: &[SparseRow], rhs: &[GaussianRational], ncols: usize) -> Option<Vec<GaussianRational>> {
    let mut ech = Echelon::new();
    for (r, b) in rows.iter().zip(rhs) {
        let mut row = r.clone();
        if !b.is_zero() {
            row.insert(ncols, b.clone());
        }
        ech.insert(row);
    }
    if ech.pivots.contains_key(&ncols) {
        return None;
    }
    Some(ech.back_substitute(ncols, Some(ncols), &BTreeMap::new()))
}

/// A basis of the null space of `A`.
pub fn nullspace(rows: &[SparseRow], ncols: usize) -> Vec<Vec<GaussianRational>> {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r.clone());
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !ech.pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut fv = BTreeMap::new();
            for &g in &free {
                fv.insert(g, if g == f { GaussianRational::one() } else { GaussianRational::zero() });
            }
            ech.back_substitute(ncols, None, &fv)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, GaussianRational::int(v))).collect()
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        // x + y = 3, x - y = 1
        let rows = vec![row(&[(0, 1), (1, 1)]), row(&[(0, 1), (1, -1)])];
        let x = solve(&rows, &[GaussianRational::int(3), GaussianRational::int(1)], 2).unwrap();
        assert_eq!(x, vec![GaussianRational::int(2), GaussianRational::int(1)]);
        let rows = vec![row(&[(0, 1), (1, 1)]), row(&[(0, 2), (1, 2)])];
        assert!(solve(&rows, &[GaussianRational::int(1), GaussianRational::int(3)], 2).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let rows = vec![row(&[(0, 1), (1, 2), (2, 3)])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = &(&v[0] + &(&v[1] * &GaussianRational::int(2))) + &(&v[2] * &GaussianRational::int(3));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn complex_pivots() {
        // i x = 1  =>  x = -i
        let rows = vec![[(0usize, GaussianRational::i())].into_iter().collect::<SparseRow>()];
        let x = solve(&rows, &[GaussianRational::one()], 1).unwrap();
        assert_eq!(x[0], -GaussianRational::i());
    }
}
