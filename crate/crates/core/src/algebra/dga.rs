use std::ops::Deref;

use super::element::{Bidegree, Element, Homogeneity};
use super::table::{DerivationSpec, GeneratorTable};
use crate::error::{Error, Result};

/// Shift of every differential.
pub const D_SHIFT: Bidegree = Bidegree::even(1);

/// A free bigraded-commutative DGA, i.e. the CE algebra of a finite-type super L∞-algebra.
#[derive(Clone, Debug)]
pub struct FreeDga {
    label: String,
    table: GeneratorTable,
    d: Vec<Element>,
}

impl PartialEq for FreeDga {
    /// Generator-for-generator equality: names, bidegrees and differentials. Labels are ignored.
    fn eq(&self, o: &Self) -> bool {
        self.table == o.table && self.d == o.d
    }
}

impl Deref for FreeDga {
    type Target = GeneratorTable;
    fn deref(&self) -> &GeneratorTable {
        &self.table
    }
}

impl FreeDga {
    /// Validates bidegrees of all differentials, then d² = 0 on every generator.
    pub fn declare(label: impl Into<String>, table: GeneratorTable, d: Vec<Element>) -> Result<FreeDga> {
        let dga = Self::declare_unchecked_d2(label, table, d)?;
        dga.check_d_squared()?;
        Ok(dga)
    }

    fn declare_unchecked_d2(label: impl Into<String>, table: GeneratorTable, d: Vec<Element>) -> Result<FreeDga> {
        if d.len() != table.len() {
            return Err(Error::TableMismatch(format!(
                "{} differentials for {} generators",
                d.len(),
                table.len()
            )));
        }
        for (id, v) in d.iter().enumerate() {
            table.check_ids(v)?;
            let expected = table.bidegree(id).shifted(D_SHIFT);
            if !table.is_homogeneous_of(v, expected) {
                let found = match table.homogeneity(v) {
                    Homogeneity::Homogeneous(b) => b.to_string(),
                    _ => "mixed".to_string(),
                };
                return Err(Error::DegreeMismatch {
                    generator: table.name(id).to_string(),
                    expected: expected.to_string(),
                    found,
                });
            }
        }
        Ok(FreeDga { label: label.into(), table, d })
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for id in 0..self.len() {
            let dd = self.d(&self.d[id]);
            if !dd.is_zero() {
                return Err(Error::NotSquareZero {
                    generator: self.name(id).to_string(),
                    residue: self.render_truncated(&dd, 16),
                });
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FreeDga {
        self.label = label.into();
        self
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    pub fn differential(&self, id: usize) -> &Element {
        &self.d[id]
    }

    pub fn differentials(&self) -> &[Element] {
        &self.d
    }

    pub fn derivation(&self) -> DerivationSpec {
        DerivationSpec { shift: D_SHIFT, values: self.d.clone() }
    }

    pub fn d(&self, x: &Element) -> Element {
        self.table.apply_derivation(D_SHIFT, &self.d, x)
    }

    pub fn is_closed(&self, x: &Element) -> bool {
        self.d(x).is_zero()
    }

    /// Free extension by new generators. `diffs` receives the enlarged table and returns
    /// the differentials of the new generators only.
    pub fn adjoin<S: AsRef<str>>(
        &self,
        label: impl Into<String>,
        decls: &[(S, Bidegree)],
        diffs: impl FnOnce(&GeneratorTable) -> Result<Vec<Element>>,
    ) -> Result<FreeDga> {
        let mut table = self.table.clone();
        for (name, b) in decls {
            table.push(name.as_ref(), *b)?;
        }
        let new_d = diffs(&table)?;
        if new_d.len() != decls.len() {
            return Err(Error::TableMismatch("wrong number of new differentials".into()));
        }
        let mut d = self.d.clone();
        d.extend(new_d);
        FreeDga::declare(label, table, d)
    }

    /// Whether the first generators of `self` are exactly those of `base`, with the same differentials.
    pub fn extends(&self, base: &FreeDga) -> bool {
        base.len() <= self.len()
            && (0..base.len()).all(|i| base.decl(i) == self.decl(i) && base.d[i] == self.d[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    #[test]
    fn ls4_and_errors() {
        let t = GeneratorTable::new(&[("g4", Bidegree::even(4)), ("g7", Bidegree::even(7))]).unwrap();
        let g4 = t.gen("g4");
        let d7 = t.mul(&g4, &g4).scale(&GaussianRational::ratio(-1, 2));
        let a = FreeDga::declare("lS4", t, vec![Element::zero(), d7]).unwrap();
        assert!(a.d(&a.gen("g7")).len() == 1);

        let t = GeneratorTable::new(&[("x", Bidegree::even(1))]).unwrap();
        let x = t.gen("x");
        assert!(matches!(FreeDga::declare("bad", t, vec![x]), Err(Error::DegreeMismatch { .. })));

        // d a = b, d b = c with c of degree 3: d^2 a = c != 0
        let t = GeneratorTable::new(&[
            ("a", Bidegree::even(1)),
            ("b", Bidegree::even(2)),
            ("c", Bidegree::even(3)),
        ])
        .unwrap();
        let (b, c) = (t.gen("b"), t.gen("c"));
        let r = FreeDga::declare("bad2", t, vec![b, c, Element::zero()]);
        match r {
            Err(Error::NotSquareZero { generator, residue }) => {
                assert_eq!(generator, "a");
                assert_eq!(residue, "c");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
