use std::collections::HashMap;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::element::{Bidegree, Element, Homogeneity, Monomial};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorDecl {
    pub id: usize,
    pub name: String,
    pub bidegree: Bidegree,
}

/// A derivation given by its values on generators.
#[derive(Clone, Debug)]
pub struct DerivationSpec {
    pub shift: Bidegree,
    pub values: Vec<Element>,
}

/// The generators of a free graded-commutative algebra and its product.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    gens: Vec<GeneratorDecl>,
    by_name: HashMap<String, usize>,
    nbit: Vec<bool>,
    sbit: Vec<bool>,
    exterior: Vec<bool>,
}

impl PartialEq for GeneratorTable {
    fn eq(&self, o: &Self) -> bool {
        self.gens == o.gens
    }
}

impl GeneratorTable {
    pub fn new<S: AsRef<str>>(decls: &[(S, Bidegree)]) -> Result<Self> {
        let mut t = GeneratorTable {
            gens: Vec::new(),
            by_name: HashMap::new(),
            nbit: Vec::new(),
            sbit: Vec::new(),
            exterior: Vec::new(),
        };
        for (name, b) in decls {
            t.push(name.as_ref(), *b)?;
        }
        Ok(t)
    }

    pub(crate) fn push(&mut self, name: &str, b: Bidegree) -> Result<usize> {
        if self.by_name.contains_key(name) {
            return Err(Error::NameCollision(name.to_string()));
        }
        if b.n < 0 {
            return Err(Error::NegativeDegree(name.to_string()));
        }
        let id = self.gens.len();
        self.gens.push(GeneratorDecl { id, name: name.to_string(), bidegree: b });
        self.by_name.insert(name.to_string(), id);
        self.nbit.push(b.n.rem_euclid(2) == 1);
        self.sbit.push(b.parity.bit() == 1);
        self.exterior.push(b.is_exterior());
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.gens
    }

    pub fn decl(&self, id: usize) -> &GeneratorDecl {
        &self.gens[id]
    }

    pub fn name(&self, id: usize) -> &str {
        &self.gens[id].name
    }

    pub fn bidegree(&self, id: usize) -> Bidegree {
        self.gens[id].bidegree
    }

    pub fn is_exterior(&self, id: usize) -> bool {
        self.exterior[id]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn try_id(&self, name: &str) -> Result<usize> {
        self.id(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// The generator called `name`. Panics if absent; used for built-in constructions.
    pub fn gen(&self, name: &str) -> Element {
        let id = self.id(name).unwrap_or_else(|| panic!("no generator named {name}"));
        Element::generator(id)
    }

    pub fn monomial_bidegree(&self, m: &Monomial) -> Bidegree {
        let mut n = 0i32;
        let mut s = 0u32;
        for &(id, e) in m.factors() {
            let b = self.gens[id as usize].bidegree;
            n += b.n * e as i32;
            s += b.parity.bit() * e;
        }
        Bidegree::new(n, super::element::Parity::from_bit(s))
    }

    pub fn homogeneity(&self, x: &Element) -> Homogeneity {
        let mut found: Option<Bidegree> = None;
        for (m, _) in x.terms() {
            let b = self.monomial_bidegree(m);
            match found {
                None => found = Some(b),
                Some(f) if f != b => return Homogeneity::Mixed,
                _ => {}
            }
        }
        match found {
            None => Homogeneity::Zero,
            Some(b) => Homogeneity::Homogeneous(b),
        }
    }

    /// Whether `x` is zero or homogeneous of bidegree `b`.
    pub fn is_homogeneous_of(&self, x: &Element, b: Bidegree) -> bool {
        match self.homogeneity(x) {
            Homogeneity::Zero => true,
            Homogeneity::Homogeneous(h) => h == b,
            Homogeneity::Mixed => false,
        }
    }

    /// Component of total degree `n`.
    pub fn degree_component(&self, x: &Element, n: i32) -> Element {
        x.filter(|m| self.monomial_bidegree(m).n == n)
    }

    pub fn max_degree(&self, x: &Element) -> Option<i32> {
        x.terms().map(|(m, _)| self.monomial_bidegree(m).n).max()
    }

    pub fn check_ids(&self, x: &Element) -> Result<()> {
        match x.max_generator_id() {
            Some(id) if id >= self.len() => {
                Err(Error::TableMismatch(format!("generator id {id} outside table of size {}", self.len())))
            }
            _ => Ok(()),
        }
    }

    /// Canonical product of two monomials: `None` when an exterior generator repeats,
    /// otherwise the product and whether it picked up a sign.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let (fa, fb) = (a.factors(), b.factors());
        if fa.is_empty() {
            return Some((b.clone(), false));
        }
        if fb.is_empty() {
            return Some((a.clone(), false));
        }
        // parity bits of the a-factors not yet emitted
        let mut rn = false;
        let mut rs = false;
        for &(id, e) in fa {
            let odd_e = e % 2 == 1;
            rn ^= odd_e && self.nbit[id as usize];
            rs ^= odd_e && self.sbit[id as usize];
        }
        let mut out: SmallVec<[(u32, u32); 8]> = SmallVec::with_capacity(fa.len() + fb.len());
        let mut neg = false;
        let (mut i, mut j) = (0, 0);
        while i < fa.len() && j < fb.len() {
            let (ia, ea) = fa[i];
            let (ib, eb) = fb[j];
            if ia < ib {
                out.push((ia, ea));
                let odd_e = ea % 2 == 1;
                rn ^= odd_e && self.nbit[ia as usize];
                rs ^= odd_e && self.sbit[ia as usize];
                i += 1;
            } else if ia > ib {
                let odd_e = eb % 2 == 1;
                let bn = odd_e && self.nbit[ib as usize];
                let bs = odd_e && self.sbit[ib as usize];
                neg ^= (bn && rn) ^ (bs && rs);
                out.push((ib, eb));
                j += 1;
            } else {
                if self.exterior[ia as usize] {
                    return None;
                }
                let odd_e = ea % 2 == 1;
                rn ^= odd_e && self.nbit[ia as usize];
                rs ^= odd_e && self.sbit[ia as usize];
                let odd_b = eb % 2 == 1;
                let bn = odd_b && self.nbit[ib as usize];
                let bs = odd_b && self.sbit[ib as usize];
                neg ^= (bn && rn) ^ (bs && rs);
                out.push((ia, ea + eb));
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&fa[i..]);
        out.extend_from_slice(&fb[j..]);
        Some((Monomial(out), neg))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if a.is_zero() || b.is_zero() {
            return Element::zero();
        }
        let mut acc: FxHashMap<Monomial, GaussianRational> = FxHashMap::with_capacity_and_hasher((a.len() * b.len()).min(1 << 20), Default::default());
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((m, neg)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    let c = if neg { -c } else { c };
                    match acc.get_mut(&m) {
                        Some(x) => *x += c,
                        None => {
                            acc.insert(m, c);
                        }
                    }
                }
            }
        }
        Element::from_terms(acc)
    }

    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut r = Element::one();
        for x in xs {
            r = self.mul(&r, x);
        }
        r
    }

    pub fn pow(&self, x: &Element, k: u32) -> Element {
        let mut r = Element::one();
        for _ in 0..k {
            r = self.mul(&r, x);
        }
        r
    }

    /// `m * x * m'` for monomials `m, m'` (with coefficient `c`).
    fn sandwich(&self, left: &Monomial, x: &Element, right: &Monomial, c: &GaussianRational, out: &mut FxHashMap<Monomial, GaussianRational>) {
        for (mx, cx) in x.terms() {
            let Some((m1, n1)) = self.mul_monomials(left, mx) else { continue };
            let Some((m2, n2)) = self.mul_monomials(&m1, right) else { continue };
            let v = c * cx;
            let v = if n1 ^ n2 { -v } else { v };
            match out.get_mut(&m2) {
                Some(y) => *y += v,
                None => {
                    out.insert(m2, v);
                }
            }
        }
    }

    /// Extends `values` to a derivation with the given shift, by the signed Leibniz rule.
    pub fn apply_derivation(&self, shift: Bidegree, values: &[Element], x: &Element) -> Element {
        let shift_n = shift.n.rem_euclid(2) == 1;
        let shift_s = shift.parity.bit() == 1;
        let mut out: FxHashMap<Monomial, GaussianRational> = FxHashMap::default();
        for (m, c) in x.terms() {
            let f = m.factors();
            // running parity of the prefix
            let (mut pn, mut ps) = (false, false);
            for (k, &(id, e)) in f.iter().enumerate() {
                let dv = &values[id as usize];
                let gid = id as usize;
                for j in 0..e {
                    if !dv.is_zero() {
                        let mut left: SmallVec<[(u32, u32); 8]> = SmallVec::from_slice(&f[..k]);
                        if j > 0 {
                            left.push((id, j));
                        }
                        let mut right: SmallVec<[(u32, u32); 8]> = SmallVec::new();
                        if e - 1 - j > 0 {
                            right.push((id, e - 1 - j));
                        }
                        right.extend_from_slice(&f[k + 1..]);
                        let neg = (shift_n && pn) ^ (shift_s && ps);
                        let cc = if neg { -c } else { c.clone() };
                        self.sandwich(&Monomial(left), dv, &Monomial(right), &cc, &mut out);
                    }
                    pn ^= self.nbit[gid];
                    ps ^= self.sbit[gid];
                }
            }
        }
        Element::from_terms(out)
    }

    pub fn derive(&self, d: &DerivationSpec, x: &Element) -> Element {
        self.apply_derivation(d.shift, &d.values, x)
    }

    /// Render in the `.fda` expression syntax.
    pub fn render(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in x.terms().enumerate() {
            let t = self.render_term(m, c);
            if k == 0 {
                s.push_str(&t);
            } else if let Some(rest) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(&t);
            }
        }
        s
    }

    /// Like `render` but elides terms beyond `max_terms`.
    pub fn render_truncated(&self, x: &Element, max_terms: usize) -> String {
        if x.len() <= max_terms {
            return self.render(x);
        }
        let head = Element::from_terms(x.terms().take(max_terms).map(|(m, c)| (m.clone(), c.clone())));
        format!("{} + ... [{} more terms]", self.render(&head), x.len() - max_terms)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .factors()
            .iter()
            .map(|&(id, e)| {
                if e == 1 {
                    self.name(id as usize).to_string()
                } else {
                    format!("{}^{}", self.name(id as usize), e)
                }
            })
            .collect();
        parts.join("*")
    }

    fn render_term(&self, m: &Monomial, c: &GaussianRational) -> String {
        if m.is_unit() {
            return c.to_string();
        }
        let body = self.render_monomial(m);
        if c.is_one() {
            body
        } else if (-c).is_one() {
            format!("-{body}")
        } else {
            format!("{c}*{body}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> GeneratorTable {
        GeneratorTable::new(&[
            ("e0", Bidegree::even(1)),
            ("e1", Bidegree::even(1)),
            ("psi1", Bidegree::odd(1)),
            ("psi2", Bidegree::odd(1)),
            ("g4", Bidegree::even(4)),
        ])
        .unwrap()
    }

    #[test]
    fn koszul_signs() {
        let t = table();
        let (e0, e1, p1, p2) = (t.gen("e0"), t.gen("e1"), t.gen("psi1"), t.gen("psi2"));
        assert_eq!(t.mul(&e1, &e0), -t.mul(&e0, &e1));
        assert_eq!(t.mul(&p2, &p1), t.mul(&p1, &p2));
        assert!(t.mul(&e0, &e0).is_zero());
        assert!(!t.mul(&p1, &p1).is_zero());
        // e (1,even) and psi (1,odd): sign exponent 1*1 + 0*1 = 1
        assert_eq!(t.mul(&p1, &e0), -t.mul(&e0, &p1));
        let g = t.gen("g4");
        assert_eq!(t.render(&t.mul(&g, &g)), "g4^2");
    }

    #[test]
    fn leibniz_with_odd_shift() {
        let t = table();
        // toy derivation: d e0 = psi1 psi1, d e1 = psi1 psi2
        let p1 = t.gen("psi1");
        let p2 = t.gen("psi2");
        let values = vec![t.mul(&p1, &p1), t.mul(&p1, &p2), Element::zero(), Element::zero(), Element::zero()];
        let x = t.mul(&t.gen("e0"), &t.gen("e1"));
        let dx = t.apply_derivation(Bidegree::even(1), &values, &x);
        let expected = &t.mul(&values[0], &t.gen("e1")) - &t.mul(&t.gen("e0"), &values[1]);
        assert_eq!(dx, expected);
        assert!(t.apply_derivation(Bidegree::even(1), &values, &Element::one()).is_zero());
    }
}
