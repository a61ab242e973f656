use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use crate::scalar::GaussianRational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u32) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Cohomological degree together with the super parity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Bidegree {
    pub n: i32,
    pub parity: Parity,
}

impl Bidegree {
    pub const fn new(n: i32, parity: Parity) -> Self {
        Bidegree { n, parity }
    }

    pub const fn even(n: i32) -> Self {
        Bidegree { n, parity: Parity::Even }
    }

    pub const fn odd(n: i32) -> Self {
        Bidegree { n, parity: Parity::Odd }
    }

    pub fn unit() -> Self {
        Bidegree::even(0)
    }

    /// Squares to zero iff `n + σ` is odd.
    pub fn is_exterior(self) -> bool {
        (self.n.rem_euclid(2) as u32 + self.parity.bit()) % 2 == 1
    }

    pub fn shifted(self, by: Bidegree) -> Bidegree {
        Bidegree {
            n: self.n + by.n,
            parity: Parity::from_bit(self.parity.bit() + by.parity.bit()),
        }
    }

    pub fn times(self, k: u32) -> Bidegree {
        Bidegree { n: self.n * k as i32, parity: Parity::from_bit(self.parity.bit() * k) }
    }

    /// True when swapping homogeneous elements of these bidegrees costs a sign.
    pub fn swap_is_odd(self, other: Bidegree) -> bool {
        let p = self.n.rem_euclid(2) * other.n.rem_euclid(2) + (self.parity.bit() * other.parity.bit()) as i32;
        p % 2 == 1
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.parity)
    }
}

/// One factor `x_id^exp`.
pub type Factor = (u32, u32);

/// Canonical word: factors strictly ascending in generator id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Monomial(pub SmallVec<[Factor; 8]>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn generator(id: usize) -> Self {
        let mut v = SmallVec::new();
        v.push((id as u32, 1));
        Monomial(v)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn exponent_of(&self, id: usize) -> u32 {
        self.0
            .iter()
            .find(|f| f.0 as usize == id)
            .map(|f| f.1)
            .unwrap_or(0)
    }

    pub fn contains(&self, id: usize) -> bool {
        self.exponent_of(id) > 0
    }

    /// Total number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().map(|f| f.1).sum()
    }

    pub fn max_id(&self) -> Option<usize> {
        self.0.last().map(|f| f.0 as usize)
    }
}

/// Finite linear combination of monomials with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Element::scalar(GaussianRational::one())
    }

    pub fn scalar(c: GaussianRational) -> Self {
        Element::term(Monomial::unit(), c)
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn generator(id: usize) -> Self {
        Element::term(Monomial::generator(id), GaussianRational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut e = Element::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, GaussianRational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficient of the empty monomial.
    pub fn unit_coeff(&self) -> GaussianRational {
        self.coeff(&Monomial::unit())
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        for (m, x) in other.terms() {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn contains_generator(&self, id: usize) -> bool {
        self.terms.keys().any(|m| m.contains(id))
    }

    /// Keep only the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Element {
        Element {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn first_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next()
    }

    pub fn max_generator_id(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_id()).max()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (id, e) in m.factors() {
                if *e == 1 {
                    write!(f, "*x{id}")?;
                } else {
                    write!(f, "*x{id}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, o: &Element) -> Element {
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, o: Element) -> Element {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, o: &Element) -> Element {
        let mut r = self.clone();
        for (m, c) in o.terms() {
            r.add_term(m.clone(), -c);
        }
        r
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, o: Element) -> Element {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// Result of a bidegree query on an element.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Homogeneity {
    Zero,
    Homogeneous(Bidegree),
    Mixed,
}
