use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational kept as a reduced `i64` fraction when it fits, else as a `BigRational`.
/// Canonical: `S(n, d)` has `d > 0`, `gcd(n, d) = 1`, `n > i64::MIN`; `B` only when `S` cannot hold the value.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Q {
    S(i64, i64),
    B(Box<BigRational>),
}

impl Default for Q {
    fn default() -> Self {
        Q::S(0, 1)
    }
}

fn fits(x: i128) -> Option<i64> {
    i64::try_from(x).ok().filter(|&v| v != i64::MIN)
}

impl Q {
    const ZERO: Q = Q::S(0, 1);

    fn from_i128(n: i128, d: i128) -> Q {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (fits(n), fits(d)) {
            (Some(n), Some(d)) => Q::S(n, d),
            _ => Q::B(Box::new(BigRational::new_raw(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Q::S(n, d),
            _ => Q::B(Box::new(r)),
        }
    }

    fn big(&self) -> BigRational {
        match self {
            Q::S(n, d) => BigRational::new_raw((*n).into(), (*d).into()),
            Q::B(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::S(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Q::S(1, 1))
    }

    fn is_negative(&self) -> bool {
        match self {
            Q::S(n, _) => *n < 0,
            Q::B(b) => b.is_negative(),
        }
    }

    fn add(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::S(0, _), _) => o.clone(),
            (_, Q::S(0, _)) => self.clone(),
            (Q::S(a, b), Q::S(c, d)) if b == d => Q::from_i128(*a as i128 + *c as i128, *b as i128),
            (Q::S(a, b), Q::S(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.big() + o.big()),
        }
    }

    fn neg(&self) -> Q {
        match self {
            Q::S(n, d) => Q::S(-n, *d),
            Q::B(b) => Q::from_big(-(**b).clone()),
        }
    }

    fn mul(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::S(0, _), _) | (_, Q::S(0, _)) => Q::ZERO,
            (Q::S(1, 1), _) => o.clone(),
            (_, Q::S(1, 1)) => self.clone(),
            (Q::S(a, b), Q::S(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = a.gcd(&d);
                let g2 = c.gcd(&b);
                let n = (a / g1) * (c / g2);
                let m = (b / g2) * (d / g1);
                match (fits(n), fits(m)) {
                    (Some(n), Some(m)) => Q::S(n, m),
                    _ => Q::B(Box::new(BigRational::new_raw(n.into(), m.into()))),
                }
            }
            _ => Q::from_big(self.big() * o.big()),
        }
    }

    /// `None` for zero.
    fn inv(&self) -> Option<Q> {
        match self {
            Q::S(0, _) => None,
            Q::S(n, d) => Some(Q::from_i128(*d as i128, *n as i128)),
            Q::B(b) => Some(Q::from_big(b.recip())),
        }
    }
}

/// Exact complex scalar `re + im*i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: Q,
    im: Q,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re: Q::from_big(re), im: Q::from_big(im) }
    }

    pub fn re(&self) -> BigRational {
        self.re.big()
    }

    pub fn im(&self) -> BigRational {
        self.im.big()
    }

    pub fn zero() -> Self {
        GaussianRational { re: Q::ZERO, im: Q::ZERO }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Q::ZERO, im: Q::S(1, 1) }
    }

    pub fn int(n: i64) -> Self {
        GaussianRational { re: Q::from_i128(n as i128, 1), im: Q::ZERO }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational { re: Q::from_i128(num as i128, den as i128), im: Q::ZERO }
    }

    pub fn imag(num: i64, den: i64) -> Self {
        GaussianRational { re: Q::ZERO, im: Q::from_i128(num as i128, den as i128) }
    }

    /// `1/n!`
    pub fn inv_factorial(n: u32) -> Self {
        let mut f = BigInt::one();
        for k in 2..=n {
            f *= k;
        }
        Self::new(BigRational::new(BigInt::one(), f), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sq(&self) -> BigRational {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).big()
    }

    /// `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussianRational { re: self.re.inv()?, im: Q::ZERO });
        }
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im)).inv()?;
        Some(GaussianRational { re: self.re.mul(&n), im: self.im.mul(&n).neg() })
    }

    /// The four units `1, i, -1, -i`.
    pub fn units() -> [GaussianRational; 4] {
        [Self::one(), Self::i(), -Self::one(), -Self::i()]
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> BigInt {
        self.re().denom().lcm(self.im().denom())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational { re: Q::from_big(r), im: Q::ZERO }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::S(n, 1) => write!(f, "{n}"),
            Q::S(n, d) => write!(f, "{n}/{d}"),
            Q::B(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Q::B(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

// Literal syntax shared with the .fda format: `3`, `-1/2`, `i`, `-2/3*i`, `(1 + 1/2*i)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |r: &Q| -> String {
            if r.is_one() {
                "i".to_string()
            } else if r.neg().is_one() {
                "-i".to_string()
            } else {
                format!("{r}*i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag(&self.im)),
            (false, false) => {
                let neg = self.im.is_negative();
                let mag = if neg { self.im.neg() } else { self.im.clone() };
                write!(f, "({} {} {})", self.re, if neg { "-" } else { "+" }, imag(&mag))
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re = self.re.add(&o.re);
        if !o.im.is_zero() {
            self.im = self.im.add(&o.im);
        }
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: GaussianRational) {
        *self += &o;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re.add(&o.re.neg()), im: self.im.add(&o.im.neg()) }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        *self = &*self - o;
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        -&self
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: self.re.neg(), im: self.im.neg() }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        // real-only fast path, the overwhelmingly common case
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational { re: self.re.mul(&o.re), im: Q::ZERO };
        }
        GaussianRational {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im).neg()),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero scalar")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::int(-1));
        let z = GaussianRational::ratio(1, 2) + GaussianRational::imag(-3, 4);
        assert_eq!(z.to_string(), "(1/2 - 3/4*i)");
        assert_eq!(&(&z / &z), &GaussianRational::one());
        assert_eq!(GaussianRational::imag(-1, 1).to_string(), "-i");
        assert_eq!(GaussianRational::imag(2, 3).to_string(), "2/3*i");
        assert_eq!(GaussianRational::inv_factorial(5), GaussianRational::ratio(1, 120));
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = GaussianRational::int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.re, Q::B(_)));
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back.re, Q::S(..)));
        let tiny = GaussianRational::ratio(1, i64::MAX);
        assert_eq!(&(&tiny + &tiny) - &tiny, tiny);
        let m = GaussianRational::int(i64::MIN);
        assert!(matches!(m.re, Q::B(_)));
        assert_eq!(-&(-&m), m);
        assert_eq!(GaussianRational::new(BigRational::new(6.into(), (-4).into()), BigRational::zero()), GaussianRational::ratio(-3, 2));
    }
}
