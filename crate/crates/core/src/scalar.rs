//! Exact Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds `p/q` as an exact rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or an integer literal.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("invalid rational literal `{text}`"),
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational kept in machine words while it fits. The representation is
/// canonical: `Small` is reduced with a positive denominator, and `Big` only
/// holds values that do not fit in `Small`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Default for Q {
    fn default() -> Self {
        Q::Small(0, 1)
    }
}

impl Q {
    fn from_i128(n: i128, d: i128) -> Q {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (**r).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    fn add(&self, o: &Q) -> Q {
        match (self, o) {
            (_, _) if o.is_zero() => self.clone(),
            (_, _) if self.is_zero() => o.clone(),
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Q::from_i128(a + c, b)
                } else {
                    Q::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }

    fn neg(&self) -> Q {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, *d),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }

    fn sub(&self, o: &Q) -> Q {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Q) -> Q {
        match (self, o) {
            (_, _) if self.is_zero() || o.is_zero() => Q::default(),
            (_, _) if o.is_one() => self.clone(),
            (_, _) if self.is_one() => o.clone(),
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }

    /// `self / o` for nonzero `o`.
    fn div(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            _ => Q::from_big(self.to_big() / o.to_big()),
        }
    }
}

/// `re + i*im` with both parts exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Q,
    im: Q,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re: Q::from_big(re), im: Q::from_big(im) }
    }

    pub fn real(re: Rational) -> Self {
        Self { re: Q::from_big(re), im: Q::default() }
    }

    pub fn int(v: i64) -> Self {
        Self { re: Q::Small(v, 1), im: Q::default() }
    }

    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self { re: Q::from_i128(p as i128, q as i128), im: Q::default() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Q::default(), im: Q::Small(1, 1) }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn re(&self) -> Rational {
        self.re.to_big()
    }

    pub fn im(&self) -> Rational {
        self.im.to_big()
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
        Self { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let r = Q::from_big(r.clone());
        Self { re: self.re.mul(&r), im: self.im.mul(&r) }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        Some(Self { re: self.re.div(&norm), im: self.im.neg().div(&norm) })
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar { re: self.re.mul(&rhs.re), im: Q::default() };
        }
        Scalar {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: self.re.neg(), im: self.im.neg() }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if !rhs.re.is_zero() {
            self.re = self.re.add(&rhs.re);
        }
        if !rhs.im.is_zero() {
            self.im = self.im.add(&rhs.im);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if !rhs.re.is_zero() {
            self.re = self.re.sub(&rhs.re);
        }
        if !rhs.im.is_zero() {
            self.im = self.im.sub(&rhs.im);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.re(), self.im());
        match (re.is_zero(), im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&re)),
            (true, false) => {
                if im.is_one() {
                    write!(f, "i")
                } else if (-im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rational(&im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", fmt_rational(&re), sign, fmt_rational(&im.abs()))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(|(a, b, c, d)| Scalar::new(rat(a, b), rat(c, d)))
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::int(-1));
    }

    #[test]
    fn parse_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat_int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::new(rat(1, 2), rat(-3, 1)).to_string(), "(1/2-3i)");
        assert_eq!((-Scalar::i()).to_string(), "-i");
        assert_eq!(Scalar::frac(2, 4).to_string(), "1/2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.re(), rat_int(i64::MAX) * rat_int(i64::MAX));
        let back = &sq * &big.inv().unwrap();
        assert_eq!(back, big);
        assert_eq!(&Scalar::int(i64::MIN) - &Scalar::int(i64::MIN), Scalar::zero());
        assert_eq!(-&Scalar::int(i64::MIN), Scalar::real(-rat_int(i64::MIN)));
    }

    proptest! {
        #[test]
        fn inverse_is_exact(s in arb_scalar()) {
            prop_assume!(!s.is_zero());
            let inv = s.inv().unwrap();
            prop_assert!((&s * &inv).is_one());
        }

        #[test]
        fn distributive(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
