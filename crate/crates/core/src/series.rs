//! Truncated power series in `λ = 1/κ` with Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// `Σ_{k=0}^{order} c_k λ^k`; everything past `λ^order` is discarded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Scalar>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Scalar::zero(); order + 1] }
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        Self::monomial(c, 0, order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    /// `c λ^k`, or zero when `k` exceeds the truncation order.
    pub fn monomial(c: Scalar, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<Scalar> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Scalar::zero());
        Self { coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    /// Multiplies by `λ^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = Self::zero(order);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j + k <= order {
                out.coeffs[j + k] = c.clone();
            }
        }
        out
    }

    /// Divides by `λ`, returning `None` if the constant term is nonzero.
    /// The result is truncated one order lower, since the input carried no
    /// information about its `λ^{order+1}` coefficient.
    pub fn shift_down(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() {
            return None;
        }
        if self.order() == 0 {
            return Some(Self::zero(0));
        }
        Some(Self { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Multiplicative inverse modulo `λ^{order+1}`, if the constant term is invertible.
    pub fn inverse(&self) -> Option<Self> {
        let c0inv = self.coeffs[0].inv()?;
        let order = self.order();
        let mut out = vec![Scalar::zero(); order + 1];
        out[0] = c0inv.clone();
        for k in 1..=order {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out[k] = -&(&acc * &c0inv);
        }
        Some(Self { coeffs: out })
    }

    pub fn add_assign_ref(&mut self, rhs: &Series) {
        let order = self.order().min(rhs.order());
        self.coeffs.truncate(order + 1);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn sub_assign_ref(&mut self, rhs: &Series) {
        let order = self.order().min(rhs.order());
        self.coeffs.truncate(order + 1);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![Scalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Series { coeffs: out }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*l")?,
                _ => write!(f, "{c}*l^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn arb_unit_series(order: usize) -> impl Strategy<Value = Series> {
        proptest::collection::vec((-9i64..9, 1i64..5, -9i64..9, 1i64..5), order + 1).prop_map(
            move |cs| {
                let mut coeffs: Vec<Scalar> = cs
                    .into_iter()
                    .map(|(a, b, c, d)| Scalar::new(rat(a, b), rat(c, d)))
                    .collect();
                if coeffs[0].is_zero() {
                    coeffs[0] = Scalar::one();
                }
                Series::from_coeffs(coeffs, order)
            },
        )
    }

    #[test]
    fn products_truncate() {
        let l = Series::monomial(Scalar::one(), 1, 2);
        let l2 = &l * &l;
        assert_eq!(l2.coeff(2), Scalar::one());
        assert!((&l2 * &l).is_zero());
    }

    #[test]
    fn shift_down_requires_zero_constant() {
        let s = Series::from_coeffs(vec![Scalar::zero(), Scalar::int(2), Scalar::int(3)], 2);
        let d = s.shift_down().unwrap();
        assert_eq!(d.order(), 1);
        assert_eq!(d.coeff(0), Scalar::int(2));
        assert!(Series::one(2).shift_down().is_none());
    }

    #[test]
    fn display_shows_lambda_powers() {
        let s = Series::from_coeffs(vec![Scalar::one(), Scalar::zero(), Scalar::i()], 3);
        assert_eq!(s.to_string(), "1 + i*l^2");
    }

    proptest! {
        #[test]
        fn inverse_times_self_is_one(s in arb_unit_series(4)) {
            let inv = s.inverse().unwrap();
            prop_assert_eq!(&s * &inv, Series::one(4));
        }
    }
}
