use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial_signed, Rational};

/// A polynomial in the hyperplane class `h` with exact rational
/// coefficients; index `k` holds the coefficient of `h^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPoly {
    coeffs: Vec<Rational>,
}

impl TruncPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TruncPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        TruncPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// `(1 + d h)^e` truncated above degree `t`; `e` may be negative.
    pub fn one_plus_pow(d: i64, e: i64, t: usize) -> Self {
        let d = BigInt::from(d);
        let mut dk = BigInt::one();
        let mut coeffs = Vec::with_capacity(t + 1);
        for k in 0..=t {
            coeffs.push(Rational::from_integer(binomial_signed(e, k as u64) * &dk));
            dk *= &d;
        }
        Self::new(coeffs)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree of the highest nonzero term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn truncate(&self, t: usize) -> Self {
        Self::new(self.coeffs.iter().take(t + 1).cloned().collect())
    }

    /// The untruncated product.
    pub fn mul_full(&self, other: &Self) -> Self {
        self.mul_trunc(other, self.coeffs.len() + other.coeffs.len())
    }

    pub fn mul_trunc(&self, other: &Self, t: usize) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(t + 1);
        let mut out = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl Add for &TruncPoly {
    type Output = TruncPoly;

    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        TruncPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &TruncPoly {
    type Output = TruncPoly;

    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self + &(-rhs)
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;

    fn neg(self) -> TruncPoly {
        TruncPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &TruncPoly {
    type Output = TruncPoly;

    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.mul_full(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_powers_invert() {
        for d in -3..=3 {
            for e in 1..5 {
                let p = TruncPoly::one_plus_pow(d, e, 8);
                let q = TruncPoly::one_plus_pow(d, -e, 8);
                assert_eq!(p.mul_trunc(&q, 8), TruncPoly::one());
            }
        }
    }

    #[test]
    fn one_plus_h_inverse_fourth() {
        assert_eq!(TruncPoly::one_plus_pow(1, -4, 3), TruncPoly::from_ints(&[1, -4, 10, -20]));
        assert_eq!(TruncPoly::one_plus_pow(2, -1, 2), TruncPoly::from_ints(&[1, -2, 4]));
        assert_eq!(TruncPoly::one_plus_pow(5, 0, 4), TruncPoly::one());
    }

    #[test]
    fn trailing_zeros_are_normalized() {
        assert_eq!(TruncPoly::from_ints(&[1, 2, 0, 0]), TruncPoly::from_ints(&[1, 2]));
        assert_eq!(TruncPoly::from_ints(&[0]).degree(), None);
        assert_eq!(&TruncPoly::from_ints(&[1, 1]) - &TruncPoly::from_ints(&[1, 1]), TruncPoly::zero());
    }
}
