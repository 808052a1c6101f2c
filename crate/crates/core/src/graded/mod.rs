//! Exact graded arithmetic: cycle classes over named bases, truncated
//! polynomials in the hyperplane class, and truncated multivariate formal
//! power series. Coefficients are unbounded rationals throughout.

mod basis;
mod class;
mod poly;
mod series;

pub use basis::{Basis, BasisElement};
pub use class::{cap_hyperplane_polynomial, CycleClass, HAction};
pub use poly::TruncPoly;
pub use series::{FormalSeries, Monomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Ordinary binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `e (e-1) ... (e-k+1) / k!` for any integer `e`, so that
/// `(1+x)^e = sum_k binomial_signed(e, k) x^k` also for negative `e`.
pub fn binomial_signed(e: i64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(e - i as i64) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        // (1+x)^-4 = 1 - 4x + 10x^2 - 20x^3
        let c: Vec<BigInt> = (0..4).map(|k| binomial_signed(-4, k)).collect();
        assert_eq!(c, [1, -4, 10, -20].map(BigInt::from));
        for n in 0..10 {
            for k in 0..=n {
                assert_eq!(binomial_signed(n as i64, k), binomial(n, k));
            }
        }
        assert_eq!(factorial(12), BigInt::from(479001600u64));
    }
}
