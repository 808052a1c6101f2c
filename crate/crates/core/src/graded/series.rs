use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};

/// Exponent vector, one entry per series variable.
pub type Monomial = Vec<u32>;

/// Truncated multivariate power series over `Q`: every stored monomial has
/// total degree at most `truncation`, and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSeries {
    variables: Arc<[String]>,
    truncation: u32,
    terms: BTreeMap<Monomial, Rational>,
}

fn total_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl FormalSeries {
    pub fn zero<S: AsRef<str>>(variables: &[S], truncation: u32) -> Self {
        let variables: Arc<[String]> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        FormalSeries { variables, truncation, terms: BTreeMap::new() }
    }

    fn empty_like(&self, truncation: u32) -> Self {
        FormalSeries { variables: self.variables.clone(), truncation, terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(variables: &[S], truncation: u32, c: Rational) -> Self {
        let mut s = Self::zero(variables, truncation);
        let m = vec![0; s.variables.len()];
        s.insert(m, c);
        s
    }

    pub fn one<S: AsRef<str>>(variables: &[S], truncation: u32) -> Self {
        Self::constant(variables, truncation, Rational::one())
    }

    pub fn variable<S: AsRef<str>>(variables: &[S], truncation: u32, idx: usize) -> Self {
        let mut coeffs = vec![0; variables.len()];
        coeffs[idx] = 1;
        Self::linear(variables, truncation, &coeffs)
    }

    /// `sum_i coeffs[i] * x_i`.
    pub fn linear<S: AsRef<str>>(variables: &[S], truncation: u32, coeffs: &[i64]) -> Self {
        assert_eq!(variables.len(), coeffs.len(), "one coefficient per variable");
        let mut s = Self::zero(variables, truncation);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut m = vec![0; coeffs.len()];
            m[i] = 1;
            s.insert(m, rat(c));
        }
        s
    }

    pub fn from_terms<S: AsRef<str>>(
        variables: &[S],
        truncation: u32,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut s = Self::zero(variables, truncation);
        for (m, c) in terms {
            assert_eq!(m.len(), s.variables.len(), "exponent vector length");
            s.insert(m, c);
        }
        s
    }

    /// Adds `c` to the coefficient of `m`, dropping it above the truncation.
    fn insert(&mut self, m: Monomial, c: Rational) {
        if total_degree(&m) > self.truncation || c.is_zero() {
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

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.variables.len()])
    }

    /// Same series with a different truncation bound; terms above it are dropped.
    pub fn with_truncation(&self, truncation: u32) -> Self {
        let mut out = self.empty_like(truncation);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.variables != other.variables {
            return Err(Error::IncompatibleBases(self.variables.join(","), other.variables.join(",")));
        }
        Ok(())
    }

    /// Sum; the result is truncated at the smaller of the two bounds.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.empty_like(self.truncation.min(other.truncation));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let t = self.truncation.min(other.truncation);
        let mut out = self.empty_like(t);
        for (ma, ca) in &self.terms {
            let da = total_degree(ma);
            if da > t {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + total_degree(mb) > t {
                    continue;
                }
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.insert(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.empty_like(self.truncation);
        for (m, v) in &self.terms {
            out.insert(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = FormalSeries::one(&self.variables, self.truncation);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `D/(1+D) = D - D^2 + D^3 - ...`, truncated; `D` must have no constant term.
    pub fn series_geometric(&self) -> Result<Self> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(Error::NotDivisorLike(c.to_string()));
        }
        let mut out = self.empty_like(self.truncation);
        let mut power = self.clone();
        let mut sign = Rational::one();
        // D^k has minimal degree >= k, so k beyond the truncation contributes nothing.
        for _ in 0..self.truncation {
            if power.is_zero() {
                break;
            }
            out = &out + &power.scale(&sign);
            power = &power * self;
            sign = -sign;
        }
        Ok(out)
    }

    /// `Ok(())` if every term is divisible by `m`, else the first offending
    /// monomial in lexicographic order.
    pub fn check_divisible(&self, m: &[u32]) -> std::result::Result<(), Monomial> {
        assert_eq!(m.len(), self.variables.len(), "exponent vector length");
        match self.terms.keys().find(|t| t.iter().zip(m).any(|(a, b)| a < b)) {
            Some(t) => Err(t.clone()),
            None => Ok(()),
        }
    }

    pub fn divisible_by_monomial(&self, m: &[u32]) -> bool {
        self.check_divisible(m).is_ok()
    }

    /// Sets variable `idx` to zero.
    pub fn substitute_zero(&self, idx: usize) -> Self {
        let mut out = self.empty_like(self.truncation);
        for (m, c) in &self.terms {
            if m[idx] == 0 {
                out.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Renders a monomial with the series' variable names, e.g. `R1^2*Y`.
    pub fn monomial_string(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(self.variables.iter())
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Add for &FormalSeries {
    type Output = FormalSeries;

    fn add(self, rhs: &FormalSeries) -> FormalSeries {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &FormalSeries {
    type Output = FormalSeries;

    fn sub(self, rhs: &FormalSeries) -> FormalSeries {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &FormalSeries {
    type Output = FormalSeries;

    fn mul(self, rhs: &FormalSeries) -> FormalSeries {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &FormalSeries {
    type Output = FormalSeries;

    fn neg(self) -> FormalSeries {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.truncation + 1);
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| (total_degree(m), std::cmp::Reverse((*m).clone())));
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", self.monomial_string(m))?;
        }
        write!(f, " + O({})", self.truncation + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RY: [&str; 2] = ["R", "Y"];

    #[test]
    fn geometric_single_variable() {
        let y = FormalSeries::variable(&["Y"], 3, 0);
        let g = y.series_geometric().unwrap();
        let expect = FormalSeries::from_terms(&["Y"], 3, [(vec![1], rat(1)), (vec![2], rat(-1)), (vec![3], rat(1))]);
        assert_eq!(g, expect);
    }

    #[test]
    fn geometric_two_variables() {
        let d = FormalSeries::linear(&RY, 2, &[1, 1]);
        let g = d.series_geometric().unwrap();
        let expect = FormalSeries::from_terms(
            &RY,
            2,
            [
                (vec![1, 0], rat(1)),
                (vec![0, 1], rat(1)),
                (vec![2, 0], rat(-1)),
                (vec![1, 1], rat(-2)),
                (vec![0, 2], rat(-1)),
            ],
        );
        assert_eq!(g, expect);
    }

    #[test]
    fn geometric_of_2h() {
        let d = FormalSeries::linear(&["h"], 2, &[2]);
        let g = d.series_geometric().unwrap();
        assert_eq!(g.coeff(&[1]), rat(2));
        assert_eq!(g.coeff(&[2]), rat(-4));
    }

    #[test]
    fn geometric_rejects_constant_term() {
        let d = &FormalSeries::one(&RY, 3) + &FormalSeries::variable(&RY, 3, 0);
        assert!(matches!(d.series_geometric(), Err(Error::NotDivisorLike(_))));
    }

    #[test]
    fn divisibility() {
        let v = ["R1", "R2", "Y"];
        let s = FormalSeries::from_terms(&v, 6, [(vec![1, 1, 0], rat(1)), (vec![2, 1, 1], rat(1))]);
        assert!(s.divisible_by_monomial(&[1, 1, 0]));
        let s = FormalSeries::from_terms(&v, 6, [(vec![1, 0, 0], rat(1)), (vec![1, 1, 0], rat(1))]);
        assert_eq!(s.check_divisible(&[1, 1, 0]), Err(vec![1, 0, 0]));
        assert_eq!(s.monomial_string(&[2, 0, 1]), "R1^2*Y");
    }

    #[test]
    fn truncation_is_respected() {
        let x = FormalSeries::variable(&["x"], 3, 0);
        assert!(x.pow(4).is_zero());
        assert_eq!(x.pow(3).num_terms(), 1);
        let lower = x.with_truncation(2);
        assert_eq!((&x.pow(2) * &lower).truncation(), 2);
    }

    #[test]
    fn mismatched_variables_error() {
        let a = FormalSeries::variable(&["x"], 3, 0);
        let b = FormalSeries::variable(&["y"], 3, 0);
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitution() {
        let d = FormalSeries::linear(&RY, 3, &[1, 1]);
        let s = d.pow(2).substitute_zero(0);
        assert_eq!(s, FormalSeries::variable(&RY, 3, 1).pow(2));
    }
}
