use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat, Basis, Rational, TruncPoly};
use crate::error::{Error, Result};

/// An element of a graded Chow group, stored densely over its basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    basis: Arc<Basis>,
    coeffs: Vec<Rational>,
}

impl CycleClass {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        CycleClass { basis: basis.clone(), coeffs: vec![Rational::zero(); basis.len()] }
    }

    pub fn from_coeffs(basis: &Arc<Basis>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::IncompatibleBases(
                basis.name().to_string(),
                format!("{} coefficients", coeffs.len()),
            ));
        }
        Ok(CycleClass { basis: basis.clone(), coeffs })
    }

    pub fn element(basis: &Arc<Basis>, idx: usize) -> Self {
        let mut c = Self::zero(basis);
        c.coeffs[idx] = Rational::one();
        c
    }

    /// A class on `P^n` given as `(dimension, coefficient)` pairs.
    ///
    /// Panics if a dimension exceeds `n`.
    pub fn projective(n: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut c = Self::zero(&Basis::projective(n));
        for (k, v) in terms {
            assert!(k <= n, "[P^{k}] does not live on P^{n}");
            c.coeffs[k] += rat(v);
        }
        c
    }

    /// The fundamental class `[P^n]`.
    pub fn fundamental(n: usize) -> Self {
        Self::projective(n, [(n, 1)])
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, idx: usize) -> &Rational {
        &self.coeffs[idx]
    }

    /// Sum of the coefficients of all basis elements of dimension `d`.
    pub fn coeff_in_dim(&self, d: usize) -> Rational {
        self.terms().filter(|(i, _)| self.basis.dim(*i) == d).map(|(_, c)| c.clone()).sum()
    }

    /// Nonzero `(index, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as integers, failing on the first non-integral one.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { Ok(c.to_integer()) } else { Err(Error::NonIntegral(c.to_string())) })
            .collect()
    }

    pub fn debug_assert_integral(&self) {
        debug_assert!(self.is_integral(), "non-integral class {self}");
    }

    fn check_basis(&self, other: &CycleClass) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::IncompatibleBases(
                self.basis.name().to_string(),
                other.basis.name().to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycleClass) -> Result<CycleClass> {
        self.check_basis(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycleClass { basis: self.basis.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &CycleClass) -> Result<CycleClass> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> CycleClass {
        CycleClass { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_int(&self, c: i64) -> CycleClass {
        self.scale(&rat(c))
    }

    /// The part of the class living in dimension `d`.
    pub fn dimension_component(&self, d: usize) -> CycleClass {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if self.basis.dim(i) == d { c.clone() } else { Rational::zero() })
            .collect();
        CycleClass { basis: self.basis.clone(), coeffs }
    }

    /// Sign by codimension: the dimension-`d` part is multiplied by `(-1)^(n-d)`.
    pub fn dual(&self) -> CycleClass {
        let n = self.basis.ambient_dim();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (n - self.basis.dim(i)) % 2 == 1 { -c } else { c.clone() })
            .collect();
        CycleClass { basis: self.basis.clone(), coeffs }
    }

    /// Twist by `O(d)`: the codimension-`p` part is capped with `(1+dh)^(-p)`.
    pub fn tensor_with(&self, d: i64, h: &HAction) -> Result<CycleClass> {
        let n = self.basis.ambient_dim();
        let mut out = CycleClass::zero(&self.basis);
        for dim in 0..=n {
            let part = self.dimension_component(dim);
            if part.is_zero() {
                continue;
            }
            let codim = (n - dim) as i64;
            let twist = TruncPoly::one_plus_pow(d, -codim, dim);
            out = out.checked_add(&cap_hyperplane_polynomial(&twist, &part, h)?)?;
        }
        Ok(out)
    }

    /// [`CycleClass::tensor_with`] for classes on `P^n`.
    pub fn tensor(&self, d: i64) -> Result<CycleClass> {
        if !self.basis.is_projective() {
            return Err(Error::InvalidHyperplaneAction(format!(
                "basis {} carries no canonical hyperplane class",
                self.basis.name()
            )));
        }
        self.tensor_with(d, &HAction::projective(self.basis.ambient_dim()))
    }

    /// `p(h) ∩ self` for a class on `P^n`.
    pub fn cap_projective(&self, p: &TruncPoly) -> CycleClass {
        assert!(self.basis.is_projective(), "cap_projective on non-projective basis");
        cap_hyperplane_polynomial(p, self, &HAction::projective(self.basis.ambient_dim()))
            .expect("projective hyperplane action is valid")
    }

    /// Re-expresses a class on `P^n` over the basis of `P^m`.
    pub fn reembed(&self, m: usize) -> Result<CycleClass> {
        if !self.basis.is_projective() {
            return Err(Error::ClassDoesNotFit(format!("{} is not a projective basis", self.basis.name())));
        }
        let mut out = CycleClass::zero(&Basis::projective(m));
        for (k, c) in self.terms() {
            if k > m {
                return Err(Error::ClassDoesNotFit(format!("{self} has a term of dimension {k} > {m}")));
            }
            out.coeffs[k] = c.clone();
        }
        Ok(out)
    }
}

impl Add for &CycleClass {
    type Output = CycleClass;

    /// Panics on incompatible bases; use [`CycleClass::checked_add`] otherwise.
    fn add(self, rhs: &CycleClass) -> CycleClass {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &CycleClass {
    type Output = CycleClass;

    fn sub(self, rhs: &CycleClass) -> CycleClass {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &CycleClass {
    type Output = CycleClass;

    fn neg(self) -> CycleClass {
        CycleClass { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Renders in bracket notation with dimensions descending, e.g.
/// `2[P^2] - 8[P^1] + 22[P^0]`.
impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut order: Vec<usize> = (0..self.coeffs.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.basis.dim(i)));
        let mut first = true;
        for i in order {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let label = &self.basis.elements()[i].label;
            let mag = c.abs();
            let mag = if mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{mag}{label}")?,
                (true, true) => write!(f, "-{mag}{label}")?,
                (false, false) => write!(f, " + {mag}{label}")?,
                (false, true) => write!(f, " - {mag}{label}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Multiplication by the hyperplane class on a basis, lowering dimension by one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HAction {
    basis: Arc<Basis>,
    images: Vec<CycleClass>,
}

impl HAction {
    pub fn new(basis: &Arc<Basis>, images: Vec<CycleClass>) -> Result<Self> {
        if images.len() != basis.len() {
            return Err(Error::InvalidHyperplaneAction(format!(
                "{} images for {} basis elements",
                images.len(),
                basis.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if img.basis() != basis {
                return Err(Error::InvalidHyperplaneAction(format!(
                    "image of {} is not over {}",
                    basis.elements()[i].label,
                    basis.name()
                )));
            }
            let src = basis.dim(i);
            if let Some((j, _)) = img.terms().find(|(j, _)| src == 0 || basis.dim(*j) != src - 1) {
                return Err(Error::InvalidHyperplaneAction(format!(
                    "{} (dim {src}) maps onto {} (dim {})",
                    basis.elements()[i].label,
                    basis.elements()[j].label,
                    basis.dim(j)
                )));
            }
        }
        Ok(HAction { basis: basis.clone(), images })
    }

    /// `[P^k] -> [P^(k-1)]`, `[P^0] -> 0`.
    pub fn projective(n: usize) -> Self {
        let basis = Basis::projective(n);
        let images = (0..=n)
            .map(|k| if k == 0 { CycleClass::zero(&basis) } else { CycleClass::element(&basis, k - 1) })
            .collect();
        HAction { basis, images }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn apply(&self, a: &CycleClass) -> Result<CycleClass> {
        if a.basis() != &self.basis {
            return Err(Error::IncompatibleBases(self.basis.name().to_string(), a.basis().name().to_string()));
        }
        let mut out = CycleClass::zero(&self.basis);
        for (i, c) in a.terms() {
            out = &out + &self.images[i].scale(c);
        }
        Ok(out)
    }
}

/// `p(h) ∩ a`, applying `h` through `h_action`; `p` is truncated at the
/// ambient dimension of the basis.
pub fn cap_hyperplane_polynomial(p: &TruncPoly, a: &CycleClass, h_action: &HAction) -> Result<CycleClass> {
    let top = a.basis().ambient_dim();
    let mut power = a.clone();
    let mut out = a.scale(&p.coeff(0));
    for k in 1..=top.min(p.degree().unwrap_or(0)) {
        power = h_action.apply(&power)?;
        if power.is_zero() {
            break;
        }
        out = out.checked_add(&power.scale(&p.coeff(k)))?;
    }
    Ok(out)
}
