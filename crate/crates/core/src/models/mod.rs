//! Resolved ambient spaces in which the pulled-back loci are Cartier and
//! push-forward to `P^n` is computed monomial by monomial.

mod blowup;
mod center;
mod tower;

pub use blowup::BlowupModel;
pub use center::{CenterKind, SplitCenter};
pub use tower::{TowerP3Lines, YMode};

use std::ops::Add;

use crate::error::Result;
use crate::graded::{Basis, CycleClass, FormalSeries};

/// A divisor class as integer coefficients over a model's generators
/// (`h` on `P^n`; `h, e` on a blow-up; `ē0, e1..em` on the tower).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn zero(len: usize) -> Self {
        DivisorClass(vec![0; len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.0.len(), rhs.0.len(), "divisor classes on different models");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    /// `P^n` itself, generated by `h`.
    Projective(usize),
    Blowup(BlowupModel),
    Tower(TowerP3Lines),
}

impl Model {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Model::Projective(n) => *n,
            Model::Blowup(b) => b.ambient_dim(),
            Model::Tower(_) => 3,
        }
    }

    pub fn variables(&self) -> Vec<String> {
        match self {
            Model::Projective(_) => vec!["h".into()],
            Model::Blowup(_) => vec!["h".into(), "e".into()],
            Model::Tower(t) => t.variables(),
        }
    }

    /// `π_*` of the monomial with exponent vector `m` in the model generators.
    pub fn pushforward_monomial(&self, m: &[u32]) -> CycleClass {
        match self {
            Model::Projective(n) => {
                let a = m[0] as usize;
                if a > *n {
                    CycleClass::zero(&Basis::projective(*n))
                } else {
                    CycleClass::projective(*n, [(n - a, 1)])
                }
            }
            Model::Blowup(b) => b.pushforward_monomial(m[0], m[1]),
            Model::Tower(t) => t.pushforward_exponents(m),
        }
    }

    /// `π_*` of a polynomial in the model generators, term by term.
    pub fn pushforward(&self, s: &FormalSeries) -> CycleClass {
        let n = self.ambient_dim();
        let mut out = CycleClass::zero(&Basis::projective(n));
        for (m, c) in s.terms() {
            out = &out + &self.pushforward_monomial(m).scale(c);
        }
        out
    }

    /// `D` as a series truncated at the ambient dimension; higher-degree
    /// monomials push forward to zero.
    pub fn divisor_series(&self, d: &DivisorClass) -> FormalSeries {
        FormalSeries::linear(&self.variables(), self.ambient_dim() as u32, &d.0)
    }

    /// `π_*(D / (1 + D))`.
    pub fn pushforward_divisor_power_series(&self, d: &DivisorClass) -> Result<CycleClass> {
        Ok(self.pushforward(&self.divisor_series(d).series_geometric()?))
    }

    /// `π_*(D_1 ··· D_k)`.
    pub fn pushforward_product(&self, factors: &[DivisorClass]) -> CycleClass {
        let vars = self.variables();
        let t = self.ambient_dim() as u32;
        let product = factors
            .iter()
            .fold(FormalSeries::one(&vars, t), |acc, d| &acc * &self.divisor_series(d));
        self.pushforward(&product)
    }
}
