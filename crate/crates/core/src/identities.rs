//! Bounded formal verification of the power-series identities behind
//! inclusion-exclusion for union Segre classes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graded::{binomial, FormalSeries, Monomial, Rational};

/// Residual variables `R1..Rr`, optionally `Y`, and a truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DefectSeriesSpec {
    r: usize,
    truncation: u32,
    include_y: bool,
}

impl DefectSeriesSpec {
    pub const MAX_R: usize = 6;
    pub const MAX_TRUNCATION: u32 = 12;

    pub fn new(r: usize, truncation: u32, include_y: bool) -> Result<Self> {
        if !(1..=Self::MAX_R).contains(&r) {
            return Err(Error::InvalidParameters(format!("r = {r} not in 1..={}", Self::MAX_R)));
        }
        if (truncation as usize) < r || truncation > Self::MAX_TRUNCATION {
            return Err(Error::InvalidParameters(format!(
                "truncation {truncation} must lie in {r}..={} so that R1···R{r} survives",
                Self::MAX_TRUNCATION
            )));
        }
        Ok(DefectSeriesSpec { r, truncation, include_y })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn include_y(&self) -> bool {
        self.include_y
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.r).map(|i| format!("R{i}")).collect();
        if self.include_y {
            v.push("Y".into());
        }
        v
    }

    /// Exponent vector of `R1···Rr`.
    pub fn target_monomial(&self) -> Monomial {
        let mut m = vec![1; self.r];
        if self.include_y {
            m.push(0);
        }
        m
    }
}

/// `Σ_{S ⊆ {1..r}} (-1)^|S| D_S/(1+D_S)` with `D_S = Σ_{i∈S} R_i (+ Y)`.
pub fn defect_series(spec: &DefectSeriesSpec, exec: Exec) -> FormalSeries {
    signed_subset_sum(spec, None, exec)
}

/// Same as [`defect_series`] with the sign of subset `flipped` (a bitmask)
/// reversed; used to confirm the divisibility checker can fail.
pub fn defect_series_mutated(spec: &DefectSeriesSpec, flipped: u32, exec: Exec) -> FormalSeries {
    signed_subset_sum(spec, Some(flipped), exec)
}

fn signed_subset_sum(spec: &DefectSeriesSpec, flipped: Option<u32>, exec: Exec) -> FormalSeries {
    let vars = spec.variables();
    let r = spec.r;
    let masks: Vec<u32> = (0..(1u32 << r)).collect();
    let terms = exec.map(masks, |mask| {
        let mut coeffs: Vec<i64> = (0..r).map(|i| ((mask >> i) & 1) as i64).collect();
        if spec.include_y {
            coeffs.push(1);
        }
        let d = FormalSeries::linear(&vars, spec.truncation, &coeffs);
        let g = d.series_geometric().expect("linear forms have no constant term");
        let negative = (mask.count_ones() % 2 == 1) != (flipped == Some(mask));
        if negative {
            -&g
        } else {
            g
        }
    });
    terms.iter().fold(FormalSeries::zero(&vars, spec.truncation), |acc, t| &acc + t)
}

/// Outcome of a divisibility check; `first_offending` names the first
/// monomial (lexicographic) not divisible by `R1···Rr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub spec: DefectSeriesSpec,
    pub num_terms: usize,
    pub first_offending: Option<String>,
}

impl DivisibilityReport {
    pub fn divisible(&self) -> bool {
        self.first_offending.is_none()
    }
}

pub fn check_divisibility(spec: &DefectSeriesSpec, series: &FormalSeries) -> DivisibilityReport {
    let first_offending = series.check_divisible(&spec.target_monomial()).err().map(|m| {
        format!("{} * {}", series.coeff(&m), series.monomial_string(&m))
    });
    DivisibilityReport { spec: *spec, num_terms: series.num_terms(), first_offending }
}

pub fn defect_series_divisible(spec: &DefectSeriesSpec, exec: Exec) -> bool {
    check_divisibility(spec, &defect_series(spec, exec)).divisible()
}

/// True when setting `R_r = 0` annihilates the defect series.
pub fn vanishes_without_last_residual(spec: &DefectSeriesSpec, exec: Exec) -> bool {
    defect_series(spec, exec).substitute_zero(spec.r - 1).is_zero()
}

/// The coefficient of `R^n` in `Σ_{s=1}^n (-1)^(s-1) C(n,s) sR/(1+sR)`.
pub fn prop_fact_coefficient(n: usize) -> Result<BigInt> {
    if !(1..=20).contains(&n) {
        return Err(Error::InvalidParameters(format!("n = {n} not in 1..=20")));
    }
    let t = n as u32;
    let vars = ["R"];
    let mut total = FormalSeries::zero(&vars, t);
    for s in 1..=n {
        let g = FormalSeries::linear(&vars, t, &[s as i64]).series_geometric()?;
        let c = Rational::from_integer(binomial(n as u64, s as u64));
        let c = if s % 2 == 0 { -c } else { c };
        total = &total + &g.scale(&c);
    }
    let coeff = total.coeff(&[t]);
    debug_assert!(coeff.is_integer());
    Ok(coeff.to_integer())
}

/// `Σ_{s=0}^n (-1)^(n-s) C(n,s) s^r`, with `0^0 = 1`.
pub fn alternating_binomial_sum(n: usize, r: usize) -> Result<BigInt> {
    if r > n || n > 60 {
        return Err(Error::InvalidParameters(format!("need 0 <= r <= n <= 60, got n = {n}, r = {r}")));
    }
    let mut total = BigInt::zero();
    for s in 0..=n {
        let power = if r == 0 { BigInt::one() } else { BigInt::from(s).pow(r as u32) };
        let term = binomial(n as u64, s as u64) * power;
        if (n - s) % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

/// Coefficient of `R1···Rr` (times `Y^0`) in the defect series; nonzero for
/// `T >= r` since it carries the `r!` of the `n!` defect formula.
pub fn target_coefficient(spec: &DefectSeriesSpec, exec: Exec) -> Rational {
    defect_series(spec, exec).coeff(&spec.target_monomial())
}
