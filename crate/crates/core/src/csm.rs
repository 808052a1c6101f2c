//! Chern-Schwartz-MacPherson classes of nonsingular pieces and of almost
//! nonsingular unions, checked against `c(TM) ∩` union Segre classes, plus
//! the Chern-class recursion for sections of powers of `O(d)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graded::{binomial, factorial, rat, CycleClass, Rational, TruncPoly};
use crate::models::{CenterKind, SplitCenter, TowerP3Lines, YMode};
use crate::segre::{union_segre, UnionSegreQuery};

/// A nonsingular closed subvariety of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothPiece {
    Hypersurface(i64),
    Center(SplitCenter),
}

/// `(1+h)^(n+1)` truncated at `n`, i.e. `c(T P^n)`.
pub fn tangent_chern(n: usize) -> TruncPoly {
    TruncPoly::one_plus_pow(1, n as i64 + 1, n)
}

/// `c(TV) ∩ [V]` pushed to `P^n`.
pub fn csm_smooth(piece: &SmoothPiece, n: usize) -> Result<CycleClass> {
    match piece {
        SmoothPiece::Hypersurface(d) => {
            if *d < 1 {
                return Err(Error::InvalidDegree(*d));
            }
            Ok(smooth_hypersurface_chern(n, *d))
        }
        SmoothPiece::Center(c) if c.ambient_dim() == n => Ok(c.chern_class_pushed()),
        SmoothPiece::Center(c) => {
            Err(Error::InvalidParameters(format!("center lives in P^{}, not P^{n}", c.ambient_dim())))
        }
    }
}

fn smooth_hypersurface_chern(n: usize, d: i64) -> CycleClass {
    let adjunction = tangent_chern(n).mul_trunc(&TruncPoly::one_plus_pow(d, -1, n), n);
    CycleClass::projective(n, [(n - 1, d)]).cap_projective(&adjunction)
}

/// Nonsingular components `X_1..X_r` whose pairwise intersections all
/// equal the nonsingular `Y` (declared, not verified).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostNonsingularConfig {
    n: usize,
    components: Vec<SmoothPiece>,
    y: SplitCenter,
}

impl AlmostNonsingularConfig {
    pub fn new(n: usize, components: Vec<SmoothPiece>, y: SplitCenter) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::NoComponents);
        }
        if y.ambient_dim() != n {
            return Err(Error::InvalidParameters(format!("Y lives in P^{}, not P^{n}", y.ambient_dim())));
        }
        Ok(AlmostNonsingularConfig { n, components, y })
    }

    /// Hypersurfaces of the given degrees through the common `y`.
    pub fn hypersurfaces(n: usize, degrees: &[i64], y: SplitCenter) -> Result<Self> {
        Self::new(n, degrees.iter().map(|&d| SmoothPiece::Hypersurface(d)).collect(), y)
    }

    /// `m` distinct lines through a point of `P^3`.
    pub fn lines_through_point(m: usize) -> Result<Self> {
        let line = SplitCenter::linear(3, 1)?;
        Self::new(3, vec![SmoothPiece::Center(line); m], SplitCenter::linear(3, 0)?)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[SmoothPiece] {
        &self.components
    }

    pub fn y(&self) -> &SplitCenter {
        &self.y
    }

    /// The union Segre query realizing `s(Y; X_1..X_r; P^n)` for this config.
    pub fn union_segre_query(&self) -> Result<UnionSegreQuery> {
        let degrees: Option<Vec<i64>> = self
            .components
            .iter()
            .map(|c| match c {
                SmoothPiece::Hypersurface(d) => Some(*d),
                SmoothPiece::Center(_) => None,
            })
            .collect();
        if let Some(degrees) = degrees {
            return UnionSegreQuery::hypersurfaces(self.n, Some(self.y.clone()), degrees);
        }
        let all_lines = self
            .components
            .iter()
            .all(|c| matches!(c, SmoothPiece::Center(z) if *z.kind() == CenterKind::Linear(1)));
        if self.n == 3 && all_lines && *self.y.kind() == CenterKind::Linear(0) {
            let m = self.components.len();
            return Ok(UnionSegreQuery::lines(TowerP3Lines::new(m, YMode::Point)?, (1..=m).collect()));
        }
        Err(Error::NoResolvingModel(
            "supported configurations are hypersurfaces through a smooth center and lines through a point of P^3".into(),
        ))
    }
}

/// `Σ c_SM(X_i) - (r-1) c_SM(Y)`: inclusion-exclusion when every
/// intersection of two or more components is `Y`.
pub fn csm_union(config: &AlmostNonsingularConfig) -> Result<CycleClass> {
    let n = config.n;
    let r = config.components.len() as i64;
    let mut total = csm_smooth(&SmoothPiece::Center(config.y.clone()), n)?.scale_int(1 - r);
    for piece in &config.components {
        total = &total + &csm_smooth(piece, n)?;
    }
    Ok(total)
}

/// `c(TM) ∩ s(Y; X_1..X_r; M)`.
pub fn csm_via_relsm(config: &AlmostNonsingularConfig) -> Result<CycleClass> {
    Ok(sm_segre(config)?.cap_projective(&tangent_chern(config.n)))
}

/// The SM-Segre class `s°(X, M)`, which for almost nonsingular `X` is the
/// union Segre class.
pub fn sm_segre(config: &AlmostNonsingularConfig) -> Result<CycleClass> {
    union_segre(&config.union_segre_query()?)
}

/// A class on `P^n'` compared into `P^n` through `c(TP^n)^(-1) c(TP^n')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbientComparison {
    /// `(1+h)^(n'-n) ∩ class`.
    pub forward: CycleClass,
    /// `(1+h)^(n-n') ∩ class`, the opposite twist.
    pub reverse: CycleClass,
}

pub fn ambient_compare(class: &CycleClass, n: usize, n_prime: usize) -> Result<AmbientComparison> {
    if class.basis().ambient_dim() != n_prime {
        return Err(Error::ClassDoesNotFit(format!("class lives on {}, not P^{n_prime}", class.basis().name())));
    }
    let moved = class.reembed(n)?;
    let shift = n_prime as i64 - n as i64;
    Ok(AmbientComparison {
        forward: moved.cap_projective(&TruncPoly::one_plus_pow(1, shift, n)),
        reverse: moved.cap_projective(&TruncPoly::one_plus_pow(1, -shift, n)),
    })
}

/// The degree-zero coefficient.
pub fn euler_characteristic(c: &CycleClass) -> Rational {
    c.coeff_in_dim(0)
}

pub fn euler_integer(c: &CycleClass) -> Result<BigInt> {
    let chi = euler_characteristic(c);
    if chi.is_integer() {
        Ok(chi.to_integer())
    } else {
        Err(Error::NonIntegral(chi.to_string()))
    }
}

/// `c(rX)`: total Chern class of a nonsingular section of `O(d)^⊗r` on `P^n`.
pub fn chern_section(n: usize, d: i64, r: usize) -> Result<CycleClass> {
    if r == 0 {
        return Err(Error::InvalidParameters("r must be >= 1".into()));
    }
    if d < 1 {
        return Err(Error::InvalidDegree(d));
    }
    Ok(smooth_hypersurface_chern(n, d * r as i64))
}

/// `χ(rX)` for `r = 1..=r_max`.
pub fn euler_sequence(n: usize, d: i64, r_max: usize) -> Result<Vec<BigInt>> {
    (1..=r_max).map(|r| euler_integer(&chern_section(n, d, r)?)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernRecursionReport {
    pub n: usize,
    pub d: i64,
    pub r: usize,
    /// `c(rX)` computed directly.
    pub direct: CycleClass,
    /// `Σ_{s=1}^{r-1} (-1)^(r-s-1) C(r,s) c(sX)`, minus `n! c_1(L^∨)^n ∩ [M]` when `r = n`.
    pub recursion: CycleClass,
    pub passed: bool,
}

pub fn chern_recursion_verify(n: usize, d: i64, r: usize) -> Result<ChernRecursionReport> {
    if r < n || r == 0 {
        return Err(Error::RecursionRegimeUndefined { r, n });
    }
    let direct = chern_section(n, d, r)?;
    let mut recursion = CycleClass::zero(direct.basis());
    for s in 1..r {
        let c = Rational::from_integer(binomial(r as u64, s as u64));
        let c = if (r - s - 1) % 2 == 1 { -c } else { c };
        recursion = &recursion + &chern_section(n, d, s)?.scale(&c);
    }
    if r == n {
        // c_1(L^∨)^n ∩ [P^n] = (-d)^n [P^0]
        let top = Rational::from_integer(factorial(n as u64) * BigInt::from(-d).pow(n as u32));
        recursion = &recursion - &CycleClass::projective(n, [(0, 1)]).scale(&top);
    }
    let passed = recursion == direct;
    Ok(ChernRecursionReport { n, d, r, direct, recursion, passed })
}

/// `χ` of the ambient-independent combinatorial count `Σχ(X_i) - (r-1)χ(Y)`.
pub fn combinatorial_euler(config: &AlmostNonsingularConfig) -> Result<Rational> {
    let n = config.n;
    let mut chi = rat(0);
    for piece in &config.components {
        chi += euler_characteristic(&csm_smooth(piece, n)?);
    }
    let r = rat(config.components.len() as i64);
    Ok(chi - (r - rat(1)) * euler_characteristic(&config.y.chern_class_pushed()))
}
