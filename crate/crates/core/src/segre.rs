//! Segre classes and union Segre classes pushed forward to `P^n`, and the
//! inclusion-exclusion machinery built on them.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graded::{factorial, Basis, CycleClass, Rational, TruncPoly};
use crate::models::{BlowupModel, DivisorClass, Model, SplitCenter, TowerP3Lines};

/// Largest component count accepted by exhaustive subset enumeration.
pub const MAX_INCL_EXCL_COMPONENTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Components {
    /// Hypersurfaces of the given degrees, each containing `Y`; repeats allowed.
    Hypersurfaces(Vec<i64>),
    /// A subset of the tower's lines, 1-based.
    Lines(Vec<usize>),
}

impl Components {
    pub fn len(&self) -> usize {
        match self {
            Components::Hypersurfaces(d) => d.len(),
            Components::Lines(l) => l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Y`, `X_1..X_s` and `M = P^n`, with `Y` carried by the model: empty on
/// bare `P^n`, the center of a blow-up, or the tower's `y_mode`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionSegreQuery {
    pub model: Model,
    pub components: Components,
}

impl UnionSegreQuery {
    /// Hypersurface components in `P^n`, resolved by blowing up `y` if present.
    pub fn hypersurfaces(n: usize, y: Option<SplitCenter>, degrees: Vec<i64>) -> Result<Self> {
        let model = match y {
            None => Model::Projective(n),
            Some(center) if center.ambient_dim() == n => Model::Blowup(BlowupModel::new(center)),
            Some(center) => {
                return Err(Error::InvalidParameters(format!(
                    "center lives in P^{}, not P^{n}",
                    center.ambient_dim()
                )))
            }
        };
        Ok(UnionSegreQuery { model, components: Components::Hypersurfaces(degrees) })
    }

    pub fn lines(tower: TowerP3Lines, subset: Vec<usize>) -> Self {
        UnionSegreQuery { model: Model::Tower(tower), components: Components::Lines(subset) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.model.ambient_dim()
    }

    /// Builds `Ȳ` and the residual divisors `R_i` on the model.
    pub fn resolve(&self) -> Result<Resolution> {
        if self.components.is_empty() {
            return Err(Error::NoComponents);
        }
        let (y_bar, residuals) = match (&self.model, &self.components) {
            (Model::Projective(_), Components::Hypersurfaces(ds)) => {
                let rs = ds.iter().map(|&d| checked_degree(d).map(|d| DivisorClass(vec![d]))).collect::<Result<_>>()?;
                (DivisorClass::zero(1), rs)
            }
            (Model::Blowup(_), Components::Hypersurfaces(ds)) => {
                let rs = ds
                    .iter()
                    .map(|&d| checked_degree(d).map(|d| BlowupModel::divisor(d, -1)))
                    .collect::<Result<_>>()?;
                (BlowupModel::divisor(0, 1), rs)
            }
            (Model::Tower(t), Components::Lines(lines)) => {
                let rs = lines.iter().map(|&i| t.residual(i)).collect::<Result<_>>()?;
                (t.y_bar(), rs)
            }
            (Model::Tower(_), Components::Hypersurfaces(_)) => {
                return Err(Error::NoResolvingModel("hypersurface components in the line tower".into()))
            }
            (_, Components::Lines(_)) => {
                return Err(Error::NoResolvingModel("line components need the P^3 line tower".into()))
            }
        };
        Ok(Resolution { model: self.model.clone(), y_bar, residuals })
    }
}

fn checked_degree(d: i64) -> Result<i64> {
    if d < 1 {
        Err(Error::InvalidDegree(d))
    } else {
        Ok(d)
    }
}

/// A resolving model with `Ȳ` and residual divisors `R_1..R_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    model: Model,
    y_bar: DivisorClass,
    residuals: Vec<DivisorClass>,
}

impl Resolution {
    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn y_bar(&self) -> &DivisorClass {
        &self.y_bar
    }

    pub fn residuals(&self) -> &[DivisorClass] {
        &self.residuals
    }

    pub fn ambient_dim(&self) -> usize {
        self.model.ambient_dim()
    }

    /// `Σ_{i∈subset} R_i + Ȳ`, indices 0-based.
    pub fn union_divisor(&self, subset: &[usize]) -> DivisorClass {
        subset.iter().fold(self.y_bar.clone(), |acc, &i| &acc + &self.residuals[i])
    }

    /// `s(Y; X_i (i ∈ subset); M)`.
    pub fn union_segre_of(&self, subset: &[usize]) -> Result<CycleClass> {
        if subset.is_empty() {
            return Err(Error::NoComponents);
        }
        self.model.pushforward_divisor_power_series(&self.union_divisor(subset))
    }

    /// `s(Y; X_1..X_r; M)`.
    pub fn union_segre(&self) -> Result<CycleClass> {
        let all: Vec<usize> = (0..self.residuals.len()).collect();
        self.union_segre_of(&all)
    }

    /// `s(Y, M) = π_*(Ȳ/(1+Ȳ))`; zero for empty `Y`.
    pub fn segre_of_y(&self) -> CycleClass {
        self.model
            .pushforward_divisor_power_series(&self.y_bar)
            .expect("divisor series has no constant term")
    }

    /// `Σ_{S≠∅} (-1)^(|S|-1) s(Y; X_S; M)` over all nonempty subsets.
    pub fn incl_excl_rhs(&self, exec: Exec) -> Result<CycleClass> {
        let r = self.residuals.len();
        if r > MAX_INCL_EXCL_COMPONENTS {
            return Err(Error::TooManyComponents { got: r, max: MAX_INCL_EXCL_COMPONENTS });
        }
        let masks: Vec<u32> = (1..(1u32 << r)).collect();
        let terms = exec.try_map(masks, |mask| {
            let subset: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
            let class = self.union_segre_of(&subset)?;
            Ok::<_, Error>(if subset.len() % 2 == 1 { class } else { -&class })
        })?;
        Ok(terms.iter().fold(CycleClass::zero(&Basis::projective(self.ambient_dim())), |acc, t| &acc + t))
    }

    /// `π_*(R_1 ··· R_r)`.
    pub fn residual_product(&self) -> CycleClass {
        self.model.pushforward_product(&self.residuals)
    }
}

/// `s(Z, P^n)` for a smooth center: `ι_*(c(N)^(-1) ∩ [Z])`.
pub fn segre_smooth(center: &SplitCenter) -> CycleClass {
    center.segre_class()
}

/// `s(X, P^n)` for a hypersurface of degree `d`: `dh/(1+dh) ∩ [P^n]`.
pub fn segre_hypersurface(n: usize, d: i64) -> Result<CycleClass> {
    let d = checked_degree(d)?;
    Model::Projective(n).pushforward_divisor_power_series(&DivisorClass(vec![d]))
}

pub fn union_segre(q: &UnionSegreQuery) -> Result<CycleClass> {
    q.resolve()?.union_segre()
}

pub fn incl_excl_rhs(q: &UnionSegreQuery, exec: Exec) -> Result<CycleClass> {
    q.resolve()?.incl_excl_rhs(exec)
}

/// Returns `(rhs - s(Y,M), n! π_*(R_1···R_n))` for a query with exactly
/// `n = dim M` components; the two agree.
pub fn prop_fact_defect(q: &UnionSegreQuery, exec: Exec) -> Result<(CycleClass, CycleClass)> {
    let n = q.ambient_dim();
    if q.components.len() != n {
        return Err(Error::WrongComponentCount { expected: n, got: q.components.len() });
    }
    let res = q.resolve()?;
    let defect = &res.incl_excl_rhs(exec)? - &res.segre_of_y();
    let product = res.residual_product().scale(&Rational::from_integer(factorial(n as u64)));
    Ok((defect, product))
}

/// One hypersurface `X ⊇ Y` of degree `d` in `P^n`, repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedComponent {
    pub n: usize,
    pub y: Option<SplitCenter>,
    pub degree: i64,
}

/// One row of the successive-approximation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxRow {
    pub r: usize,
    /// `s(Y; X^(r); M)`.
    pub union_segre: CycleClass,
    /// `Σ_{s=1}^r (-1)^(s-1) C(r,s) s(Y; X^(s); M)`.
    pub approximation: CycleClass,
}

impl RepeatedComponent {
    pub fn new(n: usize, y: Option<SplitCenter>, degree: i64) -> Result<Self> {
        checked_degree(degree)?;
        if let Some(c) = &y {
            if c.ambient_dim() != n {
                return Err(Error::InvalidParameters(format!("center lives in P^{}, not P^{n}", c.ambient_dim())));
            }
        }
        Ok(RepeatedComponent { n, y, degree })
    }

    fn query(&self, s: usize) -> Result<UnionSegreQuery> {
        UnionSegreQuery::hypersurfaces(self.n, self.y.clone(), vec![self.degree; s])
    }

    /// `s(Y; X^(s); M)`, using `D = s·d·h - (s-1)e` (or `s·d·h` for empty `Y`).
    pub fn union_segre(&self, s: usize) -> Result<CycleClass> {
        union_segre(&self.query(s)?)
    }

    /// `s(Y, M)`.
    pub fn segre_of_y(&self) -> CycleClass {
        match &self.y {
            Some(c) => segre_smooth(c),
            None => CycleClass::zero(&Basis::projective(self.n)),
        }
    }

    pub fn union_segre_values(&self, r_max: usize, exec: Exec) -> Result<Vec<CycleClass>> {
        exec.try_map((1..=r_max).collect(), |s| self.union_segre(s))
    }

    pub fn approximation(&self, r: usize, exec: Exec) -> Result<CycleClass> {
        if r == 0 {
            return Err(Error::InvalidParameters("approximation index r must be >= 1".into()));
        }
        Ok(approximation_from_values(&self.union_segre_values(r, exec)?))
    }

    /// Rows `r = 1..=r_max`.
    pub fn table(&self, r_max: usize, exec: Exec) -> Result<Vec<ApproxRow>> {
        let values = self.union_segre_values(r_max, exec)?;
        Ok((1..=r_max)
            .map(|r| ApproxRow {
                r,
                union_segre: values[r - 1].clone(),
                approximation: approximation_from_values(&values[..r]),
            })
            .collect())
    }
}

/// `Σ_{s=1}^r (-1)^(s-1) C(r,s) values[s-1]` with `r = values.len()`.
pub fn approximation_from_values(values: &[CycleClass]) -> CycleClass {
    let r = values.len() as u64;
    let mut out = CycleClass::zero(values[0].basis());
    for (idx, v) in values.iter().enumerate() {
        let s = idx as u64 + 1;
        let c = signed(crate::graded::binomial(r, s), s.is_multiple_of(2));
        out = &out + &v.scale(&c);
    }
    out
}

fn signed(c: BigInt, negative: bool) -> Rational {
    let c = Rational::from_integer(c);
    if negative {
        -c
    } else {
        c
    }
}

/// Predicts `s(Y; X^(r+1); M)` from `values[s-1] = s(Y; X^(s); M)`,
/// `s = 1..=r`, as `Σ_{s=1}^r (-1)^(r-s) C(r, s-1) values[s-1]`.
/// Valid only for `r > n`.
pub fn recursion_next(n: usize, values: &[CycleClass]) -> Result<CycleClass> {
    let r = values.len();
    if r <= n {
        return Err(Error::RecursionBelowStabilization { r, n });
    }
    let mut out = CycleClass::zero(values[0].basis());
    for (idx, v) in values.iter().enumerate() {
        let s = idx + 1;
        let c = signed(crate::graded::binomial(r as u64, s as u64 - 1), (r - s) % 2 == 1);
        out = &out + &v.scale(&c);
    }
    Ok(out)
}

/// `s(X,M) + c(O(X))^(-1) ∩ (s(Y,M)^∨ ⊗ O(X))` for `X = X_1 ∪ X_2`, two
/// transversal hypersurfaces of degrees `d1, d2` meeting in `y`.
pub fn closed_form_repr(n: usize, d1: i64, d2: i64, y: &SplitCenter) -> Result<CycleClass> {
    let d = checked_degree(d1)? + checked_degree(d2)?;
    if y.ambient_dim() != n {
        return Err(Error::InvalidParameters(format!("center lives in P^{}, not P^{n}", y.ambient_dim())));
    }
    let s_x = segre_hypersurface(n, d)?;
    let twisted = segre_smooth(y).dual().tensor(d)?;
    let correction = twisted.cap_projective(&TruncPoly::one_plus_pow(d, -1, n));
    Ok(&s_x + &correction)
}
