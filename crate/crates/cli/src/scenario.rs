//! Scenario files (`"schema": "segcalc/1"`): one declarative computation
//! per object, or a JSON array of them run as a batch.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;

use segcalc_core::csm::{
    ambient_compare, chern_recursion_verify, csm_union, csm_via_relsm, euler_sequence, sm_segre,
    AlmostNonsingularConfig,
};
use segcalc_core::graded::{factorial, Basis, BasisElement, CycleClass, HAction, Rational, TruncPoly};
use segcalc_core::identities::{
    check_divisibility, defect_series, target_coefficient, vanishes_without_last_residual, DefectSeriesSpec,
};
use segcalc_core::segre::{
    closed_form_repr, incl_excl_rhs, prop_fact_defect, recursion_next, union_segre, RepeatedComponent,
    UnionSegreQuery,
};
use segcalc_core::{Exec, SplitCenter, TowerP3Lines, YMode};

use crate::classjson::{class_from_coeff_map, Coeff};
use crate::report::{Check, Report, Status};
use crate::{CliError, Output, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK};

pub const SCHEMA: &str = "segcalc/1";
const MAX_AMBIENT: usize = 12;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    pub name: String,
    pub ambient: Ambient,
    #[serde(default)]
    pub center: Option<CenterField>,
    #[serde(default)]
    pub components: Option<ComponentsSpec>,
    pub operation: Operation,
    #[serde(default)]
    pub expected: Option<Expected>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ambient {
    pub n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CenterField {
    Empty(EmptyMarker),
    Described(CenterDescriptor),
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub enum EmptyMarker {
    #[serde(rename = "empty")]
    Empty,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CenterDescriptor {
    Linear { dim: usize },
    QuadricSurface,
    CompleteIntersection { degrees: Vec<i64> },
    Custom(CustomCenter),
}

/// Explicit center data: `h_action[i]` is the coefficient vector of
/// `h ∩ basis[i]`, `pushforward[i]` the degree of `basis[i]` in `P^n`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomCenter {
    #[serde(default = "custom_name")]
    pub name: String,
    pub normal_degrees: Vec<i64>,
    pub basis: Vec<BasisEntry>,
    pub fundamental: Vec<Coeff>,
    pub h_action: Vec<Vec<Coeff>>,
    pub pushforward: Vec<Coeff>,
}

fn custom_name() -> String {
    "Z".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub label: String,
    pub dim: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ComponentsSpec {
    Hypersurfaces(HypersurfaceList),
    Lines(LineList),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypersurfaceList {
    pub hypersurfaces: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineList {
    pub lines: usize,
    #[serde(default)]
    pub subset: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Operation {
    UnionSegre,
    InclExcl,
    Approximation { r: usize },
    Recursion { r: usize },
    PropFact,
    Csm,
    SmSegre,
    AmbientCompare { n_prime: usize },
    ClosedForm,
    EulerSequence {
        #[serde(default = "one")]
        d: i64,
        r_max: usize,
    },
    ChernRecursion { d: i64, r: usize },
    Identities {
        r: usize,
        #[serde(default)]
        t: Option<u32>,
        #[serde(default)]
        include_y: bool,
    },
}

fn one() -> i64 {
    1
}

/// Expected values; `published` holds a value from the literature that is
/// compared as a warning only.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default)]
    pub coeffs: Option<BTreeMap<String, Coeff>>,
    #[serde(default)]
    pub sequence: Option<Vec<i64>>,
    #[serde(default)]
    pub published: Option<BTreeMap<String, Coeff>>,
    #[serde(default)]
    pub provenance: Option<String>,
}

/// Parses a file holding one scenario or an array of them. Syntax and
/// schema errors carry the line/column in the original text; validation
/// errors name the scenario and its batch index.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>, CliError> {
    let located = |kind: &str, e: serde_json::Error| {
        CliError::Config(format!("{kind} error at line {}, column {}: {e}", e.line(), e.column()))
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| located("parse", e))?;
    let scenarios: Vec<Scenario> = if value.is_array() {
        serde_json::from_str(text).map_err(|e| located("schema", e))?
    } else {
        vec![serde_json::from_str(text).map_err(|e| located("schema", e))?]
    };
    if scenarios.is_empty() {
        return Err(config("scenario batch is empty"));
    }
    for (idx, s) in scenarios.iter().enumerate() {
        s.validate().map_err(|e| config(format!("scenario #{idx} ({:?}): {e}", s.name)))?;
    }
    Ok(scenarios)
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Scenario {
    /// Field requirements that do not need any computation.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema != SCHEMA {
            return Err(config(format!("schema must be {SCHEMA:?}, got {:?}", self.schema)));
        }
        let n = self.ambient.n;
        if n == 0 || n > MAX_AMBIENT {
            return Err(config(format!("ambient.n must be in 1..={MAX_AMBIENT}")));
        }
        let needs_components = !matches!(
            self.operation,
            Operation::EulerSequence { .. } | Operation::ChernRecursion { .. } | Operation::Identities { .. }
        );
        if needs_components && self.components.is_none() {
            return Err(config("operation requires \"components\""));
        }
        match &self.components {
            Some(ComponentsSpec::Lines(l)) => {
                if n != 3 {
                    return Err(config("line configurations live in P^3"));
                }
                if !(1..=8).contains(&l.lines) {
                    return Err(config("components.lines must be in 1..=8"));
                }
            }
            Some(ComponentsSpec::Hypersurfaces(h)) if h.hypersurfaces.is_empty() => {
                return Err(config("components.hypersurfaces is empty"));
            }
            _ => {}
        }
        let needs_center = matches!(self.operation, Operation::Csm | Operation::SmSegre | Operation::ClosedForm);
        if needs_center && self.is_empty_center() {
            return Err(config("operation requires a nonempty center"));
        }
        match &self.operation {
            Operation::Approximation { r } | Operation::Recursion { r } if *r == 0 => {
                Err(config("operation r must be >= 1"))
            }
            Operation::Recursion { r } if *r <= n + 1 => {
                Err(config(format!("recursion predicts r from r-1 > n values; need r > {}", n + 1)))
            }
            Operation::Approximation { .. } | Operation::Recursion { .. } => match &self.components {
                Some(ComponentsSpec::Hypersurfaces(h)) if h.hypersurfaces.windows(2).all(|w| w[0] == w[1]) => Ok(()),
                _ => Err(config("approximation/recursion need one repeated hypersurface degree")),
            },
            Operation::ClosedForm => match &self.components {
                Some(ComponentsSpec::Hypersurfaces(h)) if h.hypersurfaces.len() == 2 => Ok(()),
                _ => Err(config("closed_form needs exactly two hypersurfaces")),
            },
            Operation::EulerSequence { r_max, .. } if *r_max == 0 => Err(config("r_max must be >= 1")),
            _ => Ok(()),
        }
    }

    fn is_empty_center(&self) -> bool {
        matches!(self.center, None | Some(CenterField::Empty(_)))
    }

    fn center(&self) -> Result<Option<SplitCenter>, CliError> {
        let n = self.ambient.n;
        let desc = match &self.center {
            None | Some(CenterField::Empty(_)) => return Ok(None),
            Some(CenterField::Described(d)) => d,
        };
        let center = match desc {
            CenterDescriptor::Linear { dim } => SplitCenter::linear(n, *dim)?,
            CenterDescriptor::QuadricSurface => SplitCenter::quadric_surface(n)?,
            CenterDescriptor::CompleteIntersection { degrees } => SplitCenter::complete_intersection(n, degrees)?,
            CenterDescriptor::Custom(c) => custom_center(n, c)?,
        };
        Ok(Some(center))
    }

    fn degrees(&self) -> Option<&[i64]> {
        match &self.components {
            Some(ComponentsSpec::Hypersurfaces(h)) => Some(&h.hypersurfaces),
            _ => None,
        }
    }

    fn query(&self) -> Result<UnionSegreQuery, CliError> {
        let n = self.ambient.n;
        match &self.components {
            Some(ComponentsSpec::Hypersurfaces(h)) => {
                Ok(UnionSegreQuery::hypersurfaces(n, self.center()?, h.hypersurfaces.clone())?)
            }
            Some(ComponentsSpec::Lines(l)) => {
                let mode = match self.center()? {
                    None => YMode::Empty,
                    Some(c) if c.dim() == 0 && c.normal_degrees().iter().all(|&d| d == 1) => YMode::Point,
                    Some(_) => return Err(config("lines support a point center or \"empty\"")),
                };
                let subset = l.subset.clone().unwrap_or_else(|| (1..=l.lines).collect());
                if subset.is_empty() || subset.iter().any(|&i| i == 0 || i > l.lines) {
                    return Err(config(format!("subset entries must lie in 1..={}", l.lines)));
                }
                Ok(UnionSegreQuery::lines(TowerP3Lines::new(l.lines, mode)?, subset))
            }
            None => Err(config("operation requires \"components\"")),
        }
    }

    fn almost_nonsingular(&self) -> Result<AlmostNonsingularConfig, CliError> {
        let y = self.center()?.ok_or_else(|| config("operation requires a nonempty center"))?;
        match &self.components {
            Some(ComponentsSpec::Hypersurfaces(h)) => {
                Ok(AlmostNonsingularConfig::hypersurfaces(self.ambient.n, &h.hypersurfaces, y)?)
            }
            Some(ComponentsSpec::Lines(l)) => {
                if y.dim() != 0 || l.subset.as_ref().is_some_and(|s| s.len() != l.lines) {
                    return Err(config("CSM of lines needs a point center and all lines"));
                }
                Ok(AlmostNonsingularConfig::lines_through_point(l.lines)?)
            }
            None => Err(config("operation requires \"components\"")),
        }
    }

    fn repeated(&self) -> Result<RepeatedComponent, CliError> {
        let d = self.degrees().and_then(|d| d.first().copied()).ok_or_else(|| config("missing hypersurface degree"))?;
        Ok(RepeatedComponent::new(self.ambient.n, self.center()?, d)?)
    }

    /// Runs the operation and attaches the built-in and expected-value checks.
    pub fn run(&self, exec: Exec, truncation: Option<u32>) -> Result<Report, CliError> {
        self.validate()?;
        let n = self.ambient.n;
        let mut report = Report::new(&self.name);
        match &self.operation {
            Operation::UnionSegre => report.class = Some(union_segre(&self.query()?)?),
            Operation::InclExcl => report.class = Some(incl_excl_rhs(&self.query()?, exec)?),
            Operation::Approximation { r } => {
                let rep = self.repeated()?;
                let approx = rep.approximation(*r, exec)?;
                if *r > n {
                    report.checks.push(Check::compare("stabilized_at_segre_of_y", &approx, &rep.segre_of_y()));
                }
                report.class = Some(approx);
            }
            Operation::Recursion { r } => {
                let values = self.repeated()?.union_segre_values(*r, exec)?;
                let predicted = recursion_next(n, &values[..r - 1])?;
                report.checks.push(Check::compare("recursion_vs_direct", &predicted, &values[r - 1]));
                report.class = Some(predicted);
            }
            Operation::PropFact => {
                let (defect, product) = prop_fact_defect(&self.query()?, exec)?;
                report.checks.push(Check::compare("defect_vs_factorial_product", &defect, &product));
                report.class = Some(defect);
            }
            Operation::Csm => {
                let config = self.almost_nonsingular()?;
                let direct = csm_union(&config)?;
                report.checks.push(Check::compare("inclusion_exclusion_vs_relsm", &direct, &csm_via_relsm(&config)?));
                report.class = Some(direct);
            }
            Operation::SmSegre => {
                let config = self.almost_nonsingular()?;
                let s = sm_segre(&config)?;
                let from_csm = csm_union(&config)?.cap_projective(&chern_inverse(n));
                report.checks.push(Check::compare("union_segre_vs_csm", &s, &from_csm));
                report.class = Some(s);
            }
            Operation::AmbientCompare { n_prime } => {
                let class = union_segre(&self.query()?)?;
                let cmp = ambient_compare(&class, *n_prime, n)?;
                report.extra.insert("source".into(), class);
                report.extra.insert("reverse_twist".into(), cmp.reverse);
                report.class = Some(cmp.forward);
            }
            Operation::ClosedForm => {
                let y = self.center()?.ok_or_else(|| config("closed_form requires a nonempty center"))?;
                let d = self.degrees().expect("validated");
                let closed = closed_form_repr(n, d[0], d[1], &y)?;
                let direct = union_segre(&self.query()?)?;
                report.checks.push(Check::compare("closed_form_vs_union_segre", &closed, &direct));
                if let Ok(config) = self.almost_nonsingular() {
                    let via_csm = csm_union(&config)?.cap_projective(&chern_inverse(n));
                    report.checks.push(Check::compare("closed_form_vs_csm", &closed, &via_csm));
                }
                report.class = Some(closed);
            }
            Operation::EulerSequence { d, r_max } => report.sequence = Some(euler_sequence(n, *d, *r_max)?),
            Operation::ChernRecursion { d, r } => {
                let rep = chern_recursion_verify(n, *d, *r)?;
                report.checks.push(Check::compare("recursion_vs_direct", &rep.recursion, &rep.direct));
                report.class = Some(rep.direct);
            }
            Operation::Identities { r, t, include_y } => {
                let t = t.or(truncation).unwrap_or(*r as u32 + 4);
                let spec = DefectSeriesSpec::new(*r, t, *include_y)?;
                report.checks.extend(identity_checks(&spec, exec));
            }
        }
        self.expected_checks(&mut report)?;
        Ok(report)
    }

    fn expected_checks(&self, report: &mut Report) -> Result<(), CliError> {
        let Some(expected) = &self.expected else { return Ok(()) };
        let provenance = expected.provenance.as_deref();
        if let Some(coeffs) = &expected.coeffs {
            let want = class_from_coeff_map(self.ambient_of_result(), coeffs)?;
            let got = report.class.as_ref().ok_or_else(|| config("expected.coeffs given but operation yields no class"))?;
            let mut check = Check::compare("expected", got, &want);
            if let Some(p) = provenance {
                check = check.with_note(format!("provenance: {p}"));
            }
            report.checks.push(check);
        }
        if let Some(published) = &expected.published {
            let printed = class_from_coeff_map(self.ambient_of_result(), published)?;
            let got = report.class.as_ref().ok_or_else(|| config("expected.published given but operation yields no class"))?;
            let mut check = Check::compare("published_value", got, &printed);
            if check.status == Status::Fail {
                check = check.with_status(Status::Warn).with_note("computed value disagrees with the published one");
            }
            report.checks.push(check);
        }
        if let Some(seq) = &expected.sequence {
            let got = report.sequence.as_ref().ok_or_else(|| config("expected.sequence given but operation yields none"))?;
            let want: Vec<BigInt> = seq.iter().map(|&v| BigInt::from(v)).collect();
            report.checks.push(Check::boolean("expected", *got == want, join(got), join(&want)));
        }
        Ok(())
    }

    fn ambient_of_result(&self) -> usize {
        match self.operation {
            Operation::AmbientCompare { n_prime } => n_prime,
            _ => self.ambient.n,
        }
    }
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Divisibility, vanishing at `R_r = 0`, and the `-r!` coefficient.
pub fn identity_checks(spec: &DefectSeriesSpec, exec: Exec) -> Vec<Check> {
    let tag = format!("r={} T={}{}", spec.r(), spec.truncation(), if spec.include_y() { " +Y" } else { "" });
    let series = defect_series(spec, exec);
    let report = check_divisibility(spec, &series);
    let divisible = Check::boolean(
        format!("defect series divisible by R1..Rr ({tag})"),
        report.divisible(),
        format!("{} terms", report.num_terms),
        report.first_offending.clone().unwrap_or_else(|| "divisible".into()),
    );
    let vanishes = Check::boolean(
        format!("defect series vanishes at Rr = 0 ({tag})"),
        vanishes_without_last_residual(spec, exec),
        "substituted",
        "0",
    );
    let coeff = target_coefficient(spec, exec);
    let want = -Rational::from_integer(factorial(spec.r() as u64));
    let target = Check::boolean(format!("coefficient of R1..Rr ({tag})"), coeff == want, &coeff, &want);
    vec![divisible, vanishes, target]
}

fn custom_center(n: usize, c: &CustomCenter) -> Result<SplitCenter, CliError> {
    let elements: Vec<BasisElement> =
        c.basis.iter().map(|e| BasisElement { label: e.label.clone(), dim: e.dim }).collect();
    let dim = elements.iter().map(|e| e.dim).max().ok_or_else(|| config("custom center needs a basis"))?;
    let basis = Basis::new(c.name.clone(), elements, dim)?;
    let vector = |coeffs: &[Coeff], what: &str| -> Result<CycleClass, CliError> {
        if coeffs.len() != basis.len() {
            return Err(config(format!("{what} needs {} coefficients", basis.len())));
        }
        let values = coeffs.iter().map(Coeff::to_rational).collect::<Result<Vec<_>, _>>()?;
        Ok(CycleClass::from_coeffs(&basis, values)?)
    };
    let fundamental = vector(&c.fundamental, "fundamental")?;
    if c.h_action.len() != basis.len() {
        return Err(config(format!("h_action needs {} images", basis.len())));
    }
    let images = c.h_action.iter().map(|img| vector(img, "h_action image")).collect::<Result<Vec<_>, _>>()?;
    let h_action = HAction::new(&basis, images)?;
    if c.pushforward.len() != basis.len() {
        return Err(config(format!("pushforward needs {} degrees", basis.len())));
    }
    let target = Basis::projective(n);
    let mut pushforward = Vec::with_capacity(basis.len());
    for (i, deg) in c.pushforward.iter().enumerate() {
        let mut coeffs = vec![Rational::from_integer(BigInt::from(0)); n + 1];
        if basis.dim(i) > n {
            return Err(config("custom basis element exceeds the ambient dimension"));
        }
        coeffs[basis.dim(i)] = deg.to_rational()?;
        pushforward.push(CycleClass::from_coeffs(&target, coeffs)?);
    }
    Ok(SplitCenter::custom(n, c.normal_degrees.clone(), basis, fundamental, h_action, pushforward)?)
}

/// Runs every scenario (concurrently under [`Exec::Parallel`]) and renders
/// the reports in input order.
pub fn run_file(text: &str, json: bool, exec: Exec, truncation: Option<u32>) -> Output {
    let scenarios = match parse_scenarios(text) {
        Ok(s) => s,
        Err(e) => return Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_CONFIG },
    };
    let results = exec.map(scenarios, |s| s.run(exec, truncation).map_err(|e| format!("{}: {e}", s.name)));
    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(report) => reports.push(report),
            Err(e) => return Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_CONFIG },
        }
    }
    let code = if reports.iter().any(Report::failed) { EXIT_CHECK_FAILED } else { EXIT_OK };
    let stdout = if json {
        let values: Vec<serde_json::Value> = reports.iter().map(Report::to_json).collect();
        let doc = if values.len() == 1 { values.into_iter().next().unwrap() } else { serde_json::Value::Array(values) };
        serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
    } else {
        reports.iter().map(Report::to_text).collect::<Vec<_>>().join("\n")
    };
    Output { stdout, stderr: String::new(), code }
}

/// `c(TP^n)^(-1) = (1+h)^(-(n+1))`.
pub fn chern_inverse(n: usize) -> TruncPoly {
    TruncPoly::one_plus_pow(1, -(n as i64 + 1), n)
}
