//! The golden-table, line-configuration, Euler and verification commands.

use std::fmt::Write;

use num_bigint::BigInt;
use serde_json::{json, Value};

use segcalc_core::csm::{
    ambient_compare, chern_recursion_verify, csm_union, csm_via_relsm, euler_integer, euler_sequence,
    AlmostNonsingularConfig,
};
use segcalc_core::graded::{factorial, CycleClass};
use segcalc_core::identities::{
    alternating_binomial_sum, check_divisibility, defect_series_mutated, prop_fact_coefficient, DefectSeriesSpec,
};
use segcalc_core::segre::{
    closed_form_repr, incl_excl_rhs, prop_fact_defect, recursion_next, segre_smooth, union_segre, ApproxRow,
    RepeatedComponent, UnionSegreQuery,
};
use segcalc_core::{Exec, SplitCenter, TowerP3Lines, YMode};

use crate::classjson::class_to_json;
use crate::report::{Check, Status};
use crate::scenario::{chern_inverse, identity_checks};
use crate::{CliError, Output, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Successive approximations for `X = P^(n-1)` containing a quadric surface
/// `Y` of a `P^3`, rows `1..=max(7, n+2)`.
pub struct ApproxTable {
    pub n: usize,
    pub rows: Vec<ApproxRow>,
    pub segre_of_y: CycleClass,
    /// First row from which every later row equals `s(Y, P^n)`.
    pub stabilizes_at: Option<usize>,
}

pub fn approx_table(n: usize, exec: Exec) -> Result<ApproxTable, CliError> {
    let rep = RepeatedComponent::new(n, Some(SplitCenter::quadric_surface(n)?), 1)?;
    let rows = rep.table(7.max(n + 2), exec)?;
    let segre_of_y = rep.segre_of_y();
    let stabilizes_at = (0..rows.len())
        .find(|&i| rows[i..].iter().all(|row| row.approximation == segre_of_y))
        .map(|i| rows[i].r);
    Ok(ApproxTable { n, rows, segre_of_y, stabilizes_at })
}

pub fn cmd_approx_table(n: usize, format: Format, exec: Exec) -> Result<Output, CliError> {
    let table = approx_table(n, exec)?;
    let stable = |r: usize| table.stabilizes_at.is_some_and(|s| r >= s);
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "successive approximations of s(Y, P^{n}), X = P^{}, Y = quadric surface", n - 1).unwrap();
            let width = table.rows.iter().map(|row| row.approximation.to_string().len()).max().unwrap_or(0);
            for row in &table.rows {
                let mark = if Some(row.r) == table.stabilizes_at { "  <- stabilizes" } else { "" };
                writeln!(out, "r={}  {:<width$}  (s(Y;X^({});M) = {}){mark}", row.r, row.approximation.to_string(), row.r, row.union_segre)
                    .unwrap();
            }
            writeln!(out, "s(Y, P^{n}) = {}", table.segre_of_y).unwrap();
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "r": row.r,
                        "approximation": class_to_json(&row.approximation),
                        "union_segre": class_to_json(&row.union_segre),
                        "stable": stable(row.r),
                    })
                })
                .collect();
            let doc = json!({
                "n": n,
                "rows": rows,
                "segre_of_y": class_to_json(&table.segre_of_y),
                "stabilizes_at": table.stabilizes_at,
            });
            out = serde_json::to_string_pretty(&doc).expect("serializes") + "\n";
        }
        Format::Csv => {
            let dims: Vec<String> = (0..=n).rev().map(|d| format!("P^{d}")).collect();
            writeln!(out, "r,quantity,{},stable", dims.join(",")).unwrap();
            for row in &table.rows {
                for (name, class) in [("approximation", &row.approximation), ("union_segre", &row.union_segre)] {
                    let coeffs: Vec<String> = (0..=n).rev().map(|d| class.coeff_in_dim(d).to_string()).collect();
                    writeln!(out, "{},{name},{},{}", row.r, coeffs.join(","), stable(row.r)).unwrap();
                }
            }
        }
    }
    Ok(Output::ok(out))
}

/// Published values for the line configurations, as `(count, mode, [P^0] coefficient)`.
/// The `[P^1]` coefficient is always the number of lines.
const PUBLISHED_LINES: [(usize, YMode, i64); 3] = [(2, YMode::Point, -5), (3, YMode::Point, -12), (2, YMode::Empty, -4)];

#[derive(Debug, Clone)]
pub struct LinesReport {
    pub count: usize,
    pub mode: YMode,
    /// Push-forward from the blow-up tower.
    pub tower: CycleClass,
    /// `c(TP^3)^(-1) ∩` the inclusion-exclusion CSM class (point mode only).
    pub from_csm: Option<CycleClass>,
    pub csm_relsm: Option<CycleClass>,
    pub csm_incl_excl: Option<CycleClass>,
    pub euler: Option<BigInt>,
    pub published: Option<CycleClass>,
    pub checks: Vec<Check>,
}

pub fn lines_report(count: usize, mode: YMode) -> Result<LinesReport, CliError> {
    if !(1..=8).contains(&count) {
        return Err(CliError::Config("--count must be in 1..=8".into()));
    }
    let tower = union_segre(&UnionSegreQuery::lines(TowerP3Lines::new(count, mode)?, (1..=count).collect()))?;
    let published = PUBLISHED_LINES
        .iter()
        .find(|(m, md, _)| *m == count && *md == mode)
        .map(|(m, _, c)| CycleClass::projective(3, [(1, *m as i64), (0, *c)]));
    let mut report = LinesReport {
        count,
        mode,
        tower,
        from_csm: None,
        csm_relsm: None,
        csm_incl_excl: None,
        euler: None,
        published,
        checks: vec![],
    };
    if mode == YMode::Point {
        let config = AlmostNonsingularConfig::lines_through_point(count)?;
        let relsm = csm_via_relsm(&config)?;
        let incl = csm_union(&config)?;
        let from_csm = incl.cap_projective(&chern_inverse(3));
        report.checks.push(Check::compare("tower vs c(TP^3)^-1 ∩ csm", &report.tower, &from_csm));
        report.checks.push(Check::compare("csm: relSM vs inclusion-exclusion", &relsm, &incl));
        report.euler = Some(euler_integer(&incl)?);
        report.from_csm = Some(from_csm);
        report.csm_relsm = Some(relsm);
        report.csm_incl_excl = Some(incl);
    }
    if let Some(p) = &report.published {
        let check = Check::compare("published value", &report.tower, p);
        let check = if check.status == Status::Fail {
            check.with_status(Status::Warn).with_note("computed value disagrees with the published value")
        } else {
            check
        };
        report.checks.push(check);
    }
    Ok(report)
}

pub fn cmd_lines(count: usize, mode: YMode) -> Result<Output, CliError> {
    let r = lines_report(count, mode)?;
    let mut out = String::new();
    let y = match mode {
        YMode::Point => "p",
        YMode::Empty => "∅",
    };
    let names: Vec<String> = (1..=count).map(|i| format!("L{i}")).collect();
    writeln!(out, "s({y}; {}; P^3) = {}    [blow-up tower]", names.join(","), r.tower).unwrap();
    match (&r.from_csm, &r.csm_relsm, &r.csm_incl_excl, &r.euler) {
        (Some(s), Some(relsm), Some(incl), Some(chi)) => {
            writeln!(out, "s({y}; {}; P^3) = {s}    [c(TP^3)^-1 ∩ csm]", names.join(",")).unwrap();
            writeln!(out, "csm (relSM)               = {relsm}").unwrap();
            writeln!(out, "csm (inclusion-exclusion) = {incl}").unwrap();
            writeln!(out, "euler characteristic      = {chi}").unwrap();
        }
        _ => writeln!(out, "csm: not applicable (components do not meet in Y)").unwrap(),
    }
    if let Some(p) = &r.published {
        writeln!(out, "published value           = {p}").unwrap();
    }
    for c in &r.checks {
        writeln!(out, "[{}] {}: {} | {}", c.status.as_str(), c.name, c.lhs, c.rhs).unwrap();
    }
    let mut stderr = String::new();
    if r.checks.iter().any(|c| c.status == Status::Warn) {
        writeln!(stderr, "warning: the computed class differs from the published value; both are shown above").unwrap();
    }
    if count == 3 && mode == YMode::Point {
        writeln!(
            out,
            "note (out of scope): published s(X,P^3) for the reduced union of three concurrent lines: \
             [X] - 10[P^0] (non-coplanar), [X] - 12[P^0] (coplanar); not computed here"
        )
        .unwrap();
    }
    let code = if r.checks.iter().any(|c| c.status == Status::Fail) { EXIT_CHECK_FAILED } else { EXIT_OK };
    Ok(Output { stdout: out, stderr, code })
}

pub fn cmd_euler(n: usize, d: i64, r_max: usize) -> Result<Output, CliError> {
    if n == 0 || r_max == 0 {
        return Err(CliError::Config("--n and --rmax must be >= 1".into()));
    }
    let seq = euler_sequence(n, d, r_max)?;
    let mut out = String::new();
    let items: Vec<String> = seq.iter().map(|v| v.to_string()).collect();
    writeln!(out, "{}", items.join(", ")).unwrap();
    let mut failed = false;
    for r in n.max(1)..=r_max {
        let rep = chern_recursion_verify(n, d, r)?;
        failed |= !rep.passed;
        let status = if rep.passed { "pass" } else { "fail" };
        writeln!(out, "[{status}] recursion r={r}: chi = {}", euler_integer(&rep.recursion)?).unwrap();
    }
    Ok(Output { stdout: out, stderr: String::new(), code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK } })
}

pub const SUITES: [&str; 4] = ["identities", "incexc", "relsm", "recursion"];

/// One verification line.
#[derive(Debug, Clone)]
pub struct SuiteCheck {
    pub suite: &'static str,
    pub check: Check,
}

fn p(n: usize, terms: &[(usize, i64)]) -> CycleClass {
    CycleClass::projective(n, terms.iter().copied())
}

pub fn suite_identities(exec: Exec, truncation: Option<u32>) -> Result<Vec<Check>, CliError> {
    let mut checks = vec![];
    let cases: Vec<(usize, u32)> = match truncation {
        Some(t) if t > 12 => return Err(CliError::Config("--truncation must be <= 12".into())),
        Some(t) => (1..=6.min(t as usize)).map(|r| (r, t)).collect(),
        None => (1..=5).map(|r| (r, r as u32 + 4)).chain([(6, 8)]).collect(),
    };
    for (r, t) in cases {
        checks.extend(identity_checks(&DefectSeriesSpec::new(r, t, true)?, exec));
    }
    let spec = DefectSeriesSpec::new(3, 5, true)?;
    let mutated = check_divisibility(&spec, &defect_series_mutated(&spec, 0b101, exec));
    checks.push(Check::boolean(
        "sign-flipped series is caught (r=3 T=5)",
        !mutated.divisible(),
        mutated.first_offending.unwrap_or_else(|| "divisible".into()),
        "not divisible",
    ));
    for n in 0..=12usize {
        for r in 0..=n {
            let got = alternating_binomial_sum(n, r)?;
            let want = if r == n { factorial(n as u64) } else { BigInt::from(0) };
            if r == n || r + 1 == n {
                checks.push(Check::boolean(format!("alternating_binomial_sum({n},{r})"), got == want, &got, &want));
            } else if got != want {
                checks.push(Check::boolean(format!("alternating_binomial_sum({n},{r})"), false, &got, &want));
            }
        }
    }
    for n in 1..=10usize {
        let c = prop_fact_coefficient(n)?;
        let f = factorial(n as u64);
        checks.push(Check::boolean(format!("|prop_fact_coefficient({n})| = {n}!"), c == f || c == -f.clone(), &c, &f));
    }
    Ok(checks)
}

fn quadric_table_rows() -> [CycleClass; 6] {
    [
        p(5, &[(4, 1), (3, -1), (2, 1), (1, -1), (0, 1)]),
        p(5, &[(3, 2), (2, -4), (1, 6), (0, -8)]),
        p(5, &[(2, -4), (1, 4), (0, -8)]),
        p(5, &[(2, 2), (1, 16), (0, 22)]),
        p(5, &[(2, 2), (1, -8), (0, -98)]),
        p(5, &[(2, 2), (1, -8), (0, 22)]),
    ]
}

pub fn suite_incexc(exec: Exec) -> Result<Vec<Check>, CliError> {
    let mut checks = vec![];
    let table = approx_table(5, exec)?;
    for (row, want) in table.rows.iter().zip(quadric_table_rows()) {
        checks.push(Check::compare(format!("P^5 quadric table row {}", row.r), &row.approximation, &want));
    }
    checks.push(Check::compare("P^5 quadric table row 7", &table.rows[6].approximation, &table.segre_of_y));
    let q = UnionSegreQuery::hypersurfaces(5, Some(SplitCenter::quadric_surface(5)?), vec![1; 5])?;
    let (defect, product) = prop_fact_defect(&q, exec)?;
    checks.push(Check::compare("P^5 defect = 5! pi_*(R1..R5)", &defect, &product));
    checks.push(Check::compare("P^5 defect value", &defect, &p(5, &[(0, -120)])));
    for n in 2..=6 {
        for r in 2..=n {
            let y = SplitCenter::linear(n, n - r)?;
            let q = UnionSegreQuery::hypersurfaces(n, Some(y.clone()), vec![1; r])?;
            checks.push(Check::compare(
                format!("transversal hyperplanes n={n} r={r}: rhs = s(Y)"),
                &incl_excl_rhs(&q, exec)?,
                &segre_smooth(&y),
            ));
        }
    }
    let mut cases = vec![(5, SplitCenter::quadric_surface(5)?)];
    for n in 2..=4 {
        for m in 0..n - 1 {
            cases.push((n, SplitCenter::linear(n, m)?));
        }
    }
    for (n, y) in cases {
        let label = format!("{:?}", y.kind()).to_lowercase();
        let values = RepeatedComponent::new(n, Some(y), 1)?.union_segre_values(n + 3, exec)?;
        for r in n + 1..=n + 2 {
            checks.push(Check::compare(
                format!("recursion_next n={n} {label} r={}", r + 1),
                &recursion_next(n, &values[..r])?,
                &values[r],
            ));
        }
    }
    Ok(checks)
}

pub fn suite_relsm() -> Result<Vec<Check>, CliError> {
    let mut checks = vec![];
    let mut pairs: Vec<(usize, i64, i64, SplitCenter)> = vec![];
    for n in 2..=6 {
        pairs.push((n, 1, 1, SplitCenter::linear(n, n - 2)?));
        pairs.push((n, 1, 2, SplitCenter::complete_intersection(n, &[1, 2])?));
        pairs.push((n, 2, 2, SplitCenter::complete_intersection(n, &[2, 2])?));
    }
    for (n, d1, d2, y) in pairs {
        let q = UnionSegreQuery::hypersurfaces(n, Some(y.clone()), vec![d1, d2])?;
        let direct = union_segre(&q)?;
        let closed = closed_form_repr(n, d1, d2, &y)?;
        let csm = csm_union(&AlmostNonsingularConfig::hypersurfaces(n, &[d1, d2], y)?)?;
        let via_csm = csm.cap_projective(&chern_inverse(n));
        let tag = format!("n={n} ({d1},{d2})");
        checks.push(Check::compare(format!("three-way {tag}: union_segre = closed form"), &direct, &closed));
        checks.push(Check::compare(format!("three-way {tag}: union_segre = c(TP^n)^-1 ∩ csm"), &direct, &via_csm));
    }
    let q = UnionSegreQuery::hypersurfaces(3, Some(SplitCenter::linear(3, 1)?), vec![1, 1])?;
    checks.push(Check::compare(
        "two planes in P^3",
        &union_segre(&q)?,
        &p(3, &[(2, 2), (1, -3), (0, 4)]),
    ));
    for m in 1..=6 {
        let config = AlmostNonsingularConfig::lines_through_point(m)?;
        checks.push(Check::compare(
            format!("{m} lines through a point: relSM = inclusion-exclusion"),
            &csm_via_relsm(&config)?,
            &csm_union(&config)?,
        ));
    }
    let point_p2 = UnionSegreQuery::hypersurfaces(2, Some(SplitCenter::linear(2, 0)?), vec![1, 1])?;
    checks.push(Check::compare("s(p;L1,L2;P^2)", &union_segre(&point_p2)?, &p(2, &[(1, 2), (0, -3)])));
    let point_p3 = union_segre(&UnionSegreQuery::lines(TowerP3Lines::new(2, YMode::Point)?, vec![1, 2]))?;
    checks.push(Check::compare("s(p;L1,L2;P^3)", &point_p3, &p(3, &[(1, 2), (0, -5)])));
    let empty_p2 = UnionSegreQuery::hypersurfaces(2, None, vec![1, 1])?;
    checks.push(Check::compare("s(∅;L1,L2;P^2)", &union_segre(&empty_p2)?, &p(2, &[(1, 2), (0, -4)])));
    let empty_p3 = union_segre(&UnionSegreQuery::lines(TowerP3Lines::new(2, YMode::Empty)?, vec![1, 2]))?;
    checks.push(Check::compare("s(∅;L1,L2;P^3)", &empty_p3, &p(3, &[(1, 2), (0, -4)])));
    let moved = ambient_compare(&point_p3, 2, 3)?;
    checks.push(Check::compare("(1+h) ∩ s(p;L1,L2;P^3) = s(p;L1,L2;P^2)", &moved.forward, &p(2, &[(1, 2), (0, -3)])));
    Ok(checks)
}

pub fn suite_recursion() -> Result<Vec<Check>, CliError> {
    let mut checks = vec![];
    let seq = euler_sequence(2, 1, 8)?;
    let want: Vec<BigInt> = [2, 2, 0, -4, -10, -18, -28, -40].into_iter().map(BigInt::from).collect();
    let show = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    checks.push(Check::boolean("plane curve Euler characteristics", seq == want, show(&seq), show(&want)));
    for r in 2..=6 {
        let rep = chern_recursion_verify(2, 1, r)?;
        let chi = euler_integer(&rep.recursion)?;
        checks.push(Check::boolean(format!("P^2 Euler row r={r}"), rep.passed && chi == want[r - 1], &chi, &want[r - 1]));
    }
    for n in 1..=4 {
        for d in 1..=3 {
            for r in n..=n + 4 {
                let rep = chern_recursion_verify(n, d, r)?;
                checks.push(Check::compare(format!("chern recursion n={n} d={d} r={r}"), &rep.recursion, &rep.direct));
            }
        }
    }
    Ok(checks)
}

/// Runs one suite (or `all`); unknown names are configuration errors.
pub fn run_suite(name: &str, exec: Exec, truncation: Option<u32>) -> Result<Vec<SuiteCheck>, CliError> {
    let names: Vec<&'static str> = match name {
        "all" => SUITES.to_vec(),
        other => match SUITES.iter().find(|s| **s == other) {
            Some(s) => vec![*s],
            None => {
                return Err(CliError::Config(format!("unknown suite {other:?}; expected one of {}, all", SUITES.join(", "))))
            }
        },
    };
    let mut out = vec![];
    for suite in names {
        let checks = match suite {
            "identities" => suite_identities(exec, truncation)?,
            "incexc" => suite_incexc(exec)?,
            "relsm" => suite_relsm()?,
            _ => suite_recursion()?,
        };
        out.extend(checks.into_iter().map(|check| SuiteCheck { suite, check }));
    }
    Ok(out)
}

pub fn cmd_verify(name: &str, exec: Exec, truncation: Option<u32>) -> Output {
    let checks = match run_suite(name, exec, truncation) {
        Ok(c) => c,
        Err(e) => return Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_CONFIG },
    };
    let mut out = String::new();
    let failed = checks.iter().filter(|c| c.check.status == Status::Fail).count();
    for c in &checks {
        let status = if c.check.status == Status::Fail { "FAIL" } else { "PASS" };
        writeln!(out, "{status} {}/{}: {} | {}", c.suite, c.check.name, c.check.lhs, c.check.rhs).unwrap();
        for note in &c.check.notes {
            writeln!(out, "    {note}").unwrap();
        }
    }
    writeln!(out, "{} checks, {failed} failed", checks.len()).unwrap();
    Output { stdout: out, stderr: String::new(), code: if failed > 0 { EXIT_CHECK_FAILED } else { EXIT_OK } }
}
