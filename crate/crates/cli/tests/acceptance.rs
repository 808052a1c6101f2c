//! Acceptance gate: one PASS/FAIL line per criterion, exact equality
//! throughout, and a 10 s budget per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::test_runner::{Config, TestRunner};

use segcalc::commands::{approx_table, lines_report};
use segcalc::scenario::chern_inverse;
use segcalc_core::csm::{ambient_compare, chern_recursion_verify, csm_union, euler_sequence, AlmostNonsingularConfig};
use segcalc_core::graded::{factorial, CycleClass, Rational};
use segcalc_core::identities::{
    alternating_binomial_sum, defect_series_divisible, prop_fact_coefficient, DefectSeriesSpec,
};
use segcalc_core::segre::{
    closed_form_repr, incl_excl_rhs, prop_fact_defect, recursion_next, segre_smooth, union_segre,
    RepeatedComponent, UnionSegreQuery,
};
use segcalc_core::{Exec, SplitCenter, TowerP3Lines, YMode};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const BUDGET: Duration = Duration::from_secs(10);

fn p(n: usize, terms: &[(usize, i64)]) -> CycleClass {
    CycleClass::projective(n, terms.iter().copied())
}

fn same(what: &str, got: &CycleClass, want: &CycleClass) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_reproduction() -> Outcome {
    let printed = [
        p(5, &[(4, 1), (3, -1), (2, 1), (1, -1), (0, 1)]),
        p(5, &[(3, 2), (2, -4), (1, 6), (0, -8)]),
        p(5, &[(2, -4), (1, 4), (0, -8)]),
        p(5, &[(2, 2), (1, 16), (0, 22)]),
        p(5, &[(2, 2), (1, -8), (0, -98)]),
        p(5, &[(2, 2), (1, -8), (0, 22)]),
    ];
    let s_y = p(5, &[(2, 2), (1, -8), (0, 22)]);
    same("s(Y, P^5)", &segre_smooth(&SplitCenter::quadric_surface(5).map_err(|e| e.to_string())?), &s_y)?;
    let table = approx_table(5, Exec::Parallel).map_err(|e| e.to_string())?;
    for (row, want) in table.rows.iter().zip(&printed) {
        same(&format!("row {}", row.r), &row.approximation, want)?;
    }
    for row in table.rows.iter().filter(|row| row.r >= 6) {
        same(&format!("row {}", row.r), &row.approximation, &s_y)?;
    }
    let rep = RepeatedComponent::new(5, Some(SplitCenter::quadric_surface(5).unwrap()), 1).unwrap();
    for r in 8..=9 {
        same(&format!("row {r}"), &rep.approximation(r, Exec::Parallel).map_err(|e| e.to_string())?, &s_y)?;
    }
    ensure(table.stabilizes_at == Some(6), || format!("stabilization flagged at {:?}", table.stabilizes_at))
}

fn defect_instance() -> Outcome {
    let q = UnionSegreQuery::hypersurfaces(5, Some(SplitCenter::quadric_surface(5).unwrap()), vec![1; 5]).unwrap();
    let (defect, product) = prop_fact_defect(&q, Exec::Parallel).map_err(|e| e.to_string())?;
    same("defect", &defect, &p(5, &[(0, -120)]))?;
    same("5! pi_*(R1..R5)", &product, &p(5, &[(0, -120)]))?;
    // row 5 = s(Y) + defect: 22 - 120 = -98
    let row5 = incl_excl_rhs(&q, Exec::Sequential).map_err(|e| e.to_string())?;
    same("row 5", &row5, &(&p(5, &[(2, 2), (1, -8), (0, 22)]) + &defect))
}

fn line_values() -> Outcome {
    let point_p2 = UnionSegreQuery::hypersurfaces(2, Some(SplitCenter::linear(2, 0).unwrap()), vec![1, 1]).unwrap();
    same("s(p;L1,L2;P^2)", &union_segre(&point_p2).unwrap(), &p(2, &[(1, 2), (0, -3)]))?;
    let point_p3 = union_segre(&UnionSegreQuery::lines(TowerP3Lines::new(2, YMode::Point).unwrap(), vec![1, 2])).unwrap();
    same("s(p;L1,L2;P^3)", &point_p3, &p(3, &[(1, 2), (0, -5)]))?;
    let empty_p2 = UnionSegreQuery::hypersurfaces(2, None, vec![1, 1]).unwrap();
    same("s(∅;L1,L2;P^2)", &union_segre(&empty_p2).unwrap(), &p(2, &[(1, 2), (0, -4)]))?;
    let empty_p3 = union_segre(&UnionSegreQuery::lines(TowerP3Lines::new(2, YMode::Empty).unwrap(), vec![1, 2])).unwrap();
    same("s(∅;L1,L2;P^3)", &empty_p3, &p(3, &[(1, 2), (0, -4)]))?;
    let moved = ambient_compare(&point_p3, 2, 3).map_err(|e| e.to_string())?;
    same("(1+h) ∩ (2[P^1]-5[P^0])", &moved.forward, &p(2, &[(1, 2), (0, -3)]))
}

/// Supported centers for two hypersurfaces of degrees `d1, d2`.
fn transversal_center(n: usize, d1: i64, d2: i64) -> SplitCenter {
    SplitCenter::complete_intersection(n, &[d1, d2]).unwrap()
}

fn three_way() -> Outcome {
    let check = |n: usize, d1: i64, d2: i64| -> Outcome {
        let y = transversal_center(n, d1, d2);
        let q = UnionSegreQuery::hypersurfaces(n, Some(y.clone()), vec![d1, d2]).unwrap();
        let direct = union_segre(&q).map_err(|e| e.to_string())?;
        let closed = closed_form_repr(n, d1, d2, &y).map_err(|e| e.to_string())?;
        let csm = csm_union(&AlmostNonsingularConfig::hypersurfaces(n, &[d1, d2], y).unwrap()).unwrap();
        let tag = format!("n={n} ({d1},{d2})");
        same(&format!("{tag} closed form"), &closed, &direct)?;
        same(&format!("{tag} via csm"), &csm.cap_projective(&chern_inverse(n)), &direct)
    };
    for n in 2..=6 {
        check(n, 1, 1)?;
    }
    let mut runner = TestRunner::new(Config { cases: 64, failure_persistence: None, ..Config::default() });
    runner
        .run(&(2usize..=6, 1i64..=3, 1i64..=3), |(n, d1, d2)| {
            check(n, d1, d2).map_err(proptest::test_runner::TestCaseError::fail)
        })
        .map_err(|e| e.to_string())
}

fn transversal_linear_exactness() -> Outcome {
    for n in 2..=6 {
        for r in 2..=n {
            let y = SplitCenter::linear(n, n - r).unwrap();
            // (1+h)^(-r) ∩ [P^(n-r)], coefficient C(-r, j) in dimension n-r-j
            let mut want = vec![];
            let mut c: i64 = 1;
            for j in 0..=(n - r) as i64 {
                want.push(((n - r) - j as usize, c));
                c = c * (-(r as i64) - j) / (j + 1);
            }
            same(&format!("s(P^{}, P^{n})", n - r), &segre_smooth(&y), &p(n, &want))?;
            let q = UnionSegreQuery::hypersurfaces(n, Some(y), vec![1; r]).unwrap();
            same(&format!("n={n} r={r}"), &incl_excl_rhs(&q, Exec::Parallel).map_err(|e| e.to_string())?, &p(n, &want))?;
        }
    }
    Ok(())
}

fn formal_identities() -> Outcome {
    let mut specs: Vec<(usize, u32)> = (1..=5).map(|r| (r, r as u32 + 4)).collect();
    specs.push((6, 8));
    for (r, t) in specs {
        for include_y in [false, true] {
            let spec = DefectSeriesSpec::new(r, t, include_y).map_err(|e| e.to_string())?;
            ensure(defect_series_divisible(&spec, Exec::Parallel), || format!("r={r} T={t} not divisible"))?;
        }
    }
    for n in 0..=12usize {
        let mut fact = BigInt::from(1);
        for k in 1..=n {
            fact *= k;
        }
        for r in 0..=n {
            let got = alternating_binomial_sum(n, r).map_err(|e| e.to_string())?;
            let want = if r == n { fact.clone() } else { BigInt::from(0) };
            ensure(got == want, || format!("alternating_binomial_sum({n},{r}) = {got}, expected {want}"))?;
        }
    }
    for n in 1..=10usize {
        let c = prop_fact_coefficient(n).map_err(|e| e.to_string())?;
        let f = factorial(n as u64);
        ensure(c == f || c == -f.clone(), || format!("prop_fact_coefficient({n}) = {c}"))?;
    }
    Ok(())
}

fn euler_recursions() -> Outcome {
    let want: Vec<BigInt> = [2, 2, 0, -4, -10, -18, -28, -40].into_iter().map(BigInt::from).collect();
    let got = euler_sequence(2, 1, 8).map_err(|e| e.to_string())?;
    ensure(got == want, || format!("plane curves: {got:?}"))?;
    // the displayed rows: sum_{s<r} (-1)^(r-s-1) C(r,s) chi_s (- 2! at r = 2),
    // evaluated on the printed numbers
    let printed: [i64; 6] = [2, 2, 0, -4, -10, -18];
    for r in 2..=6usize {
        let mut lhs: i64 = if r == 2 { -2 } else { 0 };
        let mut c: i64 = 1;
        for s in 1..r {
            c = c * (r - s + 1) as i64 / s as i64;
            let sign = if (r - s - 1) % 2 == 0 { 1 } else { -1 };
            lhs += sign * c * printed[s - 1];
        }
        ensure(lhs == printed[r - 1], || format!("printed row r={r} does not balance: {lhs}"))?;
        let rep = chern_recursion_verify(2, 1, r).map_err(|e| e.to_string())?;
        let chi = rep.recursion.coeff_in_dim(0);
        ensure(rep.passed && chi == Rational::from_integer(BigInt::from(lhs)), || format!("row r={r}: {chi}"))?;
    }
    for n in 1..=4 {
        for d in 1..=3 {
            for r in n..=n + 4 {
                let rep = chern_recursion_verify(n, d, r).map_err(|e| e.to_string())?;
                ensure(rep.passed, || format!("n={n} d={d} r={r}: {} vs {}", rep.recursion, rep.direct))?;
            }
        }
    }
    Ok(())
}

fn segre_recursion() -> Outcome {
    let mut cases = vec![(5, SplitCenter::quadric_surface(5).unwrap(), 1)];
    for n in 2..=4 {
        for m in 0..n - 1 {
            for d in 1..=2 {
                cases.push((n, SplitCenter::linear(n, m).unwrap(), d));
            }
        }
    }
    for (n, y, d) in cases {
        let values = RepeatedComponent::new(n, Some(y), d)
            .and_then(|rep| rep.union_segre_values(n + 3, Exec::Parallel))
            .map_err(|e| e.to_string())?;
        // the recursion at r = n+1, n+2 predicts s(Y; X^(r+1)) from the first r values
        for r in [n + 1, n + 2] {
            let predicted = recursion_next(n, &values[..r]).map_err(|e| e.to_string())?;
            same(&format!("n={n} d={d} r={r}"), &predicted, &values[r])?;
        }
    }
    Ok(())
}

fn discrepancy_reporting() -> Outcome {
    let report = lines_report(3, YMode::Point).map_err(|e| e.to_string())?;
    let derived = p(3, &[(1, 3), (0, -8)]);
    same("tower", &report.tower, &derived)?;
    same("relSM path", report.from_csm.as_ref().ok_or("no relSM path")?, &derived)?;
    same("published", report.published.as_ref().ok_or("no published value")?, &p(3, &[(1, 3), (0, -12)]))?;
    let out = Command::new(env!("CARGO_BIN_EXE_segcalc"))
        .args(["lines", "--count", "3", "--y", "point"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status.code()))?;
    ensure(stdout.matches("= 3[P^1] - 8[P^0]").count() >= 2, || format!("missing derived values:\n{stdout}"))?;
    ensure(stdout.contains("[warn] published value: 3[P^1] - 8[P^0] | 3[P^1] - 12[P^0]"), || {
        format!("missing discrepancy flag:\n{stdout}")
    })?;
    ensure(stderr.contains("warning"), || "no warning on stderr".into())?;
    ensure(stdout.contains("out of scope") && stdout.contains("[X] - 10[P^0]") && stdout.contains("[X] - 12[P^0]"), || {
        "reduced-union values not reported as metadata".into()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 P^5 table reproduction", table_reproduction),
        ("2 defect instance -120[P^0]", defect_instance),
        ("3 line-configuration values", line_values),
        ("4 three-way agreement", three_way),
        ("5 transversal linear Y exactness", transversal_linear_exactness),
        ("6 formal identities", formal_identities),
        ("7 Euler/Chern recursions", euler_recursions),
        ("8 union Segre recursion", segre_recursion),
        ("9 discrepancy reporting", discrepancy_reporting),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed < BUDGET, || format!("took {:.2}s (budget {}s)", elapsed.as_secs_f64(), BUDGET.as_secs()))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name} ({:.2}s)", elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
