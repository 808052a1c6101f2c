use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use segcalc_core::identities::{defect_series, DefectSeriesSpec};
use segcalc_core::segre::{incl_excl_rhs, RepeatedComponent, UnionSegreQuery};
use segcalc_core::{Exec, SplitCenter};

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn bench_defect_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("defect_series");
    group.sample_size(10);
    for (r, t) in [(5, 9), (6, 8)] {
        let spec = DefectSeriesSpec::new(r, t, true).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("r{r}_t{t}")), &spec, |b, spec| {
                b.iter(|| defect_series(spec, exec))
            });
        }
    }
    group.finish();
}

fn bench_incl_excl(c: &mut Criterion) {
    let mut group = c.benchmark_group("incl_excl_rhs");
    group.sample_size(10);
    let q = UnionSegreQuery::hypersurfaces(5, Some(SplitCenter::quadric_surface(5).unwrap()), vec![2; 8]).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "quadric_r8"), |b| b.iter(|| incl_excl_rhs(&q, exec).unwrap()));
    }
    group.finish();
}

fn bench_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("approximation_table");
    group.sample_size(10);
    let rep = RepeatedComponent::new(5, Some(SplitCenter::quadric_surface(5).unwrap()), 2).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "p5_rows_1_to_8"), |b| b.iter(|| rep.table(8, exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_defect_series, bench_incl_excl, bench_table);
criterion_main!(benches);
