use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use groverts::oracle::{
    kolmogorov_speed, simulate_grover_statevector, ts_direct, ts_optimized_numeric,
    MeasurementBasis, OptimizerSettings, SpinDirection,
};
use groverts::{speed_curve, speedup_report, GroverParams, PolarizationSchedule};

fn closed_forms(c: &mut Criterion) {
    let pure = PolarizationSchedule::constant(1.0).unwrap();
    let linear = PolarizationSchedule::linear(1.0, 0.3, None).unwrap();
    for n in [20u32, 30] {
        let p = GroverParams::new(n).unwrap();
        c.bench_with_input(BenchmarkId::new("speed_curve", n), &p, |b, p| {
            b.iter(|| speed_curve(p, &linear, p.k_grover()).unwrap())
        });
    }
    for n in [16u32, 24] {
        let p = GroverParams::new(n).unwrap();
        c.bench_with_input(BenchmarkId::new("speedup_report", n), &p, |b, p| {
            b.iter(|| speedup_report(p, &pure).unwrap())
        });
    }
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    for n in [4u32, 6, 8] {
        let state = simulate_grover_statevector(n, 2, 0).unwrap();
        let mixed = state.pseudo_pure(0.5).unwrap();
        let dir = SpinDirection::new(0.3, 0.4, 0.5).unwrap();
        g.bench_with_input(BenchmarkId::new("ts_direct_mixed", n), &mixed, |b, s| {
            b.iter(|| ts_direct(s, black_box(&dir)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("ts_optimized_pure", n), &state, |b, s| {
            b.iter(|| ts_optimized_numeric(s, &OptimizerSettings::with_grid(200)).unwrap())
        });
        let basis = MeasurementBasis::Rotated {
            alpha: 0.4,
            beta: 1.1,
        };
        g.bench_with_input(BenchmarkId::new("kolmogorov_speed", n), &mixed, |b, s| {
            b.iter(|| kolmogorov_speed(s, &dir, &basis, 1e-4).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, closed_forms, oracle);
criterion_main!(benches);
