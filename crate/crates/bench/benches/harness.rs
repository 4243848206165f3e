use criterion::{criterion_group, criterion_main, Criterion};
use occ_core::harness::{run_trial, ExperimentConfig, RateMode};
use occ_core::{PolicyKind, PopularityDistribution, SystemParams};

fn config(rate_mode: RateMode, horizon: u64) -> ExperimentConfig {
    let params = SystemParams::new(20, 10, 2.0, 500).unwrap();
    let p = PopularityDistribution::zipf(20, 1.0).unwrap();
    let mut c = ExperimentConfig::new(
        params,
        p,
        vec![PolicyKind::Tracking, PolicyKind::UniformCoded, PolicyKind::Lfu],
    );
    c.rate_mode = rate_mode;
    c.horizon = horizon;
    c
}

fn trials(c: &mut Criterion) {
    let analytic = config(RateMode::Analytic, 2_000);
    c.bench_function("trial/analytic/2000_slots", |b| b.iter(|| run_trial(&analytic, 0).unwrap()));
    let bit = config(RateMode::BitLevel, 50);
    c.bench_function("trial/bit_level/50_slots", |b| b.iter(|| run_trial(&bit, 0).unwrap()));
}

criterion_group!(benches, trials);
criterion_main!(benches);
