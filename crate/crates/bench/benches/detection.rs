use criterion::{criterion_group, criterion_main, Criterion};
use gurmix_core::uncertainty::SettingTemplate;
use gurmix_core::{
    classify_two_qutrit, isotropic, q_max_over_settings, qutrit_density, run_qutrit_scheme,
    MaximizerConfig, SchemeConfig,
};
use std::hint::black_box;

fn scheme(c: &mut Criterion) {
    let mixed = qutrit_density(&[0.0; 8]).unwrap();
    let config = SchemeConfig::default();
    c.bench_function("scheme_full_traversal", |b| {
        b.iter(|| run_qutrit_scheme(black_box(&mixed), &config).unwrap())
    });
}

fn maximizer(c: &mut Criterion) {
    let rho = isotropic(0.5).unwrap();
    let m = MaximizerConfig {
        grid: 16,
        refine_rounds: 2,
    };
    c.bench_function("q_max_isotropic_grid16", |b| {
        b.iter(|| {
            q_max_over_settings(black_box(&rho), &SettingTemplate::two_qutrit_default(), &m)
                .unwrap()
        })
    });
    c.bench_function("classify_two_qutrit_grid16", |b| {
        b.iter(|| classify_two_qutrit(black_box(&rho), 1e-4, &m).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = scheme, maximizer
}
criterion_main!(benches);
