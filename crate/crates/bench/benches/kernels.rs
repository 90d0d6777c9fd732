use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use fracwave_core::diffusion::{
    ctrw_simulate, solve_classical, solve_space_fractional, Coupling, InitialData, JumpLaw, WaitLaw,
};
use fracwave_core::paraxial::{beam_value, BeamSpec, BeamVariant};
use fracwave_core::specfun::fresnel_comp;
use fracwave_core::stable::{stable_density, stable_sample};
use fracwave_core::{AsymmetryWeights, CtrwModel, FractionalOrder, Grid1D, StableParams};

fn special_functions(c: &mut Criterion) {
    let us: Vec<f64> = (0..256).map(|j| -8.0 + j as f64 / 16.0).collect();
    c.bench_function("fresnel_comp/256", |b| {
        b.iter(|| {
            us.iter()
                .map(|&u| fresnel_comp(black_box(u)).unwrap().re)
                .sum::<f64>()
        })
    });
    let spec = BeamSpec::new(2.0, BeamVariant::Product2d, 3, 2).unwrap();
    c.bench_function("hermite_beam/point", |b| {
        b.iter(|| beam_value(&spec, black_box(0.3), black_box(-0.2), 1.0).unwrap())
    });
}

fn stable_laws(c: &mut Criterion) {
    let xs: Vec<f64> = (0..401).map(|j| -10.0 + j as f64 * 0.05).collect();
    let params = StableParams::new(1.5, 1.0).unwrap();
    c.bench_function("stable_density/401", |b| {
        b.iter(|| stable_density(black_box(&xs), params).unwrap())
    });
    c.bench_function("stable_sample/100k", |b| {
        b.iter(|| stable_sample(100_000, params, 7).unwrap())
    });
}

fn diffusion(c: &mut Criterion) {
    let grid = Grid1D::new(-20.0, 20.0, 4096).unwrap();
    c.bench_function("solve_classical/4096", |b| {
        b.iter(|| solve_classical(&grid, black_box(1.0), &InitialData::Delta).unwrap())
    });
    let order = FractionalOrder::new(1.5).unwrap();
    let w = AsymmetryWeights::new(0.5, 0.5).unwrap();
    c.bench_function("solve_space_fractional/4096", |b| {
        b.iter(|| {
            solve_space_fractional(&grid, black_box(1.0), order, w, &InitialData::Delta).unwrap()
        })
    });
    let model = CtrwModel::new(
        JumpLaw::Stable(StableParams::new(1.5, 1.0).unwrap()),
        WaitLaw::Exponential { rate: 1.0 },
        Coupling::Independent,
        50.0,
    )
    .unwrap();
    c.bench_function("ctrw/10k_walkers", |b| {
        b.iter_batched(
            || 7u64,
            |seed| ctrw_simulate(&model, 10_000, seed).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, special_functions, stable_laws, diffusion);
criterion_main!(benches);
