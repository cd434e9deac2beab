use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use squeeze_core::verify::{self, VerifyConfig};
use squeeze_core::{
    gaussian_state, Complex64, FockBasis, Grid, OperatorCoeffs, SqueezedDisplacedState,
    SymplecticProduct,
};

fn closed_form(c: &mut Criterion) {
    let s0 = Complex64::new(2.0, 0.3);
    c.bench_function("evolve_squeeze", |b| {
        b.iter(|| gaussian_state::evolve_squeeze(black_box(s0), black_box(1.3)))
    });
    let state = SqueezedDisplacedState::new(s0, Complex64::new(1.5, 0.0)).unwrap();
    let grid = Grid::default();
    c.bench_function("sample_4096", |b| {
        b.iter(|| state.sample(black_box(1.3), &grid))
    });
}

fn oracle(c: &mut Criterion) {
    let grid = Grid::default();
    c.bench_function("fock_basis_new_128", |b| {
        b.iter(|| FockBasis::new(grid, 128))
    });
    let basis = FockBasis::new(grid, 128);
    let state =
        SqueezedDisplacedState::new(Complex64::new(2.0, 0.3), Complex64::new(1.5, 0.0)).unwrap();
    let psi = state.sample(0.0, &grid);
    c.bench_function("fock_project", |b| {
        b.iter(|| basis.project(black_box(&psi)).unwrap())
    });
    c.bench_function("fock_propagate", |b| {
        b.iter(|| basis.propagate(black_box(&psi), black_box(1.3)).unwrap())
    });
    let op = OperatorCoeffs::from_params(state.s0(), state.d0());
    c.bench_function("eigen_residual", |b| {
        b.iter(|| op.eigen_residual(black_box(0.7), &grid).unwrap())
    });
}

fn symplectic(c: &mut Criterion) {
    let factors: Vec<_> = (0..20)
        .map(|k| squeeze_core::symplectic::generator_x(0.1 * k as f64 - 1.0))
        .collect();
    c.bench_function("product_20", |b| {
        b.iter(|| {
            let mut p = SymplecticProduct::identity();
            for m in &factors {
                p.then(m).unwrap();
            }
            p.det()
        })
    });
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("full", |b| b.iter(|| verify::run(&VerifyConfig::default())));
    group.finish();
}

criterion_group!(benches, closed_form, oracle, symplectic, suite);
criterion_main!(benches);
