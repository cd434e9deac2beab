//! Oracle-equivalence and invariant checks.
//!
//! Each criterion collects a list of [`Check`]s; a criterion passes when all
//! of its checks do, and a report passes when every criterion does. Random
//! instances come from a seeded ChaCha stream, so a given [`VerifyConfig`]
//! always produces the same report.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::fock::{self, FockBasis};
use crate::gaussian_state::{self, SqueezedDisplacedState};
use crate::grid::Grid;
use crate::heisenberg::OperatorCoeffs;
use crate::symplectic::{self, SymplecticMatrix, SymplecticProduct};

pub const DEFAULT_SEED: u64 = 0x005e_ed0f_5ade;

/// Pass thresholds, one per measured quantity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub oracle_l2: f64,
    pub center: f64,
    pub width: f64,
    pub norm: f64,
    pub residual: f64,
    pub periodicity: f64,
    pub revival_l2: f64,
    pub determinant: f64,
    pub mobius: f64,
    pub phase: f64,
    pub poisson: f64,
    pub parity: f64,
    pub orthonormality: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            oracle_l2: 1e-8,
            center: 1e-8,
            width: 1e-10,
            norm: 1e-8,
            residual: 1e-6,
            periodicity: 1e-12,
            revival_l2: 1e-10,
            determinant: 1e-12,
            mobius: 1e-12,
            phase: 1e-8,
            poisson: 1e-8,
            parity: 1e-12,
            orthonormality: 1e-10,
        }
    }
}

impl Thresholds {
    /// Replace every threshold whose default is `1e-8` with `tol`.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.oracle_l2 = tol;
        self.center = tol;
        self.norm = tol;
        self.phase = tol;
        self.poisson = tol;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub grid: Grid,
    pub n_max: usize,
    pub thresholds: Thresholds,
    pub seed: u64,
    /// Extra state run through the oracle comparison alongside the random ones.
    pub state: Option<SqueezedDisplacedState>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid: Grid::default(),
            n_max: fock::DEFAULT_N_MAX,
            thresholds: Thresholds::default(),
            seed: DEFAULT_SEED,
            state: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Worst value observed; `None` when the check could not be evaluated.
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    fn measured(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            measured: Some(measured),
            tolerance,
            passed: measured <= tolerance,
            error: None,
        }
    }

    fn failed(name: impl Into<String>, tolerance: f64, error: impl ToString) -> Self {
        Self {
            name: name.into(),
            measured: None,
            tolerance,
            passed: false,
            error: Some(error.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    fn new(id: u8, name: &'static str, checks: Vec<Check>) -> Self {
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
        Self {
            id,
            name,
            passed,
            checks,
        }
    }

    /// Largest measured value among checks whose name starts with `prefix`.
    pub fn worst(&self, prefix: &str) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with(prefix))
            .filter_map(|c| c.measured)
            .reduce(f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub max_l2_error: Option<f64>,
    pub max_phase_error: Option<f64>,
    pub criteria: Vec<CriterionReport>,
}

/// Run criteria 1 through 8.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let basis = FockBasis::new(config.grid, config.n_max);
    let criteria = vec![
        oracle_equivalence(config, &basis),
        density_identities(config),
        norm_conservation(config),
        eigen_residuals(config),
        periodicity(config, &basis),
        symplectic_suite(config),
        phase_branch(config),
        fock_diagnostics(config, &basis),
    ];
    let max_l2_error = criteria[0].worst("");
    let max_phase_error = criteria[6].worst("phase");
    VerifyReport {
        passed: criteria.iter().all(|c| c.passed),
        max_l2_error,
        max_phase_error,
        criteria,
    }
}

/// Random state with `Re S0 ∈ [0.2, 5]`, `Im S0 ∈ [-1, 1]` and real `D0 ∈ [-3, 3]`.
pub fn random_state<R: Rng>(rng: &mut R) -> SqueezedDisplacedState {
    let s0 = Complex64::new(rng.gen_range(0.2..=5.0), rng.gen_range(-1.0..=1.0));
    let d0 = Complex64::new(rng.gen_range(-3.0..=3.0), 0.0);
    SqueezedDisplacedState::new(s0, d0).expect("Re S0 >= 0.2")
}

/// Random state with real `S0 ∈ [0.2, 5]` and real `D0 ∈ [-3, 3]`.
pub fn random_real_state<R: Rng>(rng: &mut R) -> SqueezedDisplacedState {
    let s0 = Complex64::new(rng.gen_range(0.2..=5.0), 0.0);
    let d0 = Complex64::new(rng.gen_range(-3.0..=3.0), 0.0);
    SqueezedDisplacedState::new(s0, d0).expect("S0 >= 0.2")
}

/// `count` evenly spaced times covering `[0, end]` including both ends.
pub fn uniform_times(end: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| end * k as f64 / (count - 1) as f64)
        .collect()
}

fn rng_for(config: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(stream);
    rng
}

fn state_label(s: &SqueezedDisplacedState) -> String {
    format!(
        "S0={:.4}{:+.4}i D0={:.4}{:+.4}i",
        s.s0().re,
        s.s0().im,
        s.d0().re,
        s.d0().im
    )
}

/// Criterion 1: closed form and Heisenberg construction against spectral propagation.
pub fn oracle_equivalence(config: &VerifyConfig, basis: &FockBasis) -> CriterionReport {
    let tol = config.thresholds.oracle_l2;
    let mut rng = rng_for(config, 1);
    let mut states: Vec<_> = config.state.into_iter().collect();
    states.extend((0..25).map(|_| random_state(&mut rng)));
    let times = uniform_times(TAU, 8);
    let grid = config.grid;

    let mut checks = Vec::new();
    for state in &states {
        let label = state_label(state);
        let expansion = match basis.project(&state.sample(0.0, &grid)) {
            Ok(e) => e,
            Err(e) => {
                checks.push(Check::failed(format!("closed form {label}"), tol, e));
                continue;
            }
        };
        let worst = times
            .iter()
            .map(|&t| {
                let spectral = basis.reconstruct(&expansion.evolve(t));
                state
                    .sample(t, &grid)
                    .l2_distance(&spectral)
                    .expect("same grid")
            })
            .fold(0.0, f64::max);
        checks.push(Check::measured(format!("closed form {label}"), worst, tol));

        let op = OperatorCoeffs::from_params(state.s0(), state.d0());
        let heisenberg = fock::schrodinger_from_heisenberg(&op, 0.0, &grid)
            .and_then(|initial| basis.project(&initial))
            .and_then(|e| {
                times.iter().try_fold(0.0_f64, |acc, &t| {
                    let spectral = basis.reconstruct(&e.evolve(t));
                    let direct = fock::schrodinger_from_heisenberg(&op, t, &grid)?;
                    Ok(acc.max(direct.l2_distance(&spectral)?))
                })
            });
        checks.push(match heisenberg {
            Ok(worst) => Check::measured(format!("heisenberg route {label}"), worst, tol),
            Err(e) => Check::failed(format!("heisenberg route {label}"), tol, e),
        });
    }
    CriterionReport::new(1, "oracle equivalence", checks)
}

/// Criterion 2: centre, width and turning points of the density for real parameters.
pub fn density_identities(config: &VerifyConfig) -> CriterionReport {
    let th = config.thresholds;
    let mut rng = rng_for(config, 2);
    let grid = config.grid;
    let times = uniform_times(TAU, 16);
    let (mut center_err, mut width_err, mut fit_err, mut turning_err) =
        (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..10 {
        let state = random_real_state(&mut rng);
        let (s0, d0) = (state.s0().re, state.d0().re);
        for &t in &times {
            let (mean, var) = state.sample(t, &grid).position_moments();
            let gamma = gaussian_state::gamma(s0, t);
            center_err = center_err.max((mean - gaussian_state::center(d0, t)).abs());
            width_err =
                width_err.max((gamma - gaussian_state::evolve_squeeze(state.s0(), t).re).abs());
            // density ∝ exp(-γ (x - c)²) has variance 1/(2γ)
            fit_err = fit_err.max((1.0 / (2.0 * var) - gamma).abs());
        }
        for (t, expected) in [(0.0, d0), (PI, -d0)] {
            let (mean, _) = state.sample(t, &grid).position_moments();
            turning_err = turning_err.max((mean - expected).abs());
        }
    }
    CriterionReport::new(
        2,
        "density identities",
        vec![
            Check::measured("center vs D0 cos t", center_err, th.center),
            Check::measured("gamma vs Re S(t)", width_err, th.width),
            Check::measured("gamma vs fitted width", fit_err, th.width),
            Check::measured("turning points +-D0", turning_err, th.center),
        ],
    )
}

/// Criterion 3: unit norm along the trajectory.
pub fn norm_conservation(config: &VerifyConfig) -> CriterionReport {
    let mut rng = rng_for(config, 3);
    let times = uniform_times(TAU, 32);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let state = random_state(&mut rng);
        for &t in &times {
            worst = worst.max((state.sample(t, &config.grid).norm_sqr() - 1.0).abs());
        }
    }
    CriterionReport::new(
        3,
        "norm conservation",
        vec![Check::measured("|norm - 1|", worst, config.thresholds.norm)],
    )
}

/// Random operator coefficients with a normalizable eigenstate.
pub fn random_coeffs<R: Rng>(rng: &mut R) -> OperatorCoeffs {
    let state = random_state(rng);
    let alpha = Complex64::from_polar(rng.gen_range(0.5..=2.0), rng.gen_range(0.0..TAU));
    let beta = state.s0() * alpha;
    OperatorCoeffs::new(alpha, beta, beta * state.d0())
}

/// Criterion 4: finite-difference eigenvalue residual of `A(t)`.
pub fn eigen_residuals(config: &VerifyConfig) -> CriterionReport {
    let tol = config.thresholds.residual;
    let mut rng = rng_for(config, 4);
    let mut worst: crate::Result<f64> = Ok(0.0);
    for _ in 0..20 {
        let op = random_coeffs(&mut rng);
        let t = rng.gen_range(0.0..TAU);
        worst = worst.and_then(|w| op.eigen_residual(t, &config.grid).map(|r| w.max(r)));
    }
    let check = match worst {
        Ok(w) => Check::measured("relative residual", w, tol),
        Err(e) => Check::failed("relative residual", tol, e),
    };
    CriterionReport::new(4, "eigenvalue residual", vec![check])
}

/// Criterion 5: periodicity of `S`, `D` and the full-state revival at `2π`.
pub fn periodicity(config: &VerifyConfig, basis: &FockBasis) -> CriterionReport {
    let th = config.thresholds;
    let mut rng = rng_for(config, 5);
    let (mut s_err, mut d_half, mut d_full) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..100 {
        let state = random_state(&mut rng);
        let d0 = Complex64::new(rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
        let t = rng.gen_range(0.0..TAU);
        let s = |t| gaussian_state::evolve_squeeze(state.s0(), t);
        let d = |t| gaussian_state::evolve_displacement(state.s0(), d0, t);
        s_err = s_err.max((s(t + PI) - s(t)).norm());
        d_half = d_half.max((d(t + PI) + d(t)).norm());
        d_full = d_full.max((d(t + TAU) - d(t)).norm());
    }
    let mut checks = vec![
        Check::measured("S(t+pi) - S(t)", s_err, th.periodicity),
        Check::measured("D(t+pi) + D(t)", d_half, th.periodicity),
        Check::measured("D(t+2pi) - D(t)", d_full, th.periodicity),
    ];

    let grid = config.grid;
    let mut closed = 0.0_f64;
    let mut spectral: crate::Result<f64> = Ok(0.0);
    for _ in 0..5 {
        let state = random_state(&mut rng);
        let initial = state.sample(0.0, &grid);
        let minus = initial.scaled(Complex64::new(-1.0, 0.0));
        closed = closed.max(
            state
                .sample(TAU, &grid)
                .l2_distance(&minus)
                .expect("same grid"),
        );
        spectral = spectral.and_then(|w| {
            let e = basis.project(&initial)?;
            let start = basis.reconstruct(&e);
            let revived = basis.reconstruct(&e.evolve(TAU));
            let minus = start.scaled(Complex64::new(-1.0, 0.0));
            Ok(w.max(revived.l2_distance(&minus)?))
        });
    }
    checks.push(Check::measured(
        "closed-form revival",
        closed,
        th.revival_l2,
    ));
    checks.push(match spectral {
        Ok(w) => Check::measured("spectral revival", w, th.revival_l2),
        Err(e) => Check::failed("spectral revival", th.revival_l2, e),
    });
    CriterionReport::new(5, "periodicity and revival", checks)
}

/// One of the three generator families with a parameter in `[-2, 2]`.
pub fn random_generator<R: Rng>(rng: &mut R) -> SymplecticMatrix {
    let p = rng.gen_range(-2.0..=2.0);
    match rng.gen_range(0..3) {
        0 => symplectic::generator_x(p),
        1 => symplectic::generator_y(p),
        _ => symplectic::generator_z(p),
    }
}

/// Criterion 6: determinant, Möbius homomorphism, time evolution as a `σy` rotation.
pub fn symplectic_suite(config: &VerifyConfig) -> CriterionReport {
    let th = config.thresholds;
    let mut rng = rng_for(config, 6);

    let mut det_err = 0.0_f64;
    for _ in 0..100 {
        let mut product = SymplecticProduct::identity();
        for _ in 0..20 {
            product
                .then(&random_generator(&mut rng))
                .expect("generators are symplectic");
        }
        det_err = det_err.max((product.det() - 1.0).abs());
    }

    let mut hom_err: crate::Result<f64> = Ok(0.0);
    for _ in 0..200 {
        let m1 = random_generator(&mut rng);
        let m2 = random_generator(&mut rng);
        let s = random_state(&mut rng).s0();
        hom_err = hom_err.and_then(|w| {
            let direct = symplectic::mobius_squeeze(&symplectic::compose(&m2, &m1)?, s)?;
            let chained = symplectic::mobius_squeeze(&m2, symplectic::mobius_squeeze(&m1, s)?)?;
            Ok(w.max((direct - chained).norm()))
        });
    }

    let mut time_err: crate::Result<f64> = Ok(0.0);
    for _ in 0..20 {
        let s0 = random_state(&mut rng).s0();
        for t in uniform_times(TAU, 64) {
            time_err = time_err.and_then(|w| {
                let via_matrix =
                    symplectic::mobius_squeeze(&symplectic::time_evolution_matrix(t), s0)?;
                Ok(w.max((via_matrix - gaussian_state::evolve_squeeze(s0, t)).norm()))
            });
        }
    }

    let result_check = |name: &str, r: crate::Result<f64>, tol: f64| match r {
        Ok(v) => Check::measured(name, v, tol),
        Err(e) => Check::failed(name, tol, e),
    };
    CriterionReport::new(
        6,
        "symplectic suite",
        vec![
            Check::measured("|det - 1| after 20 factors", det_err, th.determinant),
            result_check("mobius homomorphism", hom_err, th.mobius),
            result_check("time evolution vs mobius", time_err, th.mobius),
        ],
    )
}

/// Criterion 7: continuity branch of `N(t)` against the overlap-ratio phase.
///
/// Both routes produce a logarithm of `Ψ(x, t)` that is continuous in `t`;
/// their phase increments from `t = 0` must agree without reduction mod 2π,
/// so a branch flip of the square root shows up as an error of `π`.
pub fn phase_branch(config: &VerifyConfig) -> CriterionReport {
    let tol = config.thresholds.phase;
    let mut rng = rng_for(config, 7);
    let times = uniform_times(2.0 * TAU, 257);
    let mut worst: crate::Result<f64> = Ok(0.0);
    for _ in 0..10 {
        let state = random_state(&mut rng);
        let op = OperatorCoeffs::from_params(state.s0(), state.d0());
        for x in [-2.0, -0.5, 0.0, 0.7, state.d0().re] {
            let closed0 = state.ln_wavefunction(0.0, x);
            worst = worst.and_then(|w| {
                let heis0 = fock::ln_schrodinger_from_heisenberg(&op, 0.0, x)?;
                let mut w = w;
                for &t in &times {
                    let closed = (state.ln_wavefunction(t, x) - closed0).im;
                    let heis = (fock::ln_schrodinger_from_heisenberg(&op, t, x)? - heis0).im;
                    w = w.max((closed - heis).abs());
                }
                Ok(w)
            });
        }
    }
    let check = match worst {
        Ok(w) => Check::measured("phase vs overlap ratio", w, tol),
        Err(e) => Check::failed("phase vs overlap ratio", tol, e),
    };
    CriterionReport::new(7, "phase branch", vec![check])
}

/// `e^{-μ} μ^n / n!`.
pub fn poisson_pmf(mean: f64, n: usize) -> f64 {
    if mean == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ln_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    (n as f64 * mean.ln() - mean - ln_fact).exp()
}

/// Criterion 8: coherent-state statistics, parity selection, basis orthonormality.
pub fn fock_diagnostics(config: &VerifyConfig, basis: &FockBasis) -> CriterionReport {
    let th = config.thresholds;
    let grid = config.grid;
    let mut checks = Vec::new();

    let mut poisson: crate::Result<f64> = Ok(0.0);
    for d0 in [0.5, 1.5, -2.0, 3.0] {
        let state = SqueezedDisplacedState::new(Complex64::new(1.0, 0.0), Complex64::new(d0, 0.0))
            .expect("S0 = 1");
        poisson = poisson.and_then(|w| {
            let e = basis.project(&state.sample(0.0, &grid))?;
            let mean = 0.5 * d0 * d0;
            Ok(e.populations()
                .iter()
                .enumerate()
                .fold(w, |w, (n, p)| w.max((p - poisson_pmf(mean, n)).abs())))
        });
    }
    checks.push(match poisson {
        Ok(w) => Check::measured("coherent |b_n|^2 vs Poisson", w, th.poisson),
        Err(e) => Check::failed("coherent |b_n|^2 vs Poisson", th.poisson, e),
    });

    let mut parity: crate::Result<f64> = Ok(0.0);
    for s0 in [0.3, 0.6, 2.0, 4.5] {
        let state = SqueezedDisplacedState::new(Complex64::new(s0, 0.0), Complex64::new(0.0, 0.0))
            .expect("S0 > 0");
        parity = parity.and_then(|w| {
            let e = basis.project(&state.sample(0.0, &grid))?;
            Ok(e.coeffs()
                .iter()
                .skip(1)
                .step_by(2)
                .fold(w, |w, b| w.max(b.norm())))
        });
    }
    checks.push(match parity {
        Ok(w) => Check::measured("squeezed vacuum odd |b_n|", w, th.parity),
        Err(e) => Check::failed("squeezed vacuum odd |b_n|", th.parity, e),
    });

    let top = basis.n_max().min(64);
    let mut ortho = 0.0_f64;
    for m in 0..=top {
        for n in m..=top {
            let prod: Vec<f64> = basis
                .row(m)
                .iter()
                .zip(basis.row(n))
                .map(|(a, b)| a * b)
                .collect();
            let expected = if m == n { 1.0 } else { 0.0 };
            ortho = ortho.max((grid.integrate(&prod) - expected).abs());
        }
    }
    checks.push(Check::measured(
        format!("orthonormality m,n <= {top}"),
        ortho,
        th.orthonormality,
    ));
    CriterionReport::new(8, "Fock diagnostics", checks)
}
