//! Spectral propagation in the oscillator eigenbasis, used as an oracle.
//!
//! States are projected onto the orthonormal Hermite functions `ψ_n` by
//! trapezoidal quadrature, evolved with the phases `exp[-i(n + ½)t]` and
//! summed back onto the grid. The same module builds the Schrödinger state
//! from a backward-evolved Heisenberg eigenstate, fixing the free phase with
//! the ratio of vacuum overlaps `<0|Φ(0)> / <0|Φ(-t)>`.
//!
//! Summation order is fixed: projections sum grid points left to right,
//! reconstructions sum basis functions from `n = 0` upwards.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};
use crate::heisenberg::OperatorCoeffs;

/// Default truncation index.
pub const DEFAULT_N_MAX: usize = 128;
/// Number of top coefficients whose mass is checked after projection.
pub const TAIL_WINDOW: usize = 8;
/// Largest admissible mass in the top [`TAIL_WINDOW`] coefficients.
pub const TAIL_LIMIT: f64 = 1e-12;
/// Largest admissible normalized density at either grid end.
pub const BOUNDARY_LIMIT: f64 = 1e-14;

const I: Complex64 = Complex64::new(0.0, 1.0);
// 2^500 and its log, for rescaling the recursion.
const RESCALE: f64 = 3.273390607896142e150;
const LN_RESCALE: f64 = 500.0 * std::f64::consts::LN_2;

/// Orthonormal oscillator eigenfunction `ψ_n(x)`.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut out = vec![0.0; n + 1];
    hermite_functions_into(x, &mut out);
    out[n]
}

/// `ψ_0(x), …, ψ_{n_max}(x)`.
pub fn hermite_functions(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    hermite_functions_into(x, &mut out);
    out
}

/// Three-term recursion on the normalized functions,
/// `ψ_{n+1} = sqrt(2/(n+1)) x ψ_n - sqrt(n/(n+1)) ψ_{n-1}`,
/// run on a scaled pair with the Gaussian factor kept as a logarithm so that
/// neither underflow at large `|x|` nor growth at large `n` loses values.
fn hermite_functions_into(x: f64, out: &mut [f64]) {
    let mut ln_scale = -0.5 * x * x - 0.25 * PI.ln();
    let (mut prev, mut cur) = (0.0_f64, 1.0_f64);
    let emit = |v: f64, ln_scale: f64| {
        if v == 0.0 {
            0.0
        } else {
            v.signum() * (v.abs().ln() + ln_scale).exp()
        }
    };
    out[0] = emit(cur, ln_scale);
    for n in 0..out.len().saturating_sub(1) {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * cur - (nf / (nf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += LN_RESCALE;
        }
        out[n + 1] = emit(cur, ln_scale);
    }
}

/// Truncated expansion `Σ b_n |n>`, `n = 0..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockExpansion {
    coeffs: Vec<Complex64>,
}

impl FockExpansion {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "expansion needs at least b_0");
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|b| b.norm_sqr()).sum()
    }

    /// Occupation probabilities `|b_n|²`.
    pub fn populations(&self) -> Vec<f64> {
        self.coeffs.iter().map(|b| b.norm_sqr()).collect()
    }

    /// `Σ_{n >= from} |b_n|²`.
    pub fn tail_mass(&self, from: usize) -> f64 {
        self.coeffs.iter().skip(from).map(|b| b.norm_sqr()).sum()
    }

    /// Multiply `b_n` by `exp[-i(n + ½)t]`.
    pub fn evolve(&self, t: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, b)| b * Complex64::from_polar(1.0, -(n as f64 + 0.5) * t))
            .collect();
        Self { coeffs }
    }
}

pub fn evolve_fock(e: &FockExpansion, t: f64) -> FockExpansion {
    e.evolve(t)
}

/// Hermite functions tabulated on a grid, reused across projections.
#[derive(Debug, Clone)]
pub struct FockBasis {
    grid: Grid,
    n_max: usize,
    // table[n * points + i] = ψ_n(x_i)
    table: Vec<f64>,
}

impl FockBasis {
    pub fn new(grid: Grid, n_max: usize) -> Self {
        let points = grid.len();
        let mut table = vec![0.0; (n_max + 1) * points];
        let mut column = vec![0.0; n_max + 1];
        for (i, x) in grid.xs().enumerate() {
            hermite_functions_into(x, &mut column);
            for (n, v) in column.iter().enumerate() {
                table[n * points + i] = *v;
            }
        }
        Self { grid, n_max, table }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `ψ_n` sampled on the grid.
    pub fn row(&self, n: usize) -> &[f64] {
        let points = self.grid.len();
        &self.table[n * points..(n + 1) * points]
    }

    /// Expansion of the normalized `psi`, checked for boundary decay and
    /// truncation adequacy, then rescaled to unit norm.
    pub fn project(&self, psi: &GridFunction) -> Result<FockExpansion> {
        if *psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let norm_sqr = psi.norm_sqr();
        let values = psi.values();
        let edge = values[0]
            .norm_sqr()
            .max(values[values.len() - 1].norm_sqr())
            / norm_sqr;
        if edge.is_nan() || edge > BOUNDARY_LIMIT {
            return Err(Error::BoundaryDecay {
                density: edge,
                limit: BOUNDARY_LIMIT,
            });
        }
        let scale = 1.0 / norm_sqr.sqrt();
        let coeffs: Vec<Complex64> = (0..=self.n_max)
            .map(|n| {
                self.row(n)
                    .iter()
                    .zip(values)
                    .enumerate()
                    .fold(Complex64::new(0.0, 0.0), |acc, (i, (basis, v))| {
                        acc + v * (basis * self.grid.weight(i))
                    })
                    * scale
            })
            .collect();
        let expansion = FockExpansion { coeffs };
        let from = (self.n_max + 1).saturating_sub(TAIL_WINDOW);
        let tail_mass = expansion.tail_mass(from);
        if tail_mass.is_nan() || tail_mass >= TAIL_LIMIT {
            return Err(Error::TruncationInadequate {
                tail_mass,
                from,
                limit: TAIL_LIMIT,
                n_max: self.n_max,
            });
        }
        let renorm = 1.0 / expansion.norm_sqr().sqrt();
        Ok(FockExpansion {
            coeffs: expansion.coeffs.iter().map(|b| b * renorm).collect(),
        })
    }

    /// `Σ b_n ψ_n(x)` on the grid. Coefficients above the basis size are ignored.
    pub fn reconstruct(&self, e: &FockExpansion) -> GridFunction {
        let points = self.grid.len();
        let mut values = vec![Complex64::new(0.0, 0.0); points];
        for (n, b) in e.coeffs.iter().enumerate().take(self.n_max + 1) {
            for (v, basis) in values.iter_mut().zip(self.row(n)) {
                *v += b * basis;
            }
        }
        GridFunction::new(self.grid, values).expect("basis rows match the grid")
    }

    /// Spectral propagation `reconstruct(evolve(project(psi), t))`.
    pub fn propagate(&self, psi: &GridFunction, t: f64) -> Result<GridFunction> {
        Ok(self.reconstruct(&self.project(psi)?.evolve(t)))
    }
}

pub fn project(psi: &GridFunction, n_max: usize) -> Result<FockExpansion> {
    FockBasis::new(*psi.grid(), n_max).project(psi)
}

pub fn reconstruct(e: &FockExpansion, grid: &Grid) -> GridFunction {
    FockBasis::new(*grid, e.n_max()).reconstruct(e)
}

/// `ln ∫ exp(-a x² + b x + c) dx` for `Re(a) > 0`, continuous in the arguments.
fn ln_gaussian_integral(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    0.5 * PI.ln() - 0.5 * a.ln() + b * b / (4.0 * a) + c
}

fn check_normalizable(s: Complex64) -> Result<()> {
    if s.re > 0.0 {
        Ok(())
    } else {
        Err(Error::NonNormalizable { re_s: s.re })
    }
}

/// `<0|Φ>` for the unnormalized `Φ = exp[-S (x - D)²/2]`.
pub fn vacuum_overlap(s: Complex64, d: Complex64) -> Result<Complex64> {
    Ok(ln_vacuum_overlap(s, d)?.exp())
}

/// Logarithm of [`vacuum_overlap`], analytic in `(S, D)` on `Re(S) > 0`.
pub fn ln_vacuum_overlap(s: Complex64, d: Complex64) -> Result<Complex64> {
    check_normalizable(s)?;
    // π^{-1/4} e^{-x²/2} · e^{-S(x-D)²/2}
    Ok(-0.25 * PI.ln() + ln_gaussian_integral(0.5 * (1.0 + s), s * d, -0.5 * s * d * d))
}

/// `ln ∫ |exp[-S (x - D)²/2]|² dx`.
fn ln_gaussian_norm_sqr(s: Complex64, d: Complex64) -> f64 {
    let quad = -0.5 * s;
    let lin = s * d;
    let cst = -0.5 * s * d * d;
    // |e^{q x² + l x + c}|² = e^{2Re(q) x² + 2Re(l) x + 2Re(c)}
    ln_gaussian_integral(
        Complex64::new(-2.0 * quad.re, 0.0),
        Complex64::new(2.0 * lin.re, 0.0),
        Complex64::new(2.0 * cst.re, 0.0),
    )
    .re
}

/// Phase `δ(t)` with `e^{iδ} ∝ e^{-it/2} <0|Φ(0)> / <0|Φ(-t)>`.
///
/// Continuous in `t` with `δ(0) = 0`. Only the argument of the ratio is
/// returned; its modulus rescales the unnormalized `Φ(-t)`.
pub fn phase_delta(c: &OperatorCoeffs, t: f64) -> Result<f64> {
    let (s0, d0) = c.params()?;
    let (s, d) = c.evolved_params(t)?;
    Ok(-0.5 * t + (ln_vacuum_overlap(s0, d0)? - ln_vacuum_overlap(s, d)?).im)
}

/// Log of the Schrödinger state built from `Φ(-t)`, continuous in `t`.
///
/// `Ψ(t) = e^{-it/2} (<0|Φ(0)> / <0|Φ(-t)>) Φ(-t)`, with `Φ(0)` scaled to
/// unit norm by a positive real constant.
pub fn ln_schrodinger_from_heisenberg(c: &OperatorCoeffs, t: f64, x: f64) -> Result<Complex64> {
    let (s, d) = c.evolved_params(t)?;
    Ok(ln_heisenberg_prefactor(c, t)? - 0.5 * s * (x - d) * (x - d))
}

fn ln_heisenberg_prefactor(c: &OperatorCoeffs, t: f64) -> Result<Complex64> {
    let (s0, d0) = c.params()?;
    let (s, d) = c.evolved_params(t)?;
    check_normalizable(s0)?;
    check_normalizable(s)?;
    Ok(
        -0.5 * ln_gaussian_norm_sqr(s0, d0) - I * 0.5 * t + ln_vacuum_overlap(s0, d0)?
            - ln_vacuum_overlap(s, d)?,
    )
}

/// Normalized Schrödinger state at `t` from the backward-evolved eigenstate `Φ(-t)`.
pub fn schrodinger_from_heisenberg(
    c: &OperatorCoeffs,
    t: f64,
    grid: &Grid,
) -> Result<GridFunction> {
    let prefactor = ln_heisenberg_prefactor(c, t)?.exp();
    Ok(c.eigenstate(-t, grid)?.scaled(prefactor))
}

/// Unwrap a sampled phase so that consecutive samples never differ by more than π.
pub fn unwrap_phases(wrapped: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(wrapped.len());
    let mut offset = 0.0;
    for (i, &p) in wrapped.iter().enumerate() {
        if i > 0 {
            let jump = p - wrapped[i - 1];
            offset -= std::f64::consts::TAU * (jump / std::f64::consts::TAU).round();
        }
        out.push(p + offset);
    }
    out
}
