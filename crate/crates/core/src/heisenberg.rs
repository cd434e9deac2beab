//! Heisenberg-picture operator `A(t) = iα(t)P + β(t)X` and its Gaussian eigenstates.
//!
//! With `X(t) = X cos t + P sin t` and `P(t) = P cos t - X sin t`, the
//! operator `iαP(t) + βX(t)` keeps its form with
//! `α(t) = α cos t - iβ sin t` and `β(t) = β cos t - iα sin t`.
//! Its eigenvalue `λ` does not depend on `t`.
//!
//! Momentum acts as `P = -i d/dx` so that `[X, P] = i`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coefficients of `iαP + βX` together with its eigenvalue `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorCoeffs {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub lambda: Complex64,
}

/// Coefficients of `X(t) = cos·X + sin·P`, `P(t) = cos·P - sin·X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergRotation {
    pub t: f64,
    pub cos_t: f64,
    pub sin_t: f64,
}

impl HeisenbergRotation {
    /// `(X(t), P(t))` for c-number initial values `(x, p)`.
    pub fn apply(&self, x: f64, p: f64) -> (f64, f64) {
        (
            self.cos_t * x + self.sin_t * p,
            self.cos_t * p - self.sin_t * x,
        )
    }
}

pub fn heisenberg_xp(t: f64) -> HeisenbergRotation {
    let (sin_t, cos_t) = t.sin_cos();
    HeisenbergRotation { t, cos_t, sin_t }
}

impl OperatorCoeffs {
    pub fn new(alpha: Complex64, beta: Complex64, lambda: Complex64) -> Self {
        Self {
            alpha,
            beta,
            lambda,
        }
    }

    /// Coefficients whose eigenstate is `exp[-S0 (x - D0)²/2]`: `α = 1`, `β = S0`, `λ = S0 D0`.
    pub fn from_params(s0: Complex64, d0: Complex64) -> Self {
        Self {
            alpha: Complex64::new(1.0, 0.0),
            beta: s0,
            lambda: s0 * d0,
        }
    }

    /// `(α(t), β(t))` with `λ` carried over unchanged.
    pub fn at(&self, t: f64) -> Self {
        let (sin, cos) = t.sin_cos();
        Self {
            alpha: self.alpha * cos - I * self.beta * sin,
            beta: self.beta * cos - I * self.alpha * sin,
            lambda: self.lambda,
        }
    }

    /// `S = β/α`, `D = λ/β`.
    pub fn params(&self) -> Result<(Complex64, Complex64)> {
        if self.alpha == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateCoefficient("alpha"));
        }
        if self.beta == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateCoefficient("beta"));
        }
        Ok((self.beta / self.alpha, self.lambda / self.beta))
    }

    /// Squeeze and displacement of the Schrödinger state at `t`, read off
    /// the backward-evolved operator `A(-t)`.
    pub fn evolved_params(&self, t: f64) -> Result<(Complex64, Complex64)> {
        self.at(-t).params()
    }

    /// Unnormalized eigenstate `exp[-(β(t)/2α(t)) (x - λ/β(t))²]` of `A(t)`.
    pub fn eigenstate(&self, t: f64, grid: &Grid) -> Result<GridFunction> {
        let (s, d) = self.at(t).params()?;
        if s.re.is_nan() || s.re <= 0.0 {
            return Err(Error::NonNormalizable { re_s: s.re });
        }
        Ok(grid.sample(|x| (-0.5 * s * (x - d) * (x - d)).exp()))
    }

    /// `(iα(t)P + β(t)X) ψ` with a fourth-order central difference for `d/dx`.
    ///
    /// The two outermost points on each side use second-order one-sided stencils.
    pub fn apply(&self, t: f64, psi: &GridFunction) -> Result<GridFunction> {
        let c = self.at(t);
        let dpsi = derivative(psi)?;
        let grid = *psi.grid();
        let values = psi
            .values()
            .iter()
            .zip(&dpsi)
            .enumerate()
            // iα(-i d/dx) = α d/dx
            .map(|(i, (v, dv))| c.alpha * dv + c.beta * grid.x(i) * v)
            .collect();
        GridFunction::new(grid, values)
    }

    /// `‖(A(t) - λ)Φ(t)‖ / ‖Φ(t)‖`, excluding two boundary points per side.
    pub fn eigen_residual(&self, t: f64, grid: &Grid) -> Result<f64> {
        let phi = self.eigenstate(t, grid)?;
        let a_phi = self.apply(t, &phi)?;
        let n = grid.len();
        let (mut num, mut den) = (0.0, 0.0);
        for i in 2..n - 2 {
            let w = grid.weight(i);
            num += w * (a_phi.values()[i] - self.lambda * phi.values()[i]).norm_sqr();
            den += w * phi.values()[i].norm_sqr();
        }
        Ok((num / den).sqrt())
    }
}

pub fn coeffs_at(c: &OperatorCoeffs, t: f64) -> OperatorCoeffs {
    c.at(t)
}

pub fn params_from_coeffs(c: &OperatorCoeffs) -> Result<(Complex64, Complex64)> {
    c.params()
}

pub fn evolved_params(c: &OperatorCoeffs, t: f64) -> Result<(Complex64, Complex64)> {
    c.evolved_params(t)
}

pub fn eigenstate_grid(c: &OperatorCoeffs, t: f64, grid: &Grid) -> Result<GridFunction> {
    c.eigenstate(t, grid)
}

pub fn apply_operator(c: &OperatorCoeffs, t: f64, psi: &GridFunction) -> Result<GridFunction> {
    c.apply(t, psi)
}

fn derivative(psi: &GridFunction) -> Result<Vec<Complex64>> {
    let f = psi.values();
    let n = f.len();
    if n < 5 {
        return Err(Error::GridTooSmall { points: n, min: 5 });
    }
    let h = psi.grid().spacing();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    out[1] = (f[2] - f[0]) / (2.0 * h);
    out[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn coeffs_at_examples() {
        let op = OperatorCoeffs::new(c(0.3, 1.1), c(-0.4, 2.0), c(1.0, 1.0));
        assert_eq!(op.at(0.0), op);
        let quarter = op.at(FRAC_PI_2);
        assert!(close(quarter.alpha, -I * op.beta, 1e-15));
        assert!(close(quarter.beta, -I * op.alpha, 1e-15));
        assert_eq!(quarter.lambda, op.lambda);

        let half = OperatorCoeffs::new(c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)).at(PI);
        assert!(close(half.alpha, c(-1.0, 0.0), 1e-15));
        assert!(close(half.beta, c(-2.0, 0.0), 1e-15));
    }

    #[test]
    fn params_examples() {
        let vac = OperatorCoeffs::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(vac.params().unwrap(), (c(1.0, 0.0), c(0.0, 0.0)));
        let op = OperatorCoeffs::new(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0));
        assert_eq!(op.params().unwrap(), (c(2.0, 0.0), c(1.5, 0.0)));
        let degenerate = OperatorCoeffs::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(
            degenerate.params(),
            Err(Error::DegenerateCoefficient("beta"))
        );
        let degenerate = OperatorCoeffs::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(
            degenerate.params(),
            Err(Error::DegenerateCoefficient("alpha"))
        );
    }

    #[test]
    fn evolved_params_examples() {
        let vac = OperatorCoeffs::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        for t in [0.0, 0.8, 3.0] {
            let (s, d) = vac.evolved_params(t).unwrap();
            assert!(close(s, c(1.0, 0.0), 1e-15));
            assert_eq!(d, c(0.0, 0.0));
        }
        let op = OperatorCoeffs::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0));
        let (s, d) = op.evolved_params(FRAC_PI_2).unwrap();
        assert!(close(s, c(0.5, 0.0), 1e-15));
        assert!(close(d, c(0.0, -2.0), 1e-15));
        assert_eq!(op.evolved_params(0.0).unwrap(), (c(2.0, 0.0), c(1.0, 0.0)));
    }

    #[test]
    fn eigenstate_examples() {
        let grid = Grid::default();
        let vac = OperatorCoeffs::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let phi = vac.eigenstate(0.0, &grid).unwrap();
        for (x, v) in grid.xs().zip(phi.values()).step_by(97) {
            assert!(close(*v, c((-0.5 * x * x).exp(), 0.0), 1e-15));
        }
        let op = OperatorCoeffs::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0));
        let phi = op.eigenstate(0.0, &grid).unwrap();
        for (x, v) in grid.xs().zip(phi.values()).step_by(97) {
            assert!(close(*v, c((-(x - 1.0).powi(2)).exp(), 0.0), 1e-15));
        }
    }

    #[test]
    fn eigenstate_rejects_non_normalizable() {
        let op = OperatorCoeffs::new(c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0));
        assert!(matches!(
            op.eigenstate(0.0, &Grid::default()),
            Err(Error::NonNormalizable { .. })
        ));
    }

    #[test]
    fn vacuum_is_annihilated() {
        let grid = Grid::default();
        let vac = OperatorCoeffs::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let psi = grid.sample(|x| c((-0.5 * x * x).exp(), 0.0));
        let out = vac.apply(0.0, &psi).unwrap();
        let max = out.values()[2..grid.len() - 2]
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        assert!(max < 1e-8, "max |Aψ| = {max}");
    }

    #[test]
    fn displaced_state_has_eigenvalue_two() {
        let grid = Grid::default();
        let op = OperatorCoeffs::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0));
        let psi = grid.sample(|x| c((-(x - 1.0).powi(2)).exp(), 0.0));
        let out = op.apply(0.0, &psi).unwrap();
        for i in 2..grid.len() - 2 {
            assert!((out.values()[i] - 2.0 * psi.values()[i]).norm() < 1e-7);
        }
    }

    #[test]
    fn residual_at_t_03() {
        let vac = OperatorCoeffs::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let r = vac.eigen_residual(0.3, &Grid::default()).unwrap();
        assert!(r <= 1e-6, "residual {r}");
    }

    #[test]
    fn apply_needs_five_points() {
        let grid = Grid::new(0.0, 1.0, 4).unwrap();
        let psi = grid.sample(|_| c(1.0, 0.0));
        let vac = OperatorCoeffs::new(c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        assert_eq!(
            vac.apply(0.0, &psi),
            Err(Error::GridTooSmall { points: 4, min: 5 })
        );
    }

    #[test]
    fn rotation_examples() {
        let r = heisenberg_xp(0.0);
        assert_eq!((r.cos_t, r.sin_t), (1.0, 0.0));
        let (x, p) = heisenberg_xp(FRAC_PI_2).apply(0.7, -1.3);
        assert!((x - -1.3).abs() < 1e-15 && (p - -0.7).abs() < 1e-15);
        let (x, p) = heisenberg_xp(PI).apply(0.7, -1.3);
        assert!((x + 0.7).abs() < 1e-15 && (p - 1.3).abs() < 1e-15);
    }
}
