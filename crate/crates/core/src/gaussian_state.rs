//! Closed-form squeezed and displaced Gaussian states of the unit oscillator.
//!
//! A state is fixed by its squeeze parameter `S0` and displacement `D0` at
//! `t = 0`, where (up to normalization) `Ψ(x, 0) = exp[-S0 (x - D0)² / 2]`.
//! Under `H = (P² + X²)/2` it stays Gaussian with
//!
//! ```text
//! S(t) = (S0 cos t + i sin t) / (cos t + i S0 sin t)
//! D(t) = D0 S0 / (S0 cos t + i sin t)
//! Ψ(x, t) = N(t) exp[-S(t) (x² - 2 D(t) x + D(t) D0 cos t) / 2]
//! N(t) = (S0/π)^{1/4} (cos t + i S0 sin t)^{-1/2}
//! ```
//!
//! The square root in `N(t)` is continued along `t` from the principal root
//! at `t = 0`, so `N` picks up the `-1` of a full period instead of jumping.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, GridFunction};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqueezedDisplacedState {
    s0: Complex64,
    d0: Complex64,
}

/// Squeeze, displacement and normalization at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedParams {
    pub t: f64,
    pub s: Complex64,
    pub d: Complex64,
    /// `N(t)` with the continuity branch; excludes [`SqueezedDisplacedState::norm_correction`].
    pub n: Complex64,
}

/// Construct a state, rejecting `Re(S0) <= 0`.
pub fn new_state(s0: Complex64, d0: Complex64) -> Result<SqueezedDisplacedState> {
    SqueezedDisplacedState::new(s0, d0)
}

impl SqueezedDisplacedState {
    pub fn new(s0: Complex64, d0: Complex64) -> Result<Self> {
        if s0.re.is_nan() || s0.re <= 0.0 || !s0.im.is_finite() || !d0.re.is_finite() || !d0.im.is_finite() {
            return Err(Error::NonNormalizable { re_s: s0.re });
        }
        Ok(Self { s0, d0 })
    }

    /// Vacuum: `S0 = 1`, `D0 = 0`.
    pub fn vacuum() -> Self {
        Self {
            s0: Complex64::new(1.0, 0.0),
            d0: Complex64::new(0.0, 0.0),
        }
    }

    pub fn s0(&self) -> Complex64 {
        self.s0
    }

    pub fn d0(&self) -> Complex64 {
        self.d0
    }

    /// True when both parameters are real, the regime of the closed-form density.
    pub fn is_real(&self) -> bool {
        self.s0.im == 0.0 && self.d0.im == 0.0
    }

    pub fn evolved(&self, t: f64) -> EvolvedParams {
        EvolvedParams {
            t,
            s: evolve_squeeze(self.s0, t),
            d: evolve_displacement(self.s0, self.d0, t),
            n: normalization(self.s0, t),
        }
    }

    /// Real constant that makes `N(t)` exact for complex `S0` or `D0`.
    ///
    /// `(S0/π)^{1/4}` only normalizes `exp[-S0 (x - D0)²/2]` when both
    /// parameters are real; otherwise the norm is off by a time-independent
    /// positive factor. Equal to 1 for real parameters.
    pub fn norm_correction(&self) -> f64 {
        self.ln_norm_correction().exp()
    }

    fn ln_norm_correction(&self) -> f64 {
        let (s, d) = (self.s0, self.d0);
        let sd = s * d;
        // ln ∫|exp[-S (x-D)²/2]|² dx
        let ln_gauss = 0.5 * (PI / s.re).ln() + sd.re * sd.re / s.re - (s * d * d).re;
        // ln |(S/π)^{1/4}|²
        let ln_prefactor = 0.5 * (s.norm() / PI).ln();
        -0.5 * (ln_gauss + ln_prefactor)
    }

    /// `Ψ(x, t)`, normalized to unit L² norm for every `t`.
    pub fn wavefunction(&self, t: f64, x: f64) -> Complex64 {
        self.ln_wavefunction(t, x).exp()
    }

    /// Logarithm of `Ψ(x, t)` whose imaginary part is continuous in `t`.
    pub fn ln_wavefunction(&self, t: f64, x: f64) -> Complex64 {
        let p = self.evolved(t);
        let exponent = -0.5 * p.s * (x * x - 2.0 * p.d * x + p.d * self.d0 * t.cos());
        self.ln_norm_correction() + ln_normalization(self.s0, t) + exponent
    }

    pub fn sample(&self, t: f64, grid: &Grid) -> GridFunction {
        // Hoist the t-dependent factors out of the grid loop.
        let p = self.evolved(t);
        let prefactor = self.norm_correction() * p.n;
        let shift = p.d * self.d0 * t.cos();
        grid.sample(|x| prefactor * (-0.5 * p.s * (x * x - 2.0 * p.d * x + shift)).exp())
    }

    /// `|Ψ(x, t)|²`, closed form when the parameters are real.
    pub fn probability_density(&self, t: f64, x: f64) -> f64 {
        self.closed_form_density(t, x)
            .unwrap_or_else(|_| self.wavefunction(t, x).norm_sqr())
    }

    /// `(γ/π)^{1/2} exp[-γ (x - D0 cos t)²]`; real `S0`, `D0` only.
    pub fn closed_form_density(&self, t: f64, x: f64) -> Result<f64> {
        if !self.is_real() {
            return Err(Error::NotClosedForm);
        }
        let g = gamma(self.s0.re, t);
        Ok((g / PI).sqrt() * (-g * (x - center(self.d0.re, t)).powi(2)).exp())
    }

    /// Mean position `<X>(t)`; reduces to `D0 cos t` for real parameters.
    pub fn mean_position(&self, t: f64) -> f64 {
        let p = self.evolved(t);
        (p.s * p.d).re / p.s.re
    }

    /// Width `Re S(t)` of `|Ψ|² ∝ exp[-Re S(t) (x - <X>)²]`.
    pub fn density_width(&self, t: f64) -> f64 {
        evolve_squeeze(self.s0, t).re
    }
}

/// `S(t) = (S0 cos t + i sin t) / (cos t + i S0 sin t)`.
pub fn evolve_squeeze(s0: Complex64, t: f64) -> Complex64 {
    let (sin, cos) = t.sin_cos();
    (s0 * cos + I * sin) / (cos + I * s0 * sin)
}

/// `D(t) = D0 S0 / (S0 cos t + i sin t)`.
pub fn evolve_displacement(s0: Complex64, d0: Complex64, t: f64) -> Complex64 {
    let (sin, cos) = t.sin_cos();
    d0 * s0 / (s0 * cos + I * sin)
}

/// `N(t) = (S0/π)^{1/4} (cos t + i S0 sin t)^{-1/2}` on the continuity branch.
pub fn normalization(s0: Complex64, t: f64) -> Complex64 {
    ln_normalization(s0, t).exp()
}

fn ln_normalization(s0: Complex64, t: f64) -> Complex64 {
    let (sin, cos) = t.sin_cos();
    let z = cos + I * s0 * sin;
    0.25 * (s0 / PI).ln() - 0.5 * Complex64::new(z.norm().ln(), continuous_arg(s0, t))
}

/// Argument of `cos t + i S0 sin t` continued from 0 at `t = 0`.
///
/// For `Re(S0) > 0` the curve has `Im >= 0` on `[0, π]` and flips sign every
/// half period, so the argument is `kπ` plus an angle in `[0, π]`.
pub fn continuous_arg(s0: Complex64, t: f64) -> f64 {
    let k = (t / PI).floor();
    let (sin, cos) = t.sin_cos();
    let mut z = cos + I * s0 * sin;
    if (k as i64).rem_euclid(2) == 1 {
        z = -z;
    }
    let mut a = z.im.atan2(z.re);
    // Rounding at the half-period boundary can land just below the real axis.
    if a < -0.5 * PI {
        a += TAU;
    }
    k * PI + a
}

/// `γ = S0 / (cos² t + S0² sin² t)` for real `S0`.
pub fn gamma(s0: f64, t: f64) -> f64 {
    let (sin, cos) = t.sin_cos();
    s0 / (cos * cos + s0 * s0 * sin * sin)
}

/// Wavepacket centre `D0 cos t`.
pub fn center(d0: f64, t: f64) -> f64 {
    d0 * t.cos()
}
