//! Uniform one-dimensional grids and complex samples on them.
//!
//! All integrals are taken with the trapezoidal rule, summed sequentially
//! from the left end of the grid so results do not depend on evaluation order.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Half-width used when no grid is specified.
pub const DEFAULT_HALF_WIDTH: f64 = 20.0;
/// Number of points used when no grid is specified.
pub const DEFAULT_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::GridTooSmall { points, min: 2 });
        }
        if !(x_min.is_finite() && x_max.is_finite() && x_max > x_min) {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
        })
    }

    /// Grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn xs(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.x(i))
    }

    /// Trapezoid weight of point `i`.
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        if i == 0 || i + 1 == self.points {
            0.5 * h
        } else {
            h
        }
    }

    /// Trapezoid integral of real samples.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.points);
        values
            .iter()
            .enumerate()
            .fold(0.0, |acc, (i, v)| acc + self.weight(i) * v)
    }

    pub fn sample<F: FnMut(f64) -> Complex64>(&self, f: F) -> GridFunction {
        GridFunction {
            grid: *self,
            values: self.xs().map(f).collect(),
        }
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            x_min: -DEFAULT_HALF_WIDTH,
            x_max: DEFAULT_HALF_WIDTH,
            points: DEFAULT_POINTS,
        }
    }
}

/// Complex wavefunction samples on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a {}-point grid",
                values.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm_sqr()).collect()
    }

    /// `∫|ψ|² dx`.
    pub fn norm_sqr(&self) -> f64 {
        self.grid.integrate(&self.density())
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `∫ conj(self) · other dx`.
    pub fn inner(&self, other: &GridFunction) -> Result<Complex64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, (a, b))| {
                acc + a.conj() * b * self.grid.weight(i)
            }))
    }

    /// L² distance `‖self − other‖`.
    pub fn l2_distance(&self, other: &GridFunction) -> Result<f64> {
        self.check_same_grid(other)?;
        let diff: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .collect();
        Ok(self.grid.integrate(&diff).sqrt())
    }

    pub fn scaled(&self, factor: Complex64) -> GridFunction {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Copy rescaled to unit L² norm.
    pub fn normalized(&self) -> GridFunction {
        self.scaled(Complex64::new(1.0 / self.norm(), 0.0))
    }

    /// Mean and variance of the position distribution `|ψ|² / ∫|ψ|²`.
    pub fn position_moments(&self) -> (f64, f64) {
        let density = self.density();
        let mass = self.grid.integrate(&density);
        let first: Vec<f64> = self.grid.xs().zip(&density).map(|(x, p)| x * p).collect();
        let mean = self.grid.integrate(&first) / mass;
        let second: Vec<f64> = self
            .grid
            .xs()
            .zip(&density)
            .map(|(x, p)| (x - mean).powi(2) * p)
            .collect();
        (mean, self.grid.integrate(&second) / mass)
    }

    fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}
