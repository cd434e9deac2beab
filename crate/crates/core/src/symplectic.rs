//! Real 2×2 unit-determinant maps of `(X, P)` and their action on squeeze parameters.
//!
//! A map `X₂ = aX₁ + bP₁`, `P₂ = cX₁ + dP₁` with `ad - bc = 1` sends the
//! squeezed state `exp(-S₁X₁²/2)` to `exp(-S₂X₂²/2)` with
//! `S₂ = (S₁d - ic) / (a + iS₁b)`.
//!
//! [`compose`]`(m2, m1)` is the matrix product `m2·m1`: `m1` acts first.
//! With this convention the squeeze action is a homomorphism.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|ad - bc - 1|` accepted by constructors and [`compose`].
pub const DET_TOLERANCE: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymplecticMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SymplecticMatrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = Self { a, b, c, d };
        m.check()?;
        Ok(m)
    }

    pub const fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn check(&self) -> Result<()> {
        let deviation = (self.det() - 1.0).abs();
        if deviation <= DET_TOLERANCE {
            Ok(())
        } else {
            Err(Error::InvariantViolation { deviation })
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self · first`; `first` acts first.
    pub fn after(&self, first: &SymplecticMatrix) -> Self {
        Self {
            a: self.a * first.a + self.b * first.c,
            b: self.a * first.b + self.b * first.d,
            c: self.c * first.a + self.d * first.c,
            d: self.c * first.b + self.d * first.d,
        }
    }

    pub fn max_abs_diff(&self, other: &SymplecticMatrix) -> f64 {
        [
            self.a - other.a,
            self.b - other.b,
            self.c - other.c,
            self.d - other.d,
        ]
        .iter()
        .fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl Default for SymplecticMatrix {
    fn default() -> Self {
        Self::identity()
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `exp(-θσx)`: hyperbolic shear.
pub fn generator_x(theta: f64) -> SymplecticMatrix {
    let (ch, sh) = (theta.cosh(), theta.sinh());
    SymplecticMatrix {
        a: ch,
        b: sh,
        c: sh,
        d: ch,
    }
}

/// `exp(iνσy)`: rotation.
pub fn generator_y(nu: f64) -> SymplecticMatrix {
    let (sin, cos) = nu.sin_cos();
    SymplecticMatrix {
        a: cos,
        b: sin,
        c: -sin,
        d: cos,
    }
}

/// `exp(ρσz)`: pure squeeze `diag(e^ρ, e^-ρ)`.
pub fn generator_z(rho: f64) -> SymplecticMatrix {
    SymplecticMatrix {
        a: rho.exp(),
        b: 0.0,
        c: 0.0,
        d: (-rho).exp(),
    }
}

/// Oscillator time evolution `X(t) = X cos t + P sin t`, `P(t) = -X sin t + P cos t`.
pub fn time_evolution_matrix(t: f64) -> SymplecticMatrix {
    generator_y(t)
}

/// `m2 · m1`, rejecting inputs off the unit-determinant surface.
pub fn compose(m2: &SymplecticMatrix, m1: &SymplecticMatrix) -> Result<SymplecticMatrix> {
    m2.check()?;
    m1.check()?;
    Ok(m2.after(m1))
}

pub fn transform_coords(m: &SymplecticMatrix, x1: f64, p1: f64) -> (f64, f64) {
    (m.a * x1 + m.b * p1, m.c * x1 + m.d * p1)
}

/// Coefficients of `iα₂P₂ + β₂X₂` equal to `iαP₁ + βX₁`.
pub fn transform_operator_coeffs(
    m: &SymplecticMatrix,
    alpha: Complex64,
    beta: Complex64,
) -> (Complex64, Complex64) {
    (alpha * m.a + I * beta * m.b, beta * m.d - I * alpha * m.c)
}

/// `S₂ = (S₁d - ic) / (a + iS₁b)`.
///
/// `Re(S₂) > 0` is not guaranteed for arbitrary `m`; callers check it.
pub fn mobius_squeeze(m: &SymplecticMatrix, s1: Complex64) -> Result<Complex64> {
    let den = m.a + I * s1 * m.b;
    if den.norm() <= f64::EPSILON * (m.a.abs() + (s1 * m.b).norm()) || den.norm() == 0.0 {
        return Err(Error::SingularTransformation);
    }
    Ok((s1 * m.d - I * m.c) / den)
}

/// Double-double value `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn fast_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self {
            hi: s,
            lo: b - (s - a),
        }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Self::two_sum(self.hi, other.hi);
        let t = Self::two_sum(self.lo, other.lo);
        let v = Self::fast_two_sum(s.hi, s.lo + t.hi);
        Self::fast_two_sum(v.hi, v.lo + t.lo)
    }

    fn neg(self) -> Dd {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, other: Dd) -> Dd {
        let p = self.hi * other.hi;
        let err = self.hi.mul_add(other.hi, -p);
        let err = err + (self.hi * other.lo + self.lo * other.hi);
        Self::fast_two_sum(p, err)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Running product of many symplectic factors.
///
/// Entries are accumulated in double-double arithmetic. Long products of
/// hyperbolic factors grow entries like `e^{Σ|θ|}`, and a plain `f64` product
/// then loses `ad - bc` to cancellation; here the determinant of the
/// accumulated product stays within a few ulps per factor of the product of
/// the factors' own determinants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticProduct {
    a: Dd,
    b: Dd,
    c: Dd,
    d: Dd,
    factors: usize,
}

impl SymplecticProduct {
    pub const fn identity() -> Self {
        Self {
            a: Dd::from_f64(1.0),
            b: Dd::from_f64(0.0),
            c: Dd::from_f64(0.0),
            d: Dd::from_f64(1.0),
            factors: 0,
        }
    }

    /// Left-multiply by `next`, so `next` acts after everything pushed so far.
    pub fn then(&mut self, next: &SymplecticMatrix) -> Result<&mut Self> {
        next.check()?;
        let (na, nb, nc, nd) = (
            Dd::from_f64(next.a),
            Dd::from_f64(next.b),
            Dd::from_f64(next.c),
            Dd::from_f64(next.d),
        );
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        self.a = na.mul(a).add(nb.mul(c));
        self.b = na.mul(b).add(nb.mul(d));
        self.c = nc.mul(a).add(nd.mul(c));
        self.d = nc.mul(b).add(nd.mul(d));
        self.factors += 1;
        Ok(self)
    }

    pub fn factors(&self) -> usize {
        self.factors
    }

    /// `ad - bc` of the accumulated product.
    pub fn det(&self) -> f64 {
        self.a.mul(self.d).add(self.b.mul(self.c).neg()).to_f64()
    }

    /// Entries rounded to `f64`.
    ///
    /// The rounded matrix is what [`mobius_squeeze`] consumes; for products
    /// with large entries its own `f64` determinant is less accurate than [`det`](Self::det).
    pub fn matrix(&self) -> SymplecticMatrix {
        SymplecticMatrix {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            c: self.c.to_f64(),
            d: self.d.to_f64(),
        }
    }
}

impl Default for SymplecticProduct {
    fn default() -> Self {
        Self::identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, LN_2};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn generator_examples() {
        assert_eq!(generator_x(0.0), SymplecticMatrix::identity());
        let g = generator_x(0.5);
        assert!((g.a - 1.12763).abs() < 1e-5 && (g.b - 0.52110).abs() < 1e-5);
        assert_eq!(g.a, g.d);
        assert_eq!(g.b, g.c);

        assert_eq!(generator_y(0.0), SymplecticMatrix::identity());
        let r = generator_y(FRAC_PI_2);
        let expected = SymplecticMatrix {
            a: 0.0,
            b: 1.0,
            c: -1.0,
            d: 0.0,
        };
        assert!(r.max_abs_diff(&expected) < 1e-15);

        assert_eq!(generator_z(0.0), SymplecticMatrix::identity());
        let z = generator_z(LN_2);
        assert!((z.a - 2.0).abs() < 1e-15 && (z.d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn compose_examples() {
        let m = generator_x(0.7).after(&generator_z(-0.3));
        let id = compose(&m, &m.inverse()).unwrap();
        assert!(id.max_abs_diff(&SymplecticMatrix::identity()) < 1e-14);
        let zz = compose(&generator_z(0.2), &generator_z(0.5)).unwrap();
        assert!(zz.max_abs_diff(&generator_z(0.7)) < 1e-15);
        let xy = compose(&generator_x(0.3), &generator_y(0.7)).unwrap();
        assert!((xy.det() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn compose_rejects_bad_determinant() {
        let bad = SymplecticMatrix {
            a: 2.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        };
        assert!(matches!(
            compose(&bad, &SymplecticMatrix::identity()),
            Err(Error::InvariantViolation { .. })
        ));
        assert!(SymplecticMatrix::new(2.0, 0.0, 0.0, 1.0).is_err());
        assert!(SymplecticMatrix::new(2.0, 0.0, 0.0, 0.5).is_ok());
    }

    #[test]
    fn transform_coords_examples() {
        assert_eq!(
            transform_coords(&SymplecticMatrix::identity(), 0.3, -2.0),
            (0.3, -2.0)
        );
        let (x, p) = transform_coords(&time_evolution_matrix(FRAC_PI_2), 0.3, -2.0);
        assert!((x + 2.0).abs() < 1e-15 && (p + 0.3).abs() < 1e-15);
        let rho = 0.4;
        let (x, p) = transform_coords(&generator_z(rho), 1.0, 1.0);
        assert_eq!((x, p), (rho.exp(), (-rho).exp()));
    }

    #[test]
    fn operator_coeff_examples() {
        let (alpha, beta) = (c(0.5, 1.0), c(2.0, -0.3));
        assert_eq!(
            transform_operator_coeffs(&SymplecticMatrix::identity(), alpha, beta),
            (alpha, beta)
        );
        let rho = -0.6;
        let (a2, b2) = transform_operator_coeffs(&generator_z(rho), alpha, beta);
        assert!((a2 - alpha * rho.exp()).norm() < 1e-15);
        assert!((b2 - beta * (-rho).exp()).norm() < 1e-15);
        let m = generator_x(0.4).after(&generator_y(1.1));
        let (a2, b2) = transform_operator_coeffs(&m, alpha, beta);
        assert!((b2 / a2 - mobius_squeeze(&m, beta / alpha).unwrap()).norm() < 1e-14);
    }

    #[test]
    fn mobius_examples() {
        let s = c(1.3, -0.4);
        assert_eq!(mobius_squeeze(&SymplecticMatrix::identity(), s).unwrap(), s);
        let rho = 0.25;
        let scaled = mobius_squeeze(&generator_z(rho), s).unwrap();
        assert!((scaled - s * (-2.0 * rho).exp()).norm() < 1e-15);
        // a + iSb = 0 for S = i, a = b = 1
        let shear = SymplecticMatrix {
            a: 1.0,
            b: 1.0,
            c: 0.0,
            d: 1.0,
        };
        assert_eq!(
            mobius_squeeze(&shear, c(0.0, 1.0)),
            Err(Error::SingularTransformation)
        );
    }
    #[test]
    fn product_tracks_determinant_through_long_chains() {
        let mut p = SymplecticProduct::identity();
        for k in 0..20 {
            let g = match k % 3 {
                0 => generator_x(2.0),
                1 => generator_z(1.9),
                _ => generator_y(0.3),
            };
            p.then(&g).unwrap();
        }
        assert_eq!(p.factors(), 20);
        assert!((p.det() - 1.0).abs() < 1e-12, "det = {}", p.det());
        let m = p.matrix();
        let largest = [m.a, m.b, m.c, m.d]
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        assert!(largest > 1e6, "largest entry {largest}");
    }

    #[test]
    fn product_matches_plain_composition() {
        let (m1, m2) = (generator_x(0.4), generator_y(-1.2));
        let mut p = SymplecticProduct::identity();
        p.then(&m1).unwrap().then(&m2).unwrap();
        assert!(p.matrix().max_abs_diff(&compose(&m2, &m1).unwrap()) < 1e-15);
    }
}
