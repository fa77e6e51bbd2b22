//! Catenoid bridge geometry in the meridian coordinate `u`.
//!
//! The surface `(√(R²+u²) cos φ, √(R²+u²) sin φ, R asinh(u/R))` has line
//! element `du² + (R²+u²) dφ²`, so `u` is arc length along a meridian and
//! `u = 0` is the throat.

use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};

/// Bridge radius `R > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenoidParams {
    radius: f64,
}

impl CatenoidParams {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "catenoid radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `R² + u²`.
    pub(crate) fn rho2(&self, u: f64) -> f64 {
        self.radius.mul_add(self.radius, u * u)
    }

    /// `√(R² + u²)`, overflow-safe.
    pub(crate) fn rho(&self, u: f64) -> f64 {
        self.radius.hypot(u)
    }

    /// Height `z = R asinh(u/R)` along the axis.
    pub fn height(&self, u: f64) -> f64 {
        self.radius * stable_asinh(u / self.radius)
    }

    /// Inverse of [`height`](Self::height): `u = R sinh(z/R)`.
    pub fn meridian_from_height(&self, z: f64) -> f64 {
        self.radius * (z / self.radius).sinh()
    }
}

/// A point `(u, φ)` with `φ` reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub u: f64,
    phi: f64,
}

impl SurfacePoint {
    pub fn new(u: f64, phi: f64) -> Result<Self> {
        if !(u.is_finite() && phi.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "surface point needs finite coordinates, got ({u}, {phi})"
            )));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { u, phi })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub gaussian: f64,
    pub mean: f64,
}

/// `asinh` through `ln(|x| + √(x²+1))` on `|x|`, with the sign restored, so
/// large negative arguments do not cancel. Past `1e8` the square root is
/// replaced by `|x|` to avoid overflow.
pub fn stable_asinh(x: f64) -> f64 {
    let a = x.abs();
    let r = if a > 1e8 {
        std::f64::consts::LN_2 + a.ln()
    } else if a < 1e-8 {
        a
    } else {
        (a + a.hypot(1.0)).ln()
    };
    r.copysign(x)
}

/// Cartesian position of a surface point.
pub fn embed(params: &CatenoidParams, p: &SurfacePoint) -> [f64; 3] {
    let rho = params.rho(p.u);
    let (s, c) = p.phi.sin_cos();
    [rho * c, rho * s, params.height(p.u)]
}

/// `g_φφ = R² + u²` (and `g_uu = 1`).
pub fn metric_coefficient(params: &CatenoidParams, u: f64) -> f64 {
    params.rho2(u)
}

/// Gaussian curvature `-R²/(R²+u²)²`; the mean curvature of a minimal
/// surface is exactly zero.
pub fn curvatures(params: &CatenoidParams, u: f64) -> CurvatureSample {
    let r = params.radius;
    let q = params.rho2(u);
    CurvatureSample {
        gaussian: -(r / q) * (r / q),
        mean: 0.0,
    }
}

/// The `ω¹²_φ` component of the spin connection, `u/√(R²+u²)`.
pub fn spin_connection(params: &CatenoidParams, u: f64) -> f64 {
    u / params.rho(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn cat(r: f64) -> CatenoidParams {
        CatenoidParams::new(r).unwrap()
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(CatenoidParams::new(0.0).is_err());
        assert!(CatenoidParams::new(-1.0).is_err());
        assert!(CatenoidParams::new(f64::INFINITY).is_err());
    }

    #[test]
    fn phi_is_reduced() {
        let p = SurfacePoint::new(0.0, -FRAC_PI_2).unwrap();
        assert_relative_eq!(p.phi(), 3.0 * FRAC_PI_2);
        let p = SurfacePoint::new(0.0, 5.0 * TAU).unwrap();
        assert!(p.phi() >= 0.0 && p.phi() < TAU);
        assert!(SurfacePoint::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn embedding_values() {
        let e = embed(&cat(1.0), &SurfacePoint::new(0.0, 0.0).unwrap());
        assert_eq!(e, [1.0, 0.0, 0.0]);
        let e = embed(&cat(1.0), &SurfacePoint::new(0.0, FRAC_PI_2).unwrap());
        assert!(e[0].abs() < 1e-16);
        assert_relative_eq!(e[1], 1.0);
        let e = embed(&cat(2.0), &SurfacePoint::new(2.0, 0.0).unwrap());
        assert_relative_eq!(e[0], 2.0 * 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(e[2], 2.0 * 1f64.asinh(), epsilon = 1e-14);
    }

    #[test]
    fn metric_and_curvature_values() {
        assert_eq!(metric_coefficient(&cat(1.0), 0.0), 1.0);
        assert_eq!(metric_coefficient(&cat(3.0), 4.0), 25.0);
        assert_eq!(metric_coefficient(&cat(2.0), -2.0), 8.0);
        assert_eq!(curvatures(&cat(1.0), 0.0), CurvatureSample { gaussian: -1.0, mean: 0.0 });
        assert_relative_eq!(curvatures(&cat(2.0), 2.0).gaussian, -1.0 / 16.0);
        assert!(curvatures(&cat(1.0), 1e6).gaussian.abs() < 1e-23);
    }

    #[test]
    fn spin_connection_values() {
        assert_eq!(spin_connection(&cat(1.0), 0.0), 0.0);
        assert_relative_eq!(spin_connection(&cat(3.0), 4.0), 0.8);
        assert!((spin_connection(&cat(1.0), 1e6) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asinh_is_stable() {
        for x in [-1e300, -1e9, -3.7, -1e-10, 0.0, 1e-10, 0.5, 3.7, 1e9, 1e300] {
            let y = stable_asinh(x);
            assert!(y.is_finite());
            assert_eq!(y, -stable_asinh(-x));
            if x.abs() < 1e8 {
                assert_relative_eq!(y, x.asinh(), max_relative = 1e-15);
            }
        }
        assert_relative_eq!(cat(1.5).meridian_from_height(cat(1.5).height(-7.0)), -7.0, max_relative = 1e-14);
    }
}
