//! Special functions: Jacobi and Hermite polynomials, Kummer's confluent
//! hypergeometric `M`, parabolic cylinder `D_ν` and log-gamma.
//!
//! All real-argument, double precision, sized for the moderate parameters the
//! catenoid solutions need. Nothing here tries to be a general-purpose library.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Degree and parameters of `P_n^{(α,β)}`, restricted to the classical range
/// `α, β > -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiParams {
    n: u32,
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(n: u32, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { n, alpha, beta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `n(n + α + β + 1)`, the eigenvalue of the Jacobi operator.
    pub fn eigenvalue(&self) -> f64 {
        let n = self.n as f64;
        n * (n + self.alpha + self.beta + 1.0)
    }
}

const JACOBI_SLACK: f64 = 1e-12;

/// `P_n^{(α,β)}(x)` by the three-term recurrence in `n`.
///
/// Arguments up to `1e-12` outside `[-1, 1]` are accepted so that finite
/// difference stencils can straddle the endpoints.
pub fn jacobi(p: JacobiParams, x: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 + JACOBI_SLACK) {
        return Err(Error::OutOfDomain {
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok(jacobi_recurrence(p.n, p.alpha, p.beta, x))
}

fn jacobi_recurrence(n: u32, alpha: f64, beta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let ab = alpha + beta;
    let mut cur = (alpha + 1.0) + 0.5 * (ab + 2.0) * (x - 1.0);
    for k in 1..n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let a1 = 2.0 * (k + 1.0) * (k + ab + 1.0) * s;
        let a2 = (s + 1.0) * (alpha * alpha - beta * beta);
        let a3 = (s + 1.0) * (s + 2.0) * s;
        let a4 = 2.0 * (k + alpha) * (k + beta) * (s + 2.0);
        let next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx P_n^{(α,β)}(x) = (n+α+β+1)/2 · P_{n-1}^{(α+1,β+1)}(x)`.
pub fn jacobi_derivative(p: JacobiParams, x: f64) -> Result<f64> {
    if p.n == 0 {
        jacobi(p, x)?;
        return Ok(0.0);
    }
    let lowered = JacobiParams::new(p.n - 1, p.alpha + 1.0, p.beta + 1.0)?;
    Ok(0.5 * (p.n as f64 + p.alpha + p.beta + 1.0) * jacobi(lowered, x)?)
}

const KUMMER_MAX_TERMS: usize = 500;

/// Kummer's confluent hypergeometric function `M(a, b, z)`.
///
/// Power series in `z`, stopped once a term drops below `1e-17` of the
/// partial sum (past the point where the terms start shrinking). Negative `z`
/// goes through `M(a,b,z) = e^z M(b-a, b, -z)` unless the series terminates,
/// which keeps the summed terms of one sign in the common cases.
pub fn kummer_m(a: f64, b: f64, z: f64) -> Result<f64> {
    if b <= 0.0 && b == b.round() {
        return Err(Error::InvalidParameter(format!(
            "Kummer M undefined for non-positive integer b = {b}"
        )));
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Kummer M needs finite arguments, got ({a}, {b}, {z})"
        )));
    }
    let terminates = a <= 0.0 && a == a.round();
    if z < 0.0 && !terminates {
        return Ok(z.exp() * kummer_series(b - a, b, -z)?);
    }
    kummer_series(a, b, z)
}

fn kummer_series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..KUMMER_MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        let shrinking = ratio.abs() < 1.0 && kf >= a.abs();
        if shrinking && term.abs() < 1e-17 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        what: "Kummer M",
        terms: KUMMER_MAX_TERMS,
    })
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_ν(x)` for a real degree that must be a non-negative integer; other
/// degrees only exist here through [`kummer_m`].
pub fn hermite_real(nu: f64, x: f64) -> Result<f64> {
    Ok(hermite(integer_degree(nu)?, x))
}

pub(crate) fn integer_degree(nu: f64) -> Result<u32> {
    let k = nu.round();
    if (nu - k).abs() > 1e-12 || k < 0.0 || k > u32::MAX as f64 {
        return Err(Error::InvalidParameter(format!(
            "degree {nu} is not a non-negative integer"
        )));
    }
    Ok(k as u32)
}

const D_NU_MAX: f64 = 20.0;
/// Largest tolerated ratio `(|even| + |odd|) / |even - odd|` for
/// non-integer order, which keeps roughly nine correct digits.
const D_MAX_CANCELLATION: f64 = 1e6;

/// Parabolic cylinder function `D_ν(z)` (Whittaker's form, solving
/// `y'' + (ν + 1/2 - z²/4) y = 0`).
///
/// Integer `ν ≥ 0` uses the Hermite reduction, exact up to rounding for
/// `|z| ≤ 20`. Other orders combine the even and odd Kummer solutions with
/// reciprocal-gamma weights. For `z > 0` the two nearly cancel (by about
/// `e^{z²/2}`), so the result is refused once the cancellation would eat
/// more than six digits; in practice that caps `z` near 4 to 5.
pub fn parabolic_cylinder_d(nu: f64, z: f64) -> Result<f64> {
    if !(nu.abs() <= D_NU_MAX) {
        return Err(Error::OutOfDomain {
            value: nu,
            domain: "|nu| <= 20",
        });
    }
    if !(z.abs() <= 20.0) {
        return Err(Error::OutOfDomain {
            value: z,
            domain: "|z| <= 20",
        });
    }
    if let Ok(k) = integer_degree(nu) {
        return Ok(2f64.powf(-0.5 * k as f64)
            * (-0.25 * z * z).exp()
            * hermite(k, z / 2f64.sqrt()));
    }
    let w = 0.5 * z * z;
    let even = PI.sqrt() * recip_gamma(0.5 * (1.0 - nu)) * kummer_m(-0.5 * nu, 0.5, w)?;
    let odd = (2.0 * PI).sqrt() * z * recip_gamma(-0.5 * nu) * kummer_m(0.5 * (1.0 - nu), 1.5, w)?;
    let diff = even - odd;
    let factor = (even.abs() + odd.abs()) / diff.abs();
    if !(factor <= D_MAX_CANCELLATION) {
        return Err(Error::PrecisionLoss {
            what: "parabolic cylinder D",
            factor,
        });
    }
    Ok(2f64.powf(0.5 * nu) * (-0.25 * z * z).exp() * diff)
}

/// Lanczos coefficients for `g = 7`, nine terms; about 15 significant
/// digits for `Γ` on the right half-plane.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::OutOfDomain {
            value: x,
            domain: "x > 0",
        });
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection keeps the Lanczos sum in its accurate range.
        return (PI / sin_pi(x)).ln() - ln_gamma_positive(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `1/Γ(x)` for any real `x`; exactly zero at the poles `0, -1, -2, ...`.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    if x > 0.0 {
        (-ln_gamma_positive(x)).exp()
    } else {
        // 1/Γ(x) = Γ(1-x) sin(πx) / π
        sin_pi(x) / PI * ln_gamma_positive(1.0 - x).exp()
    }
}

/// `sin(πx)` with exact zeros at the integers.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    if r == r.round() {
        return 0.0;
    }
    (PI * r).sin()
}
