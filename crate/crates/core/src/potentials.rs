//! Effective potentials of the reduced one-dimensional problems.
//!
//! Functions of `u` live on the whole line. The `x` forms use `u = R tan x`
//! and reject `|x| ≥ π/2 - 1e-12`. The `r` forms use `r = sin x` and reject
//! `|r| ≥ 1`. The dimensionless energy is `ε = E R / v_F`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::CatenoidParams;

/// Which spinor component. The lower component is the upper one with
/// `m → -m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinorBranch {
    Upper,
    Lower,
}

impl SpinorBranch {
    pub fn sign(self) -> f64 {
        match self {
            SpinorBranch::Upper => 1.0,
            SpinorBranch::Lower => -1.0,
        }
    }
}

/// Fermi-velocity profile along the bridge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FermiProfile {
    /// `v_F` everywhere.
    Constant { vf: f64 },
    /// `v_F(u) = λ (1 + u²/R²)`, i.e. `λ sec²x`.
    Scarf { lambda: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialModel {
    profile: FermiProfile,
    m: i32,
    branch: SpinorBranch,
}

impl PotentialModel {
    pub fn new(profile: FermiProfile, m: i32, branch: SpinorBranch) -> Result<Self> {
        let v = match profile {
            FermiProfile::Constant { vf } => vf,
            FermiProfile::Scarf { lambda } => lambda,
        };
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Fermi velocity scale must be positive, got {v}"
            )));
        }
        Ok(Self { profile, m, branch })
    }

    pub fn constant(vf: f64, m: i32, branch: SpinorBranch) -> Result<Self> {
        Self::new(FermiProfile::Constant { vf }, m, branch)
    }

    pub fn scarf(lambda: f64, m: i32, branch: SpinorBranch) -> Result<Self> {
        Self::new(FermiProfile::Scarf { lambda }, m, branch)
    }

    pub fn profile(&self) -> FermiProfile {
        self.profile
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn branch(&self) -> SpinorBranch {
        self.branch
    }

    /// `m` with the branch sign folded in.
    pub fn signed_m(&self) -> f64 {
        self.branch.sign() * self.m as f64
    }
}

/// A superpotential `W(u)`. The derivative defaults to a five-point central
/// difference with step `1e-6·(1 + |u|)`; built-in models override it with
/// the analytic form.
pub trait Superpotential {
    fn value(&self, u: f64) -> f64;

    fn derivative(&self, u: f64) -> f64 {
        let h = 1e-6 * (1.0 + u.abs());
        let f = |t: f64| self.value(t);
        (f(u - 2.0 * h) - 8.0 * f(u - h) + 8.0 * f(u + h) - f(u + 2.0 * h)) / (12.0 * h)
    }

    /// `∫₀ᵘ W`, when known in closed form.
    fn antiderivative(&self, _u: f64) -> Option<f64> {
        None
    }
}

impl<S: Superpotential + ?Sized> Superpotential for &S {
    fn value(&self, u: f64) -> f64 {
        (**self).value(u)
    }
    fn derivative(&self, u: f64) -> f64 {
        (**self).derivative(u)
    }
    fn antiderivative(&self, u: f64) -> Option<f64> {
        (**self).antiderivative(u)
    }
}

/// Wraps a closure; derivative by finite differences.
#[derive(Clone, Copy)]
pub struct FnSuperpotential<F>(pub F);

impl<F: Fn(f64) -> f64> Superpotential for FnSuperpotential<F> {
    fn value(&self, u: f64) -> f64 {
        (self.0)(u)
    }
}

/// `W(u) = m/√(R²+u²)` of the constant-velocity catenoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenoidSuperpotential {
    pub params: CatenoidParams,
    pub m: f64,
}

impl CatenoidSuperpotential {
    pub fn new(params: CatenoidParams, m: i32) -> Self {
        Self {
            params,
            m: m as f64,
        }
    }
}

impl Superpotential for CatenoidSuperpotential {
    fn value(&self, u: f64) -> f64 {
        self.m / self.params.rho(u)
    }

    fn derivative(&self, u: f64) -> f64 {
        let rho = self.params.rho(u);
        -self.m * u / (rho * rho * rho)
    }

    fn antiderivative(&self, u: f64) -> Option<f64> {
        Some(self.m * crate::geometry::stable_asinh(u / self.params.radius()))
    }
}

/// `m/√(R²+u²)`.
pub fn superpotential(params: &CatenoidParams, m: i32, u: f64) -> f64 {
    CatenoidSuperpotential::new(*params, m).value(u)
}

/// `(W² - W', W² + W')`.
pub fn partner_potentials_from_w(w: &impl Superpotential, u: f64) -> (f64, f64) {
    let v = w.value(u);
    let d = w.derivative(u);
    (v * v - d, v * v + d)
}

/// `m²/(R²+u²) ± m u/(R²+u²)^{3/2}`, the sign set by the branch. Independent
/// of the velocity profile.
pub fn v_eff(model: &PotentialModel, params: &CatenoidParams, u: f64) -> f64 {
    let m = model.signed_m();
    let q = params.rho2(u);
    let rho = params.rho(u);
    m * m / q + m * u / (q * rho)
}

/// The decoupling functions `Σ(u)` and `Λ(u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaLambda {
    pub sigma: f64,
    pub lambda: f64,
}

pub fn sigma_lambda(params: &CatenoidParams, m: i32, u: f64) -> SigmaLambda {
    let w = superpotential(params, m, u);
    let s = u / (2.0 * params.rho2(u));
    SigmaLambda {
        sigma: w - s,
        lambda: -w - s,
    }
}

/// `v_F(u)` and its first two `u`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VelocityJet {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

pub fn fermi_velocity_jet(model: &PotentialModel, params: &CatenoidParams, u: f64) -> VelocityJet {
    match model.profile {
        FermiProfile::Constant { vf } => VelocityJet {
            value: vf,
            first: 0.0,
            second: 0.0,
        },
        FermiProfile::Scarf { lambda } => {
            let r2 = params.radius() * params.radius();
            VelocityJet {
                value: lambda * (1.0 + u * u / r2),
                first: 2.0 * lambda * u / r2,
                second: 2.0 * lambda / r2,
            }
        }
    }
}

pub fn fermi_velocity(model: &PotentialModel, params: &CatenoidParams, u: f64) -> f64 {
    fermi_velocity_jet(model, params, u).value
}

/// `κ(u) = (R²+u²)^{1/4} / √v_F(u)`, the factor in `ψ = κ ω`.
pub fn kappa(model: &PotentialModel, params: &CatenoidParams, u: f64) -> f64 {
    params.rho(u).sqrt() / fermi_velocity(model, params, u).sqrt()
}

/// Velocity-gradient part of the effective potential,
/// `-[(v')² - 2v(2m v'/√(R²+u²) + v'')] / (4v²)`, exactly zero for a
/// constant profile.
pub fn vbar_eff(model: &PotentialModel, params: &CatenoidParams, u: f64) -> f64 {
    if let FermiProfile::Constant { .. } = model.profile {
        return 0.0;
    }
    let VelocityJet {
        value: v,
        first: d1,
        second: d2,
    } = fermi_velocity_jet(model, params, u);
    let m = model.signed_m();
    -(d1 * d1 - 2.0 * v * (2.0 * m * d1 / params.rho(u) + d2)) / (4.0 * v * v)
}

/// `U_eff = V_eff + V̄_eff`.
pub fn u_eff(model: &PotentialModel, params: &CatenoidParams, u: f64) -> f64 {
    v_eff(model, params, u) + vbar_eff(model, params, u)
}

/// Coefficients `(p, q)` of the decoupled constant-velocity equation in its
/// first-derivative form `-ψ'' + p ψ' + q ψ = (E/v_F)² ψ`, with
/// `p = u/(R²+u²)`. The change `ψ = (R²+u²)^{1/4} f` turns it into
/// `-f'' + V_eff f`.
pub fn first_derivative_form(model: &PotentialModel, params: &CatenoidParams, u: f64) -> (f64, f64) {
    let q2 = params.rho2(u);
    let s = u / (2.0 * q2);
    let ds = (params.radius() * params.radius() - u * u) / (2.0 * q2 * q2);
    (2.0 * s, ds - s * s + v_eff(model, params, u))
}

/// Largest `|x|` accepted by the x-space functions.
pub const X_LIMIT: f64 = FRAC_PI_2 - 1e-12;

pub(crate) fn check_x(x: f64) -> Result<()> {
    if x.abs() < X_LIMIT {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            value: x,
            domain: "|x| < pi/2",
        })
    }
}

pub(crate) fn check_r(r: f64) -> Result<()> {
    if r.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            value: r,
            domain: "|r| < 1",
        })
    }
}

/// `Δ(x)` of the point-transformed velocity-dependent equation
/// `-ω'' + 2 tan x ω' + Δ ω = (E R / v_F)² ω`, with `x`-derivatives of
/// `v_F(x)`, evaluated as written.
pub fn delta(model: &PotentialModel, params: &CatenoidParams, x: f64) -> Result<f64> {
    check_x(x)?;
    let m = model.signed_m();
    let r = params.radius();
    let (sec, tan) = (1.0 / x.cos(), x.tan());
    // v'/v and v''/v for v = λ sec²x.
    let (l1, l2) = match model.profile {
        FermiProfile::Constant { .. } => (0.0, 0.0),
        FermiProfile::Scarf { .. } => (2.0 * tan, 4.0 * tan * tan + 2.0 * sec * sec),
    };
    Ok(m * m * sec * sec + m * tan * sec + 0.25 * r * sec * l1 - 0.5 * l2 + l1 * tan
        - m * r * sec * l1)
}

/// `ξ(x) = 3m sec x tan x + (m²+2) sec²x - 4 - ε² sec⁴x`.
pub fn scarf_form_constant(m: i32, epsilon: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    let m = m as f64;
    let sec = 1.0 / x.cos();
    let sec2 = sec * sec;
    Ok(3.0 * m * sec * x.tan() + (m * m + 2.0) * sec2 - 4.0 - epsilon * epsilon * sec2 * sec2)
}

/// Coefficient `g = ½(2m + R - 4mR)` of `sec x tan x` in the velocity-profile
/// Scarf potential. `R` enters as a pure number (the radius in the chosen
/// length unit).
pub fn scarf_pdfv_coupling(params: &CatenoidParams, m: i32) -> f64 {
    let (m, r) = (m as f64, params.radius());
    0.5 * (2.0 * m + r - 4.0 * m * r)
}

/// `-1 + (m²-1) sec²x + ½(2m + R - 4mR) sec x tan x`.
pub fn scarf_form_pdfv(params: &CatenoidParams, m: i32, x: f64) -> Result<f64> {
    check_x(x)?;
    let mf = m as f64;
    let sec = 1.0 / x.cos();
    Ok(-1.0 + (mf * mf - 1.0) * sec * sec + scarf_pdfv_coupling(params, m) * sec * x.tan())
}

/// `m² sec²x + m tan x sec x`.
pub fn transformed_partner_potential(m: i32, x: f64) -> Result<f64> {
    check_x(x)?;
    let m = m as f64;
    let sec = 1.0 / x.cos();
    Ok(m * m * sec * sec + m * x.tan() * sec)
}

/// The two r-space potentials: `V₁` keeps `-ε²/(1-r²)²`, `V₂` replaces it by
/// its value `-ε²` at the throat.
pub fn v1_v2_r_forms(m: i32, epsilon: f64, r: f64) -> Result<(f64, f64)> {
    check_r(r)?;
    let m = m as f64;
    let w = 1.0 - r * r;
    let e2 = epsilon * epsilon;
    let common = (r * r - 2.0) / (4.0 * w) + 3.0 * m * r / w + (m * m + 2.0) / w - 4.0;
    Ok((common - e2 / (w * w), common - e2))
}
