//! Closed-form spectra and eigenfunctions.
//!
//! Every square root of a quantity that can go negative is carried as a
//! [`Radical`], so a complex intermediate shows up as an invalid
//! [`EnergyLevel`] naming the offending radicand instead of as a silent NaN.
//!
//! Where a printed closed form and the equation it is meant to solve
//! disagree, both are available. The variant that satisfies the equation is
//! the default (`Corrected`, `Chain`, `Derived`), and the printed one stays
//! addressable for comparison.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::CatenoidParams;
use crate::numeric::{self, Grid, TridiagonalOperator, WavefunctionSamples};
use crate::potentials::{self, check_r, check_x, scarf_pdfv_coupling};
use crate::specfun::{self, JacobiParams};
use crate::susy::{self, FactorizedSystem, LadderDirection, ScarfSuperpotential};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub m: i32,
}

impl QuantumNumbers {
    pub fn new(n: u32, m: i32) -> Self {
        Self { n, m }
    }
}

/// How square roots of negative radicands are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RealnessPolicy {
    /// Negative radicand means no real value.
    #[default]
    Strict,
    /// Use `√|radicand|` and mark the result as regularized. Only for
    /// reproducing figures at parameters that are otherwise invalid.
    AbsoluteValue,
}

/// `√radicand`, or its absence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Radical {
    pub radicand: f64,
    pub value: Option<f64>,
    pub regularized: bool,
}

impl Radical {
    pub fn new(radicand: f64, policy: RealnessPolicy) -> Self {
        match (radicand >= 0.0, policy) {
            (true, _) => Self {
                radicand,
                value: Some(radicand.sqrt()),
                regularized: false,
            },
            (false, RealnessPolicy::Strict) => Self {
                radicand,
                value: None,
                regularized: false,
            },
            (false, RealnessPolicy::AbsoluteValue) => Self {
                radicand,
                value: Some(radicand.abs().sqrt()),
                regularized: true,
            },
        }
    }

    pub fn strict(radicand: f64) -> Self {
        Self::new(radicand, RealnessPolicy::Strict)
    }

    fn complaint(&self, name: &str) -> Option<String> {
        if self.radicand >= 0.0 {
            None
        } else if self.regularized {
            Some(format!(
                "{name} = sqrt({}) is complex; replaced by sqrt(|{}|)",
                fmt_num(self.radicand),
                fmt_num(self.radicand)
            ))
        } else {
            Some(format!("{name} = sqrt({}) is complex", fmt_num(self.radicand)))
        }
    }
}

fn fmt_num(x: f64) -> String {
    if x == x.round() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// An energy (or dimensionless energy) level known up to sign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyLevel {
    /// `|E|`; the level is `±value`. `None` when invalid.
    pub value: Option<f64>,
    /// The radicand under the outermost square root.
    pub radicand: Option<f64>,
    pub valid: bool,
    pub reason: Option<String>,
}

impl EnergyLevel {
    fn from_radicand(radicand: f64, scale: f64) -> Self {
        if radicand >= 0.0 {
            Self {
                value: Some(scale * radicand.sqrt()),
                radicand: Some(radicand),
                valid: true,
                reason: None,
            }
        } else {
            Self {
                value: None,
                radicand: Some(radicand),
                valid: false,
                reason: Some(format!("energy radicand {radicand} < 0")),
            }
        }
    }

    fn invalid(reason: String, radicand: Option<f64>) -> Self {
        Self {
            value: None,
            radicand,
            valid: false,
            reason: Some(reason),
        }
    }

    fn regularized(mut self, notes: Vec<String>) -> Self {
        if !notes.is_empty() {
            self.valid = false;
            let mut all = notes;
            all.extend(self.reason.take());
            self.reason = Some(all.join("; "));
        }
        self
    }
}

// ---------------------------------------------------------------------------
// Constant Fermi velocity: the Jacobi branch

/// `a = ¼√(7+12m+4m²)`, `b = ¼√(7-12m+4m²)`, `M₁ = √(7+4m(m-3))`,
/// `M₂ = √(7+4m(m+3))`, so `M₂ = 4a` and `M₁ = 4b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JacobiBranchParams {
    pub m: i32,
    pub a: Radical,
    pub b: Radical,
    pub m1: Radical,
    pub m2: Radical,
}

impl JacobiBranchParams {
    pub fn new(m: i32, policy: RealnessPolicy) -> Self {
        let mf = m as f64;
        let plus = 7.0 + 12.0 * mf + 4.0 * mf * mf;
        let minus = 7.0 - 12.0 * mf + 4.0 * mf * mf;
        Self {
            m,
            a: Radical::new(plus / 16.0, policy),
            b: Radical::new(minus / 16.0, policy),
            m1: Radical::new(7.0 + 4.0 * mf * (mf - 3.0), policy),
            m2: Radical::new(7.0 + 4.0 * mf * (mf + 3.0), policy),
        }
    }

    /// Real `(a, b)` if available under the chosen policy.
    pub fn ab(&self) -> Option<(f64, f64)> {
        Some((self.a.value?, self.b.value?))
    }

    /// Real `(M₁, M₂)` if available under the chosen policy.
    pub fn m12(&self) -> Option<(f64, f64)> {
        Some((self.m1.value?, self.m2.value?))
    }

    /// Jacobi parameters `(α, β) = (2a, 2b)`.
    pub fn alpha_beta(&self) -> Option<(f64, f64)> {
        self.ab().map(|(a, b)| (2.0 * a, 2.0 * b))
    }

    /// True when every parameter is real without regularization.
    pub fn is_real(&self) -> bool {
        [self.a, self.b, self.m1, self.m2]
            .iter()
            .all(|r| r.radicand >= 0.0)
    }

    fn complaints(&self) -> Vec<String> {
        [
            (self.m2, "M2"),
            (self.m1, "M1"),
            (self.a, "a"),
            (self.b, "b"),
        ]
        .iter()
        .filter_map(|(r, name)| r.complaint(name))
        .collect()
    }
}

pub fn jacobi_branch_params(m: i32) -> JacobiBranchParams {
    JacobiBranchParams::new(m, RealnessPolicy::Strict)
}

/// Which radicand to use for the Jacobi-branch energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicandForm {
    /// Follows from matching the transformed equation to the Jacobi equation:
    /// `-27 + 4m² + 2(M₁+M₂) + M₁M₂ + 8n² + 4n(M₁+M₂) + 8n`.
    #[default]
    Corrected,
    /// The same without the `8n` term. Agrees with the matching only at
    /// `n = 0`.
    Printed,
}

/// `8ε²` for level `n`, whichever form is requested.
pub fn constant_case_radicand(bp: &JacobiBranchParams, n: u32, form: RadicandForm) -> Option<f64> {
    let (m1, m2) = bp.m12()?;
    let (m, n) = (bp.m as f64, n as f64);
    let printed = -27.0 + 4.0 * m * m + 2.0 * (m1 + m2) + m1 * m2 + 8.0 * n * n + 4.0 * n * (m1 + m2);
    Some(match form {
        RadicandForm::Corrected => printed + 8.0 * n,
        RadicandForm::Printed => printed,
    })
}

/// `ε² = (E R / v_F)²` of level `n`, possibly negative.
pub fn constant_case_epsilon2(bp: &JacobiBranchParams, n: u32) -> Option<f64> {
    constant_case_radicand(bp, n, RadicandForm::Corrected).map(|r| r / 8.0)
}

/// `|E| = v_F/(2√2 R) · √radicand` with full validity bookkeeping.
pub fn energy_constant_case(params: &CatenoidParams, vf: f64, qn: QuantumNumbers) -> EnergyLevel {
    energy_constant_case_with(params, vf, qn, RealnessPolicy::Strict, RadicandForm::Corrected)
}

pub fn energy_constant_case_with(
    params: &CatenoidParams,
    vf: f64,
    qn: QuantumNumbers,
    policy: RealnessPolicy,
    form: RadicandForm,
) -> EnergyLevel {
    let bp = JacobiBranchParams::new(qn.m, policy);
    let complaints = bp.complaints();
    match constant_case_radicand(&bp, qn.n, form) {
        None => EnergyLevel::invalid(complaints.join("; "), None),
        Some(rad) => {
            let scale = vf / (2.0 * SQRT_2 * params.radius());
            EnergyLevel::from_radicand(rad, scale).regularized(complaints)
        }
    }
}

/// Exponents of the u-space eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentVariant {
    /// `(1-t)^{a-3/4} (1+t)^{b-3/4}`: what the substitution chain
    /// `χ = sec²x · (1-r²)^{1/4} · (1+r)^b (1-r)^a P(r)` produces.
    #[default]
    Chain,
    /// `(1-t)^{a-1} (1+t)^{b-1}` as printed.
    Printed,
}

/// `1 - u/√(R²+u²)` without cancellation for large positive `u`.
fn one_minus_t(params: &CatenoidParams, u: f64) -> f64 {
    let rho = params.rho(u);
    if u > 0.0 {
        params.radius() * params.radius() / (rho * (rho + u))
    } else {
        1.0 - u / rho
    }
}

fn one_plus_t(params: &CatenoidParams, u: f64) -> f64 {
    one_minus_t(params, -u)
}

/// A Jacobi-branch level `χ⁽¹⁾_n` of the constant-velocity problem with
/// `N₁ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantCaseState {
    pub params: CatenoidParams,
    pub qn: QuantumNumbers,
    pub branch: JacobiBranchParams,
    pub variant: ExponentVariant,
    a: f64,
    b: f64,
    jacobi: JacobiParams,
}

impl ConstantCaseState {
    pub fn new(
        params: CatenoidParams,
        qn: QuantumNumbers,
        variant: ExponentVariant,
        policy: RealnessPolicy,
    ) -> Result<Self> {
        let branch = JacobiBranchParams::new(qn.m, policy);
        let (a, b) = branch.ab().ok_or_else(|| {
            Error::InvalidLevel(format!(
                "(n = {}, m = {}): {}",
                qn.n,
                qn.m,
                branch.complaints().join("; ")
            ))
        })?;
        let jacobi = JacobiParams::new(qn.n, 2.0 * a, 2.0 * b)?;
        Ok(Self {
            params,
            qn,
            branch,
            variant,
            a,
            b,
            jacobi,
        })
    }

    pub fn ab(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn jacobi(&self) -> JacobiParams {
        self.jacobi
    }

    /// `ε²` of this level (corrected radicand over 8).
    pub fn epsilon2(&self) -> f64 {
        constant_case_epsilon2(&self.branch, self.qn.n).unwrap_or(f64::NAN)
    }

    fn exponent_shift(&self) -> f64 {
        match self.variant {
            ExponentVariant::Chain => 0.75,
            ExponentVariant::Printed => 1.0,
        }
    }

    /// `χ⁽¹⁾_n(u)`.
    pub fn value(&self, u: f64) -> f64 {
        let t = u / self.params.rho(u);
        let k = self.exponent_shift();
        one_minus_t(&self.params, u).powf(self.a - k)
            * one_plus_t(&self.params, u).powf(self.b - k)
            * specfun::jacobi(self.jacobi, t.clamp(-1.0, 1.0)).unwrap_or(f64::NAN)
    }

    /// `(1+r)^b (1-r)^a P_n^{(2a,2b)}(r)`, the solution of the r-space
    /// equation with `ε²/(1-r²)²` frozen at `ε²`.
    pub fn r_solution(&self, r: f64) -> Result<f64> {
        check_r(r)?;
        Ok((1.0 + r).powf(self.b) * (1.0 - r).powf(self.a) * specfun::jacobi(self.jacobi, r)?)
    }

    /// Liouville form `z(x) = cos^{1/2}x · r_solution(sin x)`, an eigenfunction
    /// of [`constant_case_liouville_potential`] with eigenvalue `ε²`.
    pub fn liouville(&self, x: f64) -> Result<f64> {
        check_x(x)?;
        Ok(x.cos().sqrt() * self.r_solution(x.sin())?)
    }

    pub fn sample(&self, grid: Grid) -> WavefunctionSamples {
        WavefunctionSamples::from_fn(grid, |u| self.value(u))
    }

    /// Normalized with `du` on the (necessarily truncated) grid.
    pub fn sample_normalized(&self, grid: Grid) -> Result<WavefunctionSamples> {
        self.sample(grid).normalized(None)
    }
}

/// Potential of the Liouville normal form of the r-space equation
/// `-(1-r²)y'' + 2ry' + (Ṽ(r) - ε²) y = 0` under `r = sin x`,
/// `y = cos^{-1/2}x · z`: `-z'' + (Ṽ(sin x) - ¼ - ¼sec²x) z = ε² z`, with
/// `Ṽ(r) = (r²-2)/(4(1-r²)) + 3mr/(1-r²) + (m²+2)/(1-r²) - 4`.
pub fn constant_case_liouville_potential(m: i32, x: f64) -> Result<f64> {
    check_x(x)?;
    let (r, c) = (x.sin(), x.cos());
    let w = c * c;
    let mf = m as f64;
    let v = (r * r - 2.0) / (4.0 * w) + 3.0 * mf * r / w + (mf * mf + 2.0) / w - 4.0;
    Ok(v - 0.25 - 0.25 / w)
}

/// Discretized Liouville operator on a clipped x-grid, an independent
/// numeric route to the Jacobi-branch spectrum.
pub fn constant_case_liouville_operator(m: i32, grid: &Grid) -> Result<TridiagonalOperator> {
    numeric::discretize(
        |x| constant_case_liouville_potential(m, x).unwrap_or(f64::NAN),
        grid,
    )
}

/// Map a Liouville-form function `z(x)` back to the u-space `χ(u) = sec²x·z`.
pub fn liouville_to_u(z: f64, x: f64) -> f64 {
    z / (x.cos() * x.cos())
}

/// `χ⁽¹⁾_n` in the u-form with explicit `N₁ = 1`.
pub fn eigenfunction_constant_case(
    params: &CatenoidParams,
    qn: QuantumNumbers,
    variant: ExponentVariant,
    u: f64,
) -> Result<f64> {
    Ok(ConstantCaseState::new(*params, qn, variant, RealnessPolicy::Strict)?.value(u))
}

/// `χ⁽²⁾_n = A χ⁽¹⁾_{n+1} / √E_{n+1}` with `A = d/du + m/√(R²+u²)` and
/// `E_{n+1} = ε²_{n+1}/R²`, evaluated on `grid` and normalized there.
pub fn partner_eigenfunction_constant(
    params: &CatenoidParams,
    qn: QuantumNumbers,
    grid: Grid,
) -> Result<WavefunctionSamples> {
    let upper = QuantumNumbers::new(qn.n + 1, qn.m);
    let state = ConstantCaseState::new(*params, upper, ExponentVariant::Chain, RealnessPolicy::Strict)?;
    let e2 = state.epsilon2();
    if !(e2 > 0.0) {
        return Err(Error::ZeroMode(e2));
    }
    let energy = e2 / (params.radius() * params.radius());
    let sys = FactorizedSystem::new(potentials::CatenoidSuperpotential::new(*params, qn.m), grid)?;
    let f = state.sample(grid);
    susy::partner_map_state(&sys, LadderDirection::Lowering, &f, energy)?.normalized(None)
}

// ---------------------------------------------------------------------------
// Constant Fermi velocity: zero energy and the throat expansions

/// `N₁ [1 + e^{2ix}]² exp{-2i[x - m·arctan(e^{ix})]}`, which solves
/// `-χ̄'' + (3m sec x tan x + (m²+2) sec²x - 4) χ̄ = 0`.
pub fn zero_energy_solution(m: i32, n1: Complex64, x: f64) -> Result<Complex64> {
    check_x(x)?;
    let i = Complex64::i();
    let e = (i * x).exp();
    let bracket = Complex64::new(x, 0.0) - (m as f64) * e.atan();
    let one = Complex64::new(1.0, 0.0);
    Ok(n1 * (one + e * e).powi(2) * (-2.0 * i * bracket).exp())
}

/// `α = (10 + 5m² + 4ε²)/8`, the Hermite order of the throat expansion.
pub fn near_origin_alpha(m: i32, epsilon: f64) -> f64 {
    let m = m as f64;
    (10.0 + 5.0 * m * m + 4.0 * epsilon * epsilon) / 8.0
}

/// `ε = √(8n - 5(2+m²))/2`, the energy at which `α = n`.
pub fn near_origin_quantization(n: u32, m: i32) -> EnergyLevel {
    let m = m as f64;
    EnergyLevel::from_radicand(8.0 * n as f64 - 5.0 * (2.0 + m * m), 0.5)
}

/// `e^{-3mr/2} [c₁ H_α(3m/2 + r) + c₂ M(-α/2, 1/2, (3m/2 + r)²)]`, solving
/// `χ'' - 2rχ' + ((10 - 4m² + 4ε²)/4 - 3mr) χ = 0`. The Hermite term needs
/// an integer `α`; the expansion is meant for `|r| ≲ 0.2`.
pub fn near_origin_solution(m: i32, epsilon: f64, r: f64, c1: f64, c2: f64) -> Result<f64> {
    check_r(r)?;
    let alpha = near_origin_alpha(m, epsilon);
    let mf = m as f64;
    let z = 1.5 * mf + r;
    let mut sum = 0.0;
    if c1 != 0.0 {
        sum += c1 * specfun::hermite_real(alpha, z)?;
    }
    if c2 != 0.0 {
        sum += c2 * specfun::kummer_m(-0.5 * alpha, 0.5, z * z)?;
    }
    Ok((-1.5 * mf * r).exp() * sum)
}

// ---------------------------------------------------------------------------
// Constant Fermi velocity: the energy-dependent (parabolic cylinder) branch

/// `f² = -11 + 8m² - 12ε²`.
fn f_squared(m: i32, eps2: f64) -> f64 {
    let m = m as f64;
    -11.0 + 8.0 * m * m - 12.0 * eps2
}

/// Weber order `ν(ε²)` for `-Z'' + (3mr + (f²/4) r² - 7/2 + m²) Z = ε² Z`:
/// completing the square gives `ν = (ε² + 9m²/f² + 7/2 - m²)/f - 1/2`.
/// `None` when `f² ≤ 0`.
pub fn weber_order(m: i32, eps2: f64) -> Option<f64> {
    let f2 = f_squared(m, eps2);
    if !(f2 > 0.0) {
        return None;
    }
    let f = f2.sqrt();
    let mf = m as f64;
    Some((eps2 + 9.0 * mf * mf / f2 + 3.5 - mf * mf) / f - 0.5)
}

/// The printed quantization expression evaluated literally, minus `n`:
/// `(1/(2f³/4))·(-16m⁴ + (11+12ε²)(-7+f) - 8m²(-12-3ε²+f)) - n`.
pub fn printed_energy_dependent_objective(m: i32, eps2: f64, n: u32) -> Option<f64> {
    let f2 = f_squared(m, eps2);
    if !(f2 > 0.0) {
        return None;
    }
    let f = f2.sqrt();
    let mf = m as f64;
    let num = -16.0 * mf.powi(4) + (11.0 + 12.0 * eps2) * (-7.0 + f)
        - 8.0 * mf * mf * (-12.0 - 3.0 * eps2 + f);
    Some(num / (2.0 * f * f * f / 4.0) - n as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDependentSolution {
    pub m: i32,
    pub n: u32,
    pub epsilon2: f64,
    /// `|ν(ε²) - n|` at the returned root.
    pub objective_residual: f64,
    /// `Z_n(r) = D_n(ζ(r))` on `|r| ≤ 0.5`.
    pub z: WavefunctionSamples,
}

impl EnergyDependentSolution {
    pub fn f(&self) -> f64 {
        f_squared(self.m, self.epsilon2).sqrt()
    }

    /// `ζ(r) = (6m + (8m² - 11 - 12ε²) r) / f^{3/2}`.
    pub fn zeta(&self, r: f64) -> f64 {
        let f = self.f();
        (6.0 * self.m as f64 + f * f * r) / f.powf(1.5)
    }

    pub fn z_value(&self, r: f64) -> Result<f64> {
        specfun::parabolic_cylinder_d(self.n as f64, self.zeta(r))
    }

    /// `U₁(r) = 3mr + (-11/4 + 2m² - 3ε²) r² - 7/2 + m²`.
    pub fn potential(&self, r: f64) -> f64 {
        energy_dependent_potential(self.m, self.epsilon2, r)
    }
}

pub fn energy_dependent_potential(m: i32, eps2: f64, r: f64) -> f64 {
    let m = m as f64;
    3.0 * m * r + (-2.75 + 2.0 * m * m - 3.0 * eps2) * r * r - 3.5 + m * m
}

const SCAN_STEPS: usize = 200;

/// Lowest `ε² ∈ [0, (8m²-11)/12)` with `ν(ε²) = n`, found by scanning the
/// bracket in 200 steps and bisecting the first sign change to `1e-12`.
pub fn energy_dependent_branch(m: i32, n: u32) -> Result<EnergyDependentSolution> {
    let mf = m as f64;
    let top = (8.0 * mf * mf - 11.0) / 12.0;
    if !(top > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "m = {m}: 8m² > 11 + 12ε² fails already at ε² = 0"
        )));
    }
    let objective = |e2: f64| weber_order(m, e2).map_or(f64::NAN, |nu| nu - n as f64);
    let mut samples: Vec<f64> = (0..SCAN_STEPS).map(|k| top * k as f64 / SCAN_STEPS as f64).collect();
    samples.push(top * (1.0 - 1e-9));
    let bracket = samples
        .windows(2)
        .find(|w| objective(w[0]) * objective(w[1]) <= 0.0)
        .ok_or(Error::NoSignChange {
            lo: 0.0,
            hi: top,
        })?;
    let epsilon2 = numeric::solve_bracketed(objective, bracket[0], bracket[1], 1e-12)?;
    let residual = objective(epsilon2).abs();
    let grid = Grid::new(-0.5, 0.5, 1001)?;
    let mut sol = EnergyDependentSolution {
        m,
        n,
        epsilon2,
        objective_residual: residual,
        z: WavefunctionSamples::new(grid, vec![0.0; grid.count()])?,
    };
    sol.z = WavefunctionSamples::try_from_fn(grid, |r| sol.z_value(r))?;
    Ok(sol)
}

// ---------------------------------------------------------------------------
// Position-dependent Fermi velocity: the Scarf-I branch

/// The printed parameter formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedScarf {
    /// Inner radicand of `c`.
    pub c_inner: Radical,
    pub c: Radical,
    /// The radicand under the square root inside `A`.
    pub a_inner: Radical,
    pub denominator: f64,
    pub a: Option<f64>,
    /// `B = c/(2√2)`.
    pub b: Option<f64>,
}

/// Parameters of `-1 + (m²-1) sec²x + g sec x tan x`, `g = ½(2m+R-4mR)`,
/// in both the printed form and the values that actually match the potential
/// to `(A²+B²-A) sec²x - B(2A-1) sec x tan x + const`.
///
/// Matching gives `A = ½ + s`, `B = -g/(2s)` with
/// `s² = [(4m²-3) + √((4m²-3)² - 16g²)]/8`. The printed `c` equals `2√2·s`,
/// so the printed `B` is the matched `A - ½`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScarfParams {
    pub m: i32,
    pub radius: f64,
    pub lambda: f64,
    pub coupling: f64,
    pub printed: PrintedScarf,
    pub matching: Radical,
    pub matched_a: Option<f64>,
    pub matched_b: Option<f64>,
}

impl ScarfParams {
    pub fn matched(&self) -> Option<(f64, f64)> {
        Some((self.matched_a?, self.matched_b?))
    }

    /// `(A - B - ½, A + B - ½)`.
    pub fn jacobi_exponents(&self) -> Option<(f64, f64)> {
        self.matched().map(|(a, b)| (a - b - 0.5, a + b - 0.5))
    }

    /// Both Jacobi exponents above `-1`.
    pub fn is_classical(&self) -> bool {
        self.jacobi_exponents()
            .is_some_and(|(al, be)| al > -1.0 && be > -1.0)
    }

    /// The factorizing superpotential in the `exp(-∫W)` convention,
    /// `A tan x - B sec x`.
    pub fn superpotential(&self) -> Option<ScarfSuperpotential> {
        self.matched().map(|(a, b)| ScarfSuperpotential { a, b })
    }

    fn require(&self) -> Result<(f64, f64)> {
        self.matched().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "Scarf matching has no real solution for m = {} (discriminant {})",
                self.m, self.matching.radicand
            ))
        })
    }

    fn require_classical(&self) -> Result<(f64, f64, f64, f64)> {
        let (a, b) = self.require()?;
        let (al, be) = (a - b - 0.5, a + b - 0.5);
        if !(al > -1.0 && be > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi exponents ({al}, {be}) must exceed -1"
            )));
        }
        Ok((a, b, al, be))
    }
}

pub fn scarf_params_pdfv(params: &CatenoidParams, m: i32, lambda: f64) -> Result<ScarfParams> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    let (mf, r) = (m as f64, params.radius());
    let denominator = 8.0 * (-r + mf * (4.0 * r - 2.0));
    if denominator == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "denominator 8(-R + m(4R-2)) vanishes at m = {m}, R = {r}"
        )));
    }
    let c_inner = Radical::strict(
        (-3.0 + 4.0 * mf * (1.0 + mf - 2.0 * r) + 2.0 * r)
            * (-3.0 - 2.0 * r + 4.0 * mf * (-1.0 + mf + 2.0 * r)),
    );
    let c = match c_inner.value {
        Some(v) => Radical::strict(-3.0 + 4.0 * mf * mf + v),
        None => Radical::strict(f64::NAN),
    };
    let a_inner = Radical::strict(
        -3.0 + 4.0 * mf * mf * (1.0 + mf - 2.0 * r) * (-3.0 - 2.0 * r + 4.0 * mf * (-1.0 + mf + 2.0 * r)),
    );
    let printed_a = match (c.value, a_inner.value) {
        (Some(c), Some(q)) => Some(
            (-4.0 * r + 8.0 * mf * (2.0 * r - 1.0) + 4.0 * SQRT_2 * mf * mf * c
                - SQRT_2 * (3.0 + c * q))
                / denominator,
        ),
        _ => None,
    };
    let printed = PrintedScarf {
        c_inner,
        c,
        a_inner,
        denominator,
        a: printed_a,
        b: c.value.map(|c| c / (2.0 * SQRT_2)),
    };

    let g = scarf_pdfv_coupling(params, m);
    let k = 4.0 * mf * mf - 3.0;
    let matching = Radical::strict(k * k - 16.0 * g * g);
    let s = matching
        .value
        .map(|d| (k + d) / 8.0)
        .filter(|s2| *s2 > 0.0)
        .map(f64::sqrt);
    Ok(ScarfParams {
        m,
        radius: r,
        lambda,
        coupling: g,
        printed,
        matching,
        matched_a: s.map(|s| 0.5 + s),
        matched_b: s.map(|s| -g / (2.0 * s)),
    })
}

/// `|E| = (λ/R)√((A+n)² - 1)` for a given `A`.
pub fn scarf_energy(a: f64, lambda: f64, radius: f64, n: u32) -> EnergyLevel {
    let an = a + n as f64;
    EnergyLevel::from_radicand(an * an - 1.0, lambda / radius)
}

/// Energy of level `n` using the matched `A`.
pub fn energy_pdfv(sp: &ScarfParams, qn: QuantumNumbers) -> EnergyLevel {
    match sp.matched_a {
        Some(a) => scarf_energy(a, sp.lambda, sp.radius, qn.n),
        None => EnergyLevel::invalid(
            format!(
                "Scarf matching discriminant {} has no real positive root",
                sp.matching.radicand
            ),
            None,
        ),
    }
}

/// x-space level `(1 - sin x)^{(A-B)/2} (1 + sin x)^{(A+B)/2} P_n^{(A-B-½, A+B-½)}(sin x)`,
/// unnormalized.
pub fn scarf_state_x(sp: &ScarfParams, n: u32, x: f64) -> Result<f64> {
    check_x(x)?;
    let (a, b, al, be) = sp.require_classical()?;
    let s = x.sin();
    Ok((1.0 - s).powf(0.5 * (a - b))
        * (1.0 + s).powf(0.5 * (a + b))
        * specfun::jacobi(JacobiParams::new(n, al, be)?, s)?)
}

/// `∫ (1-x)^α (1+x)^β [P_n^{(α,β)}]² dx` over `[-1, 1]`.
pub fn jacobi_norm_squared(n: u32, alpha: f64, beta: f64) -> Result<f64> {
    let nf = n as f64;
    let lg = |x| specfun::log_gamma(x);
    let log = (alpha + beta + 1.0) * std::f64::consts::LN_2 + lg(nf + alpha + 1.0)? + lg(nf + beta + 1.0)?
        - (2.0 * nf + alpha + beta + 1.0).ln()
        - lg(nf + alpha + beta + 1.0)?
        - lg(nf + 1.0)?;
    Ok(log.exp())
}

/// `N₁` making `∫ ω_n(u)² / v_F(u)² du = 1` on the whole line. With
/// `u = R tan x` and `v_F = λ sec²x` the integral is `(R/λ²)∫ ω₁(x)² dx`,
/// which is a Jacobi norm in `sin x`.
pub fn pdfv_normalization(sp: &ScarfParams, n: u32) -> Result<f64> {
    let (_, _, al, be) = sp.require_classical()?;
    let integral = sp.radius / (sp.lambda * sp.lambda) * jacobi_norm_squared(n, al, be)?;
    Ok(1.0 / integral.sqrt())
}

/// `ω_n(u) = N₁ √(1+u²/R²) (1-t)^{(A-B)/2} (1+t)^{(A+B)/2} P_n(t)`,
/// `t = u/√(R²+u²)`, normalized with the weight `1/v_F(u)²`.
pub fn eigenfunction_pdfv(sp: &ScarfParams, qn: QuantumNumbers, u: f64) -> Result<f64> {
    let (a, b, al, be) = sp.require_classical()?;
    let p = CatenoidParams::new(sp.radius)?;
    let rho = p.rho(u);
    let t = (u / rho).clamp(-1.0, 1.0);
    let n1 = pdfv_normalization(sp, qn.n)?;
    Ok(n1 * rho / sp.radius
        * one_minus_t(&p, u).powf(0.5 * (a - b))
        * one_plus_t(&p, u).powf(0.5 * (a + b))
        * specfun::jacobi(JacobiParams::new(qn.n, al, be)?, t)?)
}

/// The printed superpotential `-A tan x + B sec x` (matched `A`, `B`). It
/// belongs to the `exp(+∫W)` convention: `W² + W'` reproduces the Scarf
/// potential up to the constant `1 - A²`.
pub fn superpotential_pdfv(sp: &ScarfParams, x: f64) -> Result<f64> {
    check_x(x)?;
    let (a, b) = sp.require()?;
    Ok((-a * x.sin() + b) / x.cos())
}

/// Ways to obtain the partner of a Scarf level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartnerForm {
    /// Shape invariance (`A → A+1`): `ψ₀(x) cos x · P_n^{(α+1, β+1)}(sin x)`.
    Derived,
    /// The lowering operator applied numerically to level `n+1`.
    Ladder,
    /// The printed x-space closed form.
    PrintedX,
    /// The printed u-space closed form (singular at `u = 0`).
    PrintedU,
}

fn printed_partner_bracket(a: f64, b: f64, n: u32, s: f64, lead: f64) -> Result<f64> {
    let p1 = JacobiParams::new(n, 0.5 + a + b, 0.5 + a - b)?;
    let p2 = JacobiParams::new(n + 1, -0.5 + a + b, -0.5 + a - b)?;
    Ok((1.0 + 2.0 * a + n as f64) * lead * specfun::jacobi(p1, s)?
        - 2.0 * specfun::jacobi(p2, s)? * (a - b + 2.0 * a * s))
}

/// Closed-form partner level `n` as an x-space function (the factor `sec x`
/// of the u-form removed), with unit prefactor.
pub fn partner_closed_form_x(sp: &ScarfParams, n: u32, form: PartnerForm, x: f64) -> Result<f64> {
    check_x(x)?;
    let (a, b, al, be) = sp.require_classical()?;
    let (s, c) = x.sin_cos();
    match form {
        PartnerForm::Derived => Ok((1.0 - s).powf(0.5 * (a - b))
            * (1.0 + s).powf(0.5 * (a + b))
            * c
            * specfun::jacobi(JacobiParams::new(n, al + 1.0, be + 1.0)?, s)?),
        PartnerForm::PrintedX => {
            let (ch, sh) = ((0.5 * x).cos(), (0.5 * x).sin());
            Ok((ch - sh) * (1.0 - s).powf(a - 1.0) / (2.0 * (ch + sh))
                * printed_partner_bracket(a, b, n, s, c * c)?)
        }
        PartnerForm::PrintedU => {
            let u = sp.radius * x.tan();
            Ok(c * partner_printed_u(sp, n, u)?)
        }
        PartnerForm::Ladder => Err(Error::InvalidParameter(
            "the ladder form exists only on a grid".into(),
        )),
    }
}

/// The printed u-space partner with `N₂ = 1`, including its `1/E_{n+1}`.
pub fn partner_printed_u(sp: &ScarfParams, n: u32, u: f64) -> Result<f64> {
    let (a, b, _, _) = sp.require_classical()?;
    let p = CatenoidParams::new(sp.radius)?;
    let rho = p.rho(u);
    let ratio = sp.radius / rho;
    let gap = 1.0 - ratio;
    if gap <= 0.0 {
        return Err(Error::OutOfDomain {
            value: u,
            domain: "u != 0 (printed partner form is singular at the throat)",
        });
    }
    let e = scarf_energy(a, sp.lambda, sp.radius, n + 1)
        .value
        .ok_or_else(|| Error::InvalidLevel(format!("level {} has no real energy", n + 1)))?;
    let t = (u / rho).clamp(-1.0, 1.0);
    Ok(rho / sp.radius * (1.0 + ratio).sqrt() * one_minus_t(&p, u).powf(a - 1.0)
        / (2.0 * gap.sqrt())
        / e
        * printed_partner_bracket(a, b, n, t, ratio)?)
}

/// Partner level `n` sampled on an x-grid, normalized so that
/// `∫ f² dx = λ²/R` (the x-space image of unit `1/v_F²`-weighted norm).
pub fn partner_eigenfunction_pdfv(
    sp: &ScarfParams,
    qn: QuantumNumbers,
    form: PartnerForm,
    grid: Grid,
) -> Result<WavefunctionSamples> {
    let (a, _) = sp.require()?;
    let raw = match form {
        PartnerForm::Ladder => {
            let w = sp.superpotential().ok_or(Error::ZeroNorm)?;
            let sys = FactorizedSystem::new(w, grid)?;
            let upper = WavefunctionSamples::try_from_fn(grid, |x| scarf_state_x(sp, qn.n + 1, x))?;
            let an = a + qn.n as f64 + 1.0;
            susy::partner_map_state(&sys, LadderDirection::Lowering, &upper, an * an - a * a)?
        }
        _ => WavefunctionSamples::try_from_fn(grid, |x| partner_closed_form_x(sp, qn.n, form, x))?,
    };
    let mut out = raw.normalized(None)?;
    let scale = sp.lambda / sp.radius.sqrt();
    out.values.iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

/// Map an x-space Scarf function to u-space, `ω(u) = sec x · ω₁(x)`.
pub fn scarf_x_to_u(value: f64, x: f64) -> f64 {
    value / x.cos()
}

/// The clipped x-grid used for Scarf problems.
pub fn scarf_x_grid(count: usize) -> Result<Grid> {
    numeric::x_grid(count)
}

/// `x = atan(u/R)`.
pub fn x_of_u(params: &CatenoidParams, u: f64) -> f64 {
    (u / params.radius()).atan()
}

/// Distance of `x` from the nearer endpoint of `(-π/2, π/2)`.
pub fn x_margin(x: f64) -> f64 {
    FRAC_PI_2 - x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cat(r: f64) -> CatenoidParams {
        CatenoidParams::new(r).unwrap()
    }

    #[test]
    fn branch_parameters() {
        let p = jacobi_branch_params(3);
        assert_relative_eq!(p.a.value.unwrap(), 79f64.sqrt() / 4.0, epsilon = 1e-15);
        assert_relative_eq!(p.b.value.unwrap(), 7f64.sqrt() / 4.0, epsilon = 1e-15);
        assert_relative_eq!(p.m1.value.unwrap(), 7f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(p.m2.value.unwrap(), 79f64.sqrt(), epsilon = 1e-15);
        let p = jacobi_branch_params(0);
        assert_eq!(p.a, p.b);
        assert_eq!(p.m1, p.m2);
        let p = jacobi_branch_params(-2);
        assert_eq!(p.m2.radicand, -1.0);
        assert!(p.m2.value.is_none() && !p.is_real());
    }

    #[test]
    fn branch_parameters_swap_under_m_reflection() {
        for m in -6..=6 {
            let (p, q) = (jacobi_branch_params(m), jacobi_branch_params(-m));
            assert_eq!(p.a, q.b);
            assert_eq!(p.m1, q.m2);
        }
    }

    #[test]
    fn constant_case_energies() {
        let e = energy_constant_case(&cat(1.0), 1.0, QuantumNumbers::new(0, 3));
        assert!(e.valid);
        assert_relative_eq!(e.radicand.unwrap(), 55.584, epsilon = 1e-3);
        assert_relative_eq!(e.value.unwrap(), 2.636, epsilon = 1e-3);

        let e = energy_constant_case(&cat(1.0), 1.0, QuantumNumbers::new(1, -2));
        assert!(!e.valid);
        assert!(e.reason.unwrap().contains("M2 = sqrt(-1) is complex"));

        let e = energy_constant_case(&cat(1.0), 1.0, QuantumNumbers::new(0, 0));
        assert!(!e.valid);
        assert_relative_eq!(e.radicand.unwrap(), -20.0 + 4.0 * 7f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn printed_radicand_lacks_the_linear_term() {
        let bp = jacobi_branch_params(3);
        for n in 0..5 {
            let c = constant_case_radicand(&bp, n, RadicandForm::Corrected).unwrap();
            let p = constant_case_radicand(&bp, n, RadicandForm::Printed).unwrap();
            assert_relative_eq!(c - p, 8.0 * n as f64, epsilon = 1e-12);
        }
    }

    #[test]
    fn regularized_levels_stay_flagged() {
        let e = energy_constant_case_with(
            &cat(1.0),
            1.0,
            QuantumNumbers::new(3, -2),
            RealnessPolicy::AbsoluteValue,
            RadicandForm::Corrected,
        );
        assert!(!e.valid);
        assert!(e.value.is_some());
        assert!(e.reason.unwrap().contains("replaced by sqrt(|-1|)"));
    }

    #[test]
    fn chain_state_at_the_throat() {
        let s = ConstantCaseState::new(cat(1.0), QuantumNumbers::new(0, 3), ExponentVariant::Chain, RealnessPolicy::Strict).unwrap();
        assert_eq!(s.value(0.0), 1.0);
        assert!(eigenfunction_constant_case(&cat(1.0), QuantumNumbers::new(0, 2), ExponentVariant::Chain, 0.0).is_err());
    }

    #[test]
    fn chain_and_printed_differ_by_the_metric_factor() {
        // (1-t²)^{1/4} = cos^{1/2} x = (R/√(R²+u²))^{1/2}
        let p = cat(1.4);
        let qn = QuantumNumbers::new(2, 3);
        let c = ConstantCaseState::new(p, qn, ExponentVariant::Chain, RealnessPolicy::Strict).unwrap();
        let q = ConstantCaseState::new(p, qn, ExponentVariant::Printed, RealnessPolicy::Strict).unwrap();
        for u in [-7.0, -0.3, 0.9, 12.0] {
            let w = (p.radius() / p.rho(u)).sqrt();
            assert_relative_eq!(q.value(u) * w, c.value(u), max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_energy_at_origin() {
        let v = zero_energy_solution(0, Complex64::new(1.0, 0.0), 0.0).unwrap();
        assert_relative_eq!(v.re, 4.0, epsilon = 1e-14);
        assert!(v.im.abs() < 1e-14);
        assert!(zero_energy_solution(1, Complex64::new(1.0, 0.0), FRAC_PI_2).is_err());
    }

    #[test]
    fn near_origin_values() {
        let e = near_origin_quantization(2, 1);
        assert_relative_eq!(e.value.unwrap(), 0.5);
        assert!(!near_origin_quantization(1, 1).valid);
        assert_relative_eq!(near_origin_quantization(5, 2).value.unwrap(), 10f64.sqrt() / 2.0);
        assert_relative_eq!(near_origin_alpha(1, 0.5), 2.0);

        // m = 0 with α = 2 needs ε² = 3/2.
        let eps = 1.5f64.sqrt();
        assert_relative_eq!(near_origin_solution(0, eps, 0.0, 1.0, 0.0).unwrap(), -2.0, epsilon = 1e-12);
        assert_eq!(near_origin_solution(0, 0.3, 0.0, 0.0, 1.0).unwrap(), 1.0);
        assert!(near_origin_solution(1, 0.3, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn weber_order_matches_the_rearranged_printed_numerator() {
        // ν = num/(2f³) + ε²/f is an algebraic identity with the numerator of
        // the printed expression.
        for m in [2, 3, -4] {
            for e2 in [0.0, 0.3, 1.1] {
                let f = f_squared(m, e2).sqrt();
                let mf = m as f64;
                let num = -16.0 * mf.powi(4) + (11.0 + 12.0 * e2) * (-7.0 + f)
                    - 8.0 * mf * mf * (-12.0 - 3.0 * e2 + f);
                assert_relative_eq!(
                    weber_order(m, e2).unwrap(),
                    num / (2.0 * f * f * f) + e2 / f,
                    max_relative = 1e-12
                );
            }
        }
        assert!(weber_order(1, 0.0).is_none());
    }

    #[test]
    fn energy_dependent_bracket() {
        assert!(energy_dependent_branch(1, 0).is_err());
        let s = energy_dependent_branch(2, 0).unwrap();
        assert!(s.epsilon2 >= 0.0 && s.epsilon2 < 21.0 / 12.0);
        assert!(s.objective_residual < 1e-10);
    }

    #[test]
    fn scarf_printed_parameters() {
        let sp = scarf_params_pdfv(&cat(1.0), 2, 1.0).unwrap();
        assert_relative_eq!(sp.printed.c.value.unwrap(), (13.0 + 133f64.sqrt()).sqrt(), epsilon = 1e-12);
        assert_relative_eq!(sp.printed.c.value.unwrap(), 4.953, epsilon = 1e-3);
        assert_relative_eq!(sp.printed.b.unwrap(), 1.751, epsilon = 1e-3);
        assert_relative_eq!(sp.printed.a.unwrap(), -0.071, epsilon = 1e-3);
        assert_relative_eq!(sp.matched_a.unwrap(), 0.5 + sp.printed.b.unwrap(), epsilon = 1e-12);
        assert_relative_eq!(sp.matched_a.unwrap(), 2.251_162_563_651_315_7, epsilon = 1e-12);
        assert_relative_eq!(sp.matched_b.unwrap(), 0.428_286_908_119_020_76, epsilon = 1e-12);
        assert!(sp.is_classical());

        let sp0 = scarf_params_pdfv(&cat(1.0), 0, 1.0).unwrap();
        assert_eq!(sp0.printed.denominator, -8.0);
        assert!(sp0.printed.c.value.is_none());
    }

    #[test]
    fn scarf_energy_examples() {
        assert!(!scarf_energy(-0.071, 1.0, 1.0, 0).valid);
        assert_relative_eq!(scarf_energy(-0.071, 1.0, 1.0, 2).value.unwrap(), 1.65, epsilon = 5e-3);
        assert_eq!(scarf_energy(0.25, 2.0, 1.0, 0).radicand.unwrap(), 0.25 * 0.25 - 1.0);
        assert_eq!(scarf_energy(-2.0, 1.0, 1.0, 3).value.unwrap(), 0.0);
    }

    #[test]
    fn jacobi_norm_matches_legendre() {
        for n in 0..5 {
            assert_relative_eq!(jacobi_norm_squared(n, 0.0, 0.0).unwrap(), 2.0 / (2.0 * n as f64 + 1.0), max_relative = 1e-13);
        }
    }

    #[test]
    fn printed_superpotential() {
        let sp = scarf_params_pdfv(&cat(1.0), 2, 1.0).unwrap();
        let (a, b) = sp.matched().unwrap();
        assert_relative_eq!(superpotential_pdfv(&sp, 0.0).unwrap(), b);
        let x = 0.4;
        assert_relative_eq!(superpotential_pdfv(&sp, -x).unwrap(), a * x.tan() + b / x.cos(), epsilon = 1e-14);
    }
}
