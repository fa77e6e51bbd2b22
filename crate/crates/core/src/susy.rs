//! SUSY-QM factorization on a grid.
//!
//! Conventions: `A = d/du + W`, `A† = -d/du + W`, `H₁ = A†A = -d² + W² - W'`,
//! `H₂ = AA† = -d² + W² + W'`, and the zero mode `ψ₀ = exp(-∫W)` with
//! `Aψ₀ = 0`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::CatenoidParams;
use crate::numeric::{self, Grid, WavefunctionSamples};
use crate::potentials::{CatenoidSuperpotential, Superpotential};

/// `W(u) = k u`; `k = 1` is the harmonic oscillator pair `u² ∓ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearSuperpotential {
    pub slope: f64,
}

impl Superpotential for LinearSuperpotential {
    fn value(&self, u: f64) -> f64 {
        self.slope * u
    }
    fn derivative(&self, _u: f64) -> f64 {
        self.slope
    }
    fn antiderivative(&self, u: f64) -> Option<f64> {
        Some(0.5 * self.slope * u * u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantSuperpotential(pub f64);

impl Superpotential for ConstantSuperpotential {
    fn value(&self, _u: f64) -> f64 {
        self.0
    }
    fn derivative(&self, _u: f64) -> f64 {
        0.0
    }
    fn antiderivative(&self, u: f64) -> Option<f64> {
        Some(self.0 * u)
    }
}

/// `W = 0`: free particle, `H₁ = H₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroSuperpotential;

impl Superpotential for ZeroSuperpotential {
    fn value(&self, _u: f64) -> f64 {
        0.0
    }
    fn derivative(&self, _u: f64) -> f64 {
        0.0
    }
    fn antiderivative(&self, _u: f64) -> Option<f64> {
        Some(0.0)
    }
}

/// Trigonometric Scarf-I superpotential `W(x) = A tan x - B sec x` on
/// `(-π/2, π/2)`.
///
/// `W² - W' = (A²+B²-A) sec²x - B(2A-1) sec x tan x - A²` with ground state
/// `(1 - sin x)^{(A-B)/2} (1 + sin x)^{(A+B)/2}` and spectrum
/// `(A+n)² - A²`. The partner is the same family with `A → A + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScarfSuperpotential {
    pub a: f64,
    pub b: f64,
}

impl Superpotential for ScarfSuperpotential {
    fn value(&self, x: f64) -> f64 {
        (self.a * x.sin() - self.b) / x.cos()
    }
    fn derivative(&self, x: f64) -> f64 {
        let c = x.cos();
        (self.a - self.b * x.sin()) / (c * c)
    }
    fn antiderivative(&self, x: f64) -> Option<f64> {
        // -A ln cos x - B ln(sec x + tan x)
        let (s, c) = x.sin_cos();
        Some(-self.a * c.ln() - self.b * ((1.0 + s) / c).ln())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderDirection {
    /// `A = d/du + W`
    Lowering,
    /// `A† = -d/du + W`
    Raising,
}

/// A superpotential sampled on a grid together with its partner potentials.
#[derive(Debug, Clone)]
pub struct FactorizedSystem<W> {
    w: W,
    grid: Grid,
    w_samples: Vec<f64>,
    dw_samples: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
}

impl<W: Superpotential> FactorizedSystem<W> {
    pub fn new(w: W, grid: Grid) -> Result<Self> {
        let points = grid.points();
        let mut w_samples = Vec::with_capacity(points.len());
        let mut dw_samples = Vec::with_capacity(points.len());
        for (index, &u) in points.iter().enumerate() {
            let (v, d) = (w.value(u), w.derivative(u));
            if !(v.is_finite() && d.is_finite()) {
                return Err(Error::NonFinite {
                    index,
                    what: "superpotential",
                });
            }
            w_samples.push(v);
            dw_samples.push(d);
        }
        let u1 = w_samples.iter().zip(&dw_samples).map(|(v, d)| v * v - d).collect();
        let u2 = w_samples.iter().zip(&dw_samples).map(|(v, d)| v * v + d).collect();
        Ok(Self {
            w,
            grid,
            w_samples,
            dw_samples,
            u1,
            u2,
        })
    }

    pub fn superpotential(&self) -> &W {
        &self.w
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn w_samples(&self) -> &[f64] {
        &self.w_samples
    }

    pub fn u1(&self) -> &[f64] {
        &self.u1
    }

    pub fn u2(&self) -> &[f64] {
        &self.u2
    }

    /// Adds `delta(u)` to the stored `U₁`, breaking the factorization on
    /// purpose. Used to exercise failure paths.
    pub fn perturb_u1(&mut self, delta: impl Fn(f64) -> f64) {
        for (v, u) in self.u1.iter_mut().zip(self.grid.points()) {
            *v += delta(u);
        }
    }

    /// `max |U₁ - (W² - W')|` and `max |U₂ - (W² + W')|` over the grid.
    pub fn identity_error(&self) -> (f64, f64) {
        let mut e = (0.0_f64, 0.0_f64);
        for i in 0..self.grid.count() {
            let w2 = self.w_samples[i] * self.w_samples[i];
            e.0 = e.0.max((self.u1[i] - (w2 - self.dw_samples[i])).abs());
            e.1 = e.1.max((self.u2[i] - (w2 + self.dw_samples[i])).abs());
        }
        e
    }

    fn check_samples(&self, f: &WavefunctionSamples) -> Result<()> {
        if f.grid != self.grid {
            return Err(Error::GridMismatch(format!(
                "samples on {:?}, system on {:?}",
                f.grid, self.grid
            )));
        }
        Ok(())
    }

    fn ladder_values(&self, dir: LadderDirection, f: &[f64]) -> Result<Vec<f64>> {
        let d = numeric::first_derivative(f, self.grid.step())?;
        let s = match dir {
            LadderDirection::Lowering => 1.0,
            LadderDirection::Raising => -1.0,
        };
        Ok(d.iter()
            .zip(f)
            .zip(&self.w_samples)
            .map(|((d, f), w)| s * d + w * f)
            .collect())
    }

    fn hamiltonian_values(&self, u: &[f64], f: &[f64]) -> Vec<f64> {
        numeric::laplacian(f, self.grid.step())
            .iter()
            .zip(f)
            .zip(u)
            .map(|((l, f), u)| -l + u * f)
            .collect()
    }
}

/// `±f' + W f` with five-point derivatives (one-sided at the ends).
pub fn apply_ladder<W: Superpotential>(
    sys: &FactorizedSystem<W>,
    dir: LadderDirection,
    f: &WavefunctionSamples,
) -> Result<WavefunctionSamples> {
    sys.check_samples(f)?;
    WavefunctionSamples::new(sys.grid, sys.ladder_values(dir, &f.values)?)
}

/// `exp(-∫₀ᵘ W)` on the system grid, unnormalized.
///
/// Uses the closed-form antiderivative when the superpotential has one;
/// otherwise cumulative trapezoid with the Euler-Maclaurin end correction,
/// anchored at `u = 0` by a separate Gauss-Legendre integral.
pub fn ground_state_from_w<W: Superpotential>(sys: &FactorizedSystem<W>) -> Result<WavefunctionSamples> {
    let grid = sys.grid;
    let points = grid.points();
    let exponents: Vec<f64> = match sys.w.antiderivative(points[0]) {
        Some(_) => points
            .iter()
            .map(|&u| sys.w.antiderivative(u).unwrap_or(f64::NAN))
            .collect(),
        None => {
            let h = grid.step();
            let mut acc = gauss_legendre(&sys.w, 0.0, points[0]);
            let mut out = Vec::with_capacity(points.len());
            out.push(acc);
            for i in 1..points.len() {
                acc += 0.5 * h * (sys.w_samples[i - 1] + sys.w_samples[i])
                    - h * h / 12.0 * (sys.dw_samples[i] - sys.dw_samples[i - 1]);
                out.push(acc);
            }
            out
        }
    };
    let values: Vec<f64> = exponents.iter().map(|e| (-e).exp()).collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            index,
            what: "ground state",
        });
    }
    WavefunctionSamples::new(grid, values)
}

/// Composite five-point Gauss-Legendre, 200 panels.
fn gauss_legendre(w: &impl Superpotential, a: f64, b: f64) -> f64 {
    const NODES: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    if a == b {
        return 0.0;
    }
    let panels = 200;
    let width = (b - a) / panels as f64;
    (0..panels)
        .map(|k| {
            let mid = a + (k as f64 + 0.5) * width;
            NODES
                .iter()
                .zip(WEIGHTS)
                .map(|(x, wt)| wt * w.value(mid + 0.5 * width * x))
                .sum::<f64>()
                * 0.5
                * width
        })
        .sum()
}

/// `u + √(R²+u²)` without cancellation for negative `u`.
fn throat_sum(params: &CatenoidParams, u: f64) -> f64 {
    let rho = params.rho(u);
    if u >= 0.0 {
        u + rho
    } else {
        params.radius() * params.radius() / (rho - u)
    }
}

/// `χ₀(u) = 2^{-m} (u + √(R²+u²))^{-m}`.
pub fn catenoid_ground_state(params: &CatenoidParams, m: i32, u: f64) -> f64 {
    (2.0 * throat_sum(params, u)).powi(-m)
}

/// `dχ₀/du` by the chain rule on the closed form.
pub fn catenoid_ground_state_derivative(params: &CatenoidParams, m: i32, u: f64) -> f64 {
    let s = throat_sum(params, u);
    let ds = 1.0 + u / params.rho(u);
    -(m as f64) * 2f64.powi(-m) * s.powi(-m - 1) * ds
}

/// `(χ₀' + W χ₀)(u)` from the analytic derivative.
pub fn catenoid_zero_mode_residual(params: &CatenoidParams, m: i32, u: f64) -> f64 {
    let w = CatenoidSuperpotential::new(*params, m);
    catenoid_ground_state_derivative(params, m, u) + w.value(u) * catenoid_ground_state(params, m, u)
}

/// How far the catenoid zero mode is from being a bound state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizabilityReport {
    pub half_width: f64,
    /// `√∫ χ₀²` over `[-L, L]`.
    pub truncated_norm: f64,
    /// Ratio of the truncated norms on `[-2L, 2L]` and `[-L, L]`; stays near
    /// 1 only for a square-integrable function.
    pub growth_on_doubling: f64,
    pub normalizable: bool,
}

/// `χ₀` decays like `u^{-m}` on one side and grows like `|u|^m` on the
/// other, so it is never square integrable on the line; this reports the
/// truncated norm rather than asserting anything.
pub fn catenoid_ground_state_report(
    params: &CatenoidParams,
    m: i32,
    half_width: f64,
) -> Result<NormalizabilityReport> {
    if !(half_width > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "half width must be positive, got {half_width}"
        )));
    }
    let norm_on = |l: f64| -> Result<f64> {
        let grid = Grid::new(-l, l, numeric::DEFAULT_POINTS)?;
        let f = WavefunctionSamples::from_fn(grid, |u| catenoid_ground_state(params, m, u));
        Ok(numeric::inner_product(&f.values, &f.values, &grid)?.sqrt())
    };
    let n1 = norm_on(half_width)?;
    let n2 = norm_on(2.0 * half_width)?;
    let growth = n2 / n1;
    Ok(NormalizabilityReport {
        half_width,
        truncated_norm: n1,
        growth_on_doubling: growth,
        // Exact statement for this closed form, see the doc comment.
        normalizable: false,
    })
}

/// `‖(H₂A - AH₁) f‖∞` over interior points at least three steps from the
/// ends. `H` uses the three-point Laplacian, `A` the five-point derivative.
pub fn check_intertwining<W: Superpotential>(
    sys: &FactorizedSystem<W>,
    f: &WavefunctionSamples,
) -> Result<f64> {
    sys.check_samples(f)?;
    let n = sys.grid.count();
    let af = sys.ladder_values(LadderDirection::Lowering, &f.values)?;
    let h2af = sys.hamiltonian_values(&sys.u2, &af);
    let h1f = sys.hamiltonian_values(&sys.u1, &f.values);
    let ah1f = sys.ladder_values(LadderDirection::Lowering, &h1f)?;
    Ok((3..n - 3).fold(0.0_f64, |m, i| m.max((h2af[i] - ah1f[i]).abs())))
}

/// `A f / √E` (or `A† f / √E`), mapping an eigenstate of one partner onto the
/// other. The zero mode, `E ≤ 0`, has no partner.
pub fn partner_map_state<W: Superpotential>(
    sys: &FactorizedSystem<W>,
    dir: LadderDirection,
    f: &WavefunctionSamples,
    energy: f64,
) -> Result<WavefunctionSamples> {
    if !(energy > 0.0) {
        return Err(Error::ZeroMode(energy));
    }
    let mut out = apply_ladder(sys, dir, f)?;
    let s = 1.0 / energy.sqrt();
    out.values.iter_mut().for_each(|v| *v *= s);
    Ok(out)
}

/// Sup-norm residuals of the coupled first-order system for a constant
/// Fermi velocity (`ħ = 1`):
///
/// `(∂ - u/(2(R²+u²)) + m/√(R²+u²)) ψ₁ + i(E/v_F) ψ₂`,
/// `(∂ - u/(2(R²+u²)) - m/√(R²+u²)) ψ₂ + i(E/v_F) ψ₁`.
pub fn dirac_coupled_residual(
    params: &CatenoidParams,
    m: i32,
    vf: f64,
    energy: f64,
    psi1: &[Complex64],
    psi2: &[Complex64],
    grid: &Grid,
) -> Result<(f64, f64)> {
    for (len, what) in [(psi1.len(), "psi1"), (psi2.len(), "psi2")] {
        if len != grid.count() {
            return Err(Error::GridMismatch(format!(
                "{what} has {len} samples, grid has {}",
                grid.count()
            )));
        }
    }
    if !(vf > 0.0) {
        return Err(Error::InvalidParameter(format!("v_F must be positive, got {vf}")));
    }
    let h = grid.step();
    let derivative = |z: &[Complex64]| -> Result<Vec<Complex64>> {
        let re: Vec<f64> = z.iter().map(|c| c.re).collect();
        let im: Vec<f64> = z.iter().map(|c| c.im).collect();
        let (dr, di) = (numeric::first_derivative(&re, h)?, numeric::first_derivative(&im, h)?);
        Ok(dr.into_iter().zip(di).map(|(a, b)| Complex64::new(a, b)).collect())
    };
    let (d1, d2) = (derivative(psi1)?, derivative(psi2)?);
    let coupling = Complex64::new(0.0, energy / vf);
    let mut res = (0.0_f64, 0.0_f64);
    for (i, u) in grid.points().into_iter().enumerate() {
        let spin = u / (2.0 * params.rho2(u));
        let w = m as f64 / params.rho(u);
        let r1 = d1[i] + (w - spin) * psi1[i] + coupling * psi2[i];
        let r2 = d2[i] - (w + spin) * psi2[i] + coupling * psi1[i];
        res.0 = res.0.max(r1.norm());
        res.1 = res.1.max(r2.norm());
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid(l: f64, n: usize) -> Grid {
        Grid::new(-l, l, n).unwrap()
    }

    #[test]
    fn harmonic_ground_state_is_annihilated() {
        let sys = FactorizedSystem::new(LinearSuperpotential { slope: 1.0 }, grid(6.0, 2001)).unwrap();
        let psi = ground_state_from_w(&sys).unwrap();
        assert_relative_eq!(psi.values[1000], 1.0);
        assert_relative_eq!(psi.values[0], (-18.0f64).exp(), max_relative = 1e-12);
        let a = apply_ladder(&sys, LadderDirection::Lowering, &psi).unwrap();
        assert!(a.max_abs() < 1e-8, "{}", a.max_abs());
        let zero = WavefunctionSamples::new(*sys.grid(), vec![0.0; 2001]).unwrap();
        assert_eq!(apply_ladder(&sys, LadderDirection::Raising, &zero).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn quadrature_ground_state_matches_closed_form() {
        let w = crate::potentials::FnSuperpotential(|u: f64| u * u * u.sin() + 0.3);
        let sys = FactorizedSystem::new(w, Grid::new(0.5, 3.0, 1001).unwrap()).unwrap();
        let psi = ground_state_from_w(&sys).unwrap();
        // ∫₀ᵘ (t² sin t + 0.3) dt = -u² cos u + 2u sin u + 2cos u - 2 + 0.3u
        for (u, v) in sys.grid().points().iter().zip(&psi.values) {
            let exact = -u * u * u.cos() + 2.0 * u * u.sin() + 2.0 * u.cos() - 2.0 + 0.3 * u;
            assert_relative_eq!(*v, (-exact).exp(), max_relative = 1e-9);
        }
    }

    #[test]
    fn zero_superpotential_ground_state_is_constant() {
        let sys = FactorizedSystem::new(ZeroSuperpotential, grid(1.0, 64)).unwrap();
        let psi = ground_state_from_w(&sys).unwrap();
        assert!(psi.values.iter().all(|v| *v == 1.0));
    }

    #[test]
    fn catenoid_ground_state_values() {
        let p = CatenoidParams::new(1.0).unwrap();
        assert_relative_eq!(catenoid_ground_state(&p, 1, 0.0), 0.5);
        assert_relative_eq!(catenoid_ground_state(&p, 2, 0.0), 0.25);
        for u in [-40.0, -3.0, 0.0, 0.7, 25.0] {
            for m in 1..=3 {
                let w = CatenoidSuperpotential::new(p, m).value(u);
                let logd = catenoid_ground_state_derivative(&p, m, u) / catenoid_ground_state(&p, m, u);
                assert_relative_eq!(logd, -w, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn catenoid_ground_state_is_flagged() {
        let p = CatenoidParams::new(1.0).unwrap();
        let r = catenoid_ground_state_report(&p, 2, 20.0).unwrap();
        assert!(!r.normalizable);
        assert!(r.growth_on_doubling > 3.0);
    }

    #[test]
    fn intertwining_free_case_is_exact() {
        let g = grid(5.0, 501);
        let sys = FactorizedSystem::new(ZeroSuperpotential, g).unwrap();
        let f = WavefunctionSamples::from_fn(g, |u| (-u * u).exp());
        assert!(check_intertwining(&sys, &f).unwrap() < 1e-9);
    }

    #[test]
    fn zero_energy_has_no_partner() {
        let g = grid(5.0, 101);
        let sys = FactorizedSystem::new(LinearSuperpotential { slope: 1.0 }, g).unwrap();
        let f = WavefunctionSamples::from_fn(g, |u| u * (-0.5 * u * u).exp());
        assert_eq!(
            partner_map_state(&sys, LadderDirection::Lowering, &f, 0.0).unwrap_err(),
            Error::ZeroMode(0.0)
        );
        // A† A = H₁ on the first excited state: A†A f = 2 f.
        let af = partner_map_state(&sys, LadderDirection::Lowering, &f, 2.0).unwrap();
        let back = partner_map_state(&sys, LadderDirection::Raising, &af, 2.0).unwrap();
        for i in 10..90 {
            assert!((back.values[i] - f.values[i]).abs() < 1e-3);
        }
    }

    #[test]
    fn grid_mismatch_is_reported() {
        let sys = FactorizedSystem::new(ZeroSuperpotential, grid(1.0, 64)).unwrap();
        let f = WavefunctionSamples::from_fn(grid(1.0, 65), |u| u);
        assert!(matches!(
            apply_ladder(&sys, LadderDirection::Lowering, &f),
            Err(Error::GridMismatch(_))
        ));
    }

    #[test]
    fn non_finite_superpotential_is_rejected() {
        let w = crate::potentials::FnSuperpotential(|u: f64| 1.0 / u);
        assert!(matches!(
            FactorizedSystem::new(w, grid(1.0, 65)),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn scarf_superpotential_partners() {
        let w = ScarfSuperpotential { a: 2.3, b: 0.4 };
        for x in [-1.2, -0.4, 0.0, 0.9, 1.4] {
            let (u1, u2) = crate::potentials::partner_potentials_from_w(&w, x);
            let (sec, tan) = (1.0 / f64::cos(x), f64::tan(x));
            let (a, b) = (w.a, w.b);
            assert_relative_eq!(u1, (a * a + b * b - a) * sec * sec - b * (2.0 * a - 1.0) * sec * tan - a * a, max_relative = 1e-12, epsilon = 1e-12);
            assert_relative_eq!(u2, (a * a + b * b + a) * sec * sec - b * (2.0 * a + 1.0) * sec * tan - a * a, max_relative = 1e-12, epsilon = 1e-12);
            let fd = crate::potentials::FnSuperpotential(|t| w.value(t)).derivative(x);
            assert_relative_eq!(w.derivative(x), fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn dirac_residual_trivial_inputs() {
        let p = CatenoidParams::new(1.0).unwrap();
        let g = grid(5.0, 101);
        let zero = vec![Complex64::new(0.0, 0.0); 101];
        assert_eq!(dirac_coupled_residual(&p, 2, 1.0, 1.0, &zero, &zero, &g).unwrap(), (0.0, 0.0));
        assert!(dirac_coupled_residual(&p, 2, 1.0, 1.0, &zero[..100], &zero, &g).is_err());
    }
}
