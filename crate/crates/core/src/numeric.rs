//! Independent verification engine.
//!
//! Everything here works on uniform grids: finite-difference Hamiltonians
//! `-d²/dx² + V(x)`, a symmetric tridiagonal eigensolver (Sturm-sequence
//! bisection for eigenvalues, inverse iteration for eigenvectors), ODE
//! residuals, trapezoid quadrature, node/maxima counting and bracketed root
//! finding. None of it knows about catenoids; the analytic results are
//! checked against it, never the other way round.

use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform grid `min, min + h, ..., max` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    min: f64,
    max: f64,
    count: usize,
}

impl Grid {
    pub const MIN_POINTS: usize = 16;

    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || max <= min {
            return Err(Error::InvalidParameter(format!(
                "grid bounds must satisfy min < max, got [{min}, {max}]"
            )));
        }
        if count < Self::MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {} points, got {count}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { min, max, count })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.max
        } else {
            self.min + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }

    /// Same interval with half the step.
    pub fn refined(&self) -> Self {
        Self {
            count: 2 * self.count - 1,
            ..*self
        }
    }

    fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.count {
            return Err(Error::GridMismatch(format!(
                "{what} has {len} samples, grid has {}",
                self.count
            )));
        }
        Ok(())
    }
}

/// A real function sampled on a grid, optionally carrying the constant it
/// was normalized by.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSamples {
    pub grid: Grid,
    pub values: Vec<f64>,
    pub norm: Option<f64>,
}

impl WavefunctionSamples {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        grid.check_len(values.len(), "sample vector")?;
        Ok(Self {
            grid,
            values,
            norm: None,
        })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid,
            values: grid.points().into_iter().map(f).collect(),
            norm: None,
        }
    }

    pub fn try_from_fn(grid: Grid, f: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let values = grid
            .points()
            .into_iter()
            .map(f)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            values,
            norm: None,
        })
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.values)
    }

    pub fn density(&self) -> Vec<f64> {
        self.values.iter().map(|v| v * v).collect()
    }

    /// Rescale so that `∫ weight·f² = 1` (trapezoid rule).
    pub fn normalized(&self, weight: Option<&[f64]>) -> Result<Self> {
        let (values, norm) = quadrature_normalize(&self.values, weight, &self.grid)?;
        Ok(Self {
            grid: self.grid,
            values,
            norm: Some(norm),
        })
    }
}

pub(crate) fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// Symmetric tridiagonal matrix, stored as its diagonal and one off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
    /// Grid the operator was discretized on; eigenvectors are normalized in
    /// its inner product when present.
    pub grid: Option<Grid>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, offdiagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || offdiagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal vs {} off-diagonal entries",
                diagonal.len(),
                offdiagonal.len()
            )));
        }
        Ok(Self {
            diagonal,
            offdiagonal,
            grid: None,
        })
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diagonal[i] * v[i];
                if i > 0 {
                    s += self.offdiagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.offdiagonal[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.offdiagonal[i - 1].abs();
            }
            if i + 1 < n {
                r += self.offdiagonal[i].abs();
            }
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm sequence via the
    /// LDLᵀ pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let pivmin = self.pivot_floor();
        let mut count = 0;
        let mut q = self.diagonal[0] - lambda;
        for i in 0..self.len() {
            if i > 0 {
                let e = self.offdiagonal[i - 1];
                q = (self.diagonal[i] - lambda) - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    fn pivot_floor(&self) -> f64 {
        f64::MIN_POSITIVE.sqrt() * self.scale().max(1.0)
    }
}

/// Finite-difference Hamiltonian `-d²/dx² + V(x)`.
///
/// Every grid point is an unknown; the wave function is taken to vanish one
/// step outside either end (Dirichlet).
pub fn discretize(potential: impl Fn(f64) -> f64, grid: &Grid) -> Result<TridiagonalOperator> {
    let samples: Vec<f64> = grid.points().into_iter().map(potential).collect();
    discretize_samples(&samples, grid)
}

/// [`discretize`] for a potential already sampled on `grid`.
pub fn discretize_samples(potential: &[f64], grid: &Grid) -> Result<TridiagonalOperator> {
    grid.check_len(potential.len(), "potential")?;
    let h = grid.step();
    let kinetic = 1.0 / (h * h);
    let mut diagonal = Vec::with_capacity(grid.count());
    for (index, &v) in potential.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                index,
                what: "potential",
            });
        }
        diagonal.push(2.0 * kinetic + v);
    }
    Ok(TridiagonalOperator {
        diagonal,
        offdiagonal: vec![-kinetic; grid.count() - 1],
        grid: Some(*grid),
    })
}

/// Lowest eigenpairs of a tridiagonal operator.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub grid: Option<Grid>,
}

impl SpectrumResult {
    pub fn eigenfunction(&self, k: usize) -> Option<WavefunctionSamples> {
        let grid = self.grid?;
        let v = self.eigenvectors.as_ref()?.get(k)?;
        Some(WavefunctionSamples {
            grid,
            values: v.clone(),
            norm: Some(1.0),
        })
    }
}

/// Absolute floor of the bisection tolerance, `1e-12·2/h²` (the kinetic
/// scale). A bracket also stops once it is down to a few ulps of the
/// eigenvalue. The diagonal is left out on purpose: a singular potential at a
/// clipped end would otherwise make the tolerance coarse for every level.
pub fn eigenvalue_tolerance(op: &TridiagonalOperator) -> f64 {
    let kinetic = match op.grid {
        Some(g) => 2.0 / (g.step() * g.step()),
        None => 2.0 * op.offdiagonal.iter().fold(0.0_f64, |m, e| m.max(e.abs())),
    };
    1e-12 * kinetic.max(f64::MIN_POSITIVE)
}

/// The `k` lowest eigenvalues by Sturm bisection, ascending.
pub fn eigenvalues_tridiagonal(op: &TridiagonalOperator, k: usize) -> Result<Vec<f64>> {
    if k > op.len() {
        return Err(Error::InvalidParameter(format!(
            "requested {k} eigenvalues of a {}x{} operator",
            op.len(),
            op.len()
        )));
    }
    let (glo, ghi) = op.gershgorin();
    let pad = 1e-14 * op.scale() + f64::MIN_POSITIVE;
    let floor = eigenvalue_tolerance(op);
    Ok((0..k)
        .map(|index| {
            let (mut lo, mut hi) = (glo - pad, ghi + pad);
            while hi - lo > floor.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs())) {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if op.sturm_count(mid) > index {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect())
}

const MAX_INVERSE_SWEEPS: usize = 50;

/// The `k` lowest eigenpairs. Eigenvalues by bisection, eigenvectors by
/// inverse iteration (re-orthogonalized against lower vectors), normalized in
/// the grid inner product when the operator carries a grid.
pub fn eigen_tridiagonal(op: &TridiagonalOperator, k: usize) -> Result<SpectrumResult> {
    let eigenvalues = eigenvalues_tridiagonal(op, k)?;
    let n = op.len();
    let h = op.grid.map_or(1.0, |g| g.step());
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    for (index, &lambda) in eigenvalues.iter().enumerate() {
        let lu = ShiftedLu::factor(op, lambda);
        let mut x: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * 0.7548776662466927).sin())
            .collect();
        normalize_euclid(&mut x);
        let mut converged = false;
        for _ in 0..MAX_INVERSE_SWEEPS {
            let mut y = x.clone();
            lu.solve(&mut y);
            for prev in &vectors {
                let dot: f64 = y.iter().zip(prev).map(|(a, b)| a * b).sum::<f64>() * h;
                for (yi, pi) in y.iter_mut().zip(prev) {
                    *yi -= dot * pi / h;
                }
            }
            if !normalize_euclid(&mut y) {
                return Err(Error::InverseIteration(index));
            }
            let dot: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
            if dot < 0.0 {
                y.iter_mut().for_each(|v| *v = -*v);
            }
            let change = y
                .iter()
                .zip(&x)
                .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
            x = y;
            // Orthogonalization round-off leaves a limit cycle near 1e-9 relative.
            if change <= 1e-8 * max_abs(&x) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::InverseIteration(index));
        }
        let scale = 1.0 / (x.iter().map(|v| v * v).sum::<f64>() * h).sqrt();
        x.iter_mut().for_each(|v| *v *= scale);
        fix_sign(&mut x);
        vectors.push(x);
    }
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors: Some(vectors),
        grid: op.grid,
    })
}

fn normalize_euclid(v: &mut [f64]) -> bool {
    let m = max_abs(v);
    if m == 0.0 || !m.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= m);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

/// First significant lobe positive.
fn fix_sign(v: &mut [f64]) {
    let threshold = 1e-6 * max_abs(v);
    if let Some(first) = v.iter().find(|x| x.abs() > threshold) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// LU factorization of `T - σI` with partial pivoting (the LAPACK `gttrf`
/// layout: multipliers, diagonal, two super-diagonals, pivot flags).
struct ShiftedLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(op: &TridiagonalOperator, shift: f64) -> Self {
        let n = op.len();
        let pivmin = f64::EPSILON * op.scale();
        let mut dl = op.offdiagonal.clone();
        let mut du = op.offdiagonal.clone();
        let mut d: Vec<f64> = op.diagonal.iter().map(|x| x - shift).collect();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = pivmin;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = pivmin;
        }
        // Replace tiny pivots so the solve stays finite at an exact eigenvalue.
        for di in d.iter_mut() {
            if di.abs() < pivmin {
                *di = pivmin.copysign(*di);
            }
        }
        Self {
            dl,
            d,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i] - self.dl[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

/// Five-point first derivative; fourth-order one-sided stencils at the two
/// points nearest each end.
pub fn first_derivative(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "five-point derivative needs at least 5 samples, got {n}"
        )));
    }
    let f = values;
    let c = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n];
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for i in 2..n - 2 {
        d[i] = c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]);
    }
    let m = n - 1;
    d[m] = -c * (-25.0 * f[m] + 48.0 * f[m - 1] - 36.0 * f[m - 2] + 16.0 * f[m - 3] - 3.0 * f[m - 4]);
    d[m - 1] = -c * (-3.0 * f[m] - 10.0 * f[m - 1] + 18.0 * f[m - 2] - 6.0 * f[m - 3] + f[m - 4]);
    Ok(d)
}

/// Five-point second derivative at the interior indices `2..n-2`.
pub fn second_derivative_interior(values: &[f64], h: f64) -> Vec<f64> {
    let f = values;
    let c = 1.0 / (12.0 * h * h);
    (2..f.len().saturating_sub(2))
        .map(|i| c * (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]))
        .collect()
}

/// Three-point Laplacian with zero Dirichlet data one step outside the grid,
/// i.e. the kinetic part of [`discretize`] acting on `values`.
pub fn laplacian(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let at = |i: isize| -> f64 {
        if i < 0 || i as usize >= n {
            0.0
        } else {
            values[i as usize]
        }
    };
    (0..n as isize)
        .map(|i| (at(i - 1) - 2.0 * at(i) + at(i + 1)) / (h * h))
        .collect()
}

/// Largest `|-f'' + V f - E f|` over interior points (five-point second
/// derivative), divided by `max|f|`.
pub fn ode_residual(
    f: &[f64],
    potential: impl Fn(f64) -> f64,
    energy: f64,
    grid: &Grid,
) -> Result<f64> {
    grid.check_len(f.len(), "function")?;
    let scale = max_abs(f);
    if scale == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let d2 = second_derivative_interior(f, grid.step());
    let worst = d2.iter().enumerate().fold(0.0_f64, |m, (j, d)| {
        let i = j + 2;
        let x = grid.point(i);
        m.max((-d + (potential(x) - energy) * f[i]).abs())
    });
    Ok(worst / scale)
}

/// Trapezoid rule.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => h * (values[1..n - 1].iter().sum::<f64>() + 0.5 * (values[0] + values[n - 1])),
    }
}

/// `∫ a·b` on the grid (trapezoid).
pub fn inner_product(a: &[f64], b: &[f64], grid: &Grid) -> Result<f64> {
    grid.check_len(a.len(), "left factor")?;
    grid.check_len(b.len(), "right factor")?;
    let prod: Vec<f64> = a.iter().zip(b).map(|(x, y)| x * y).collect();
    Ok(trapezoid(&prod, grid.step()))
}

/// `|⟨a, b⟩| / (‖a‖·‖b‖)`.
pub fn overlap(a: &[f64], b: &[f64], grid: &Grid) -> Result<f64> {
    let ab = inner_product(a, b, grid)?;
    let aa = inner_product(a, a, grid)?;
    let bb = inner_product(b, b, grid)?;
    if aa == 0.0 || bb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(ab.abs() / (aa * bb).sqrt())
}

/// Scale `f` so that `∫ weight·f² = 1` (trapezoid). Returns the scaled samples
/// and the norm `√(∫ weight·f²)` before scaling.
pub fn quadrature_normalize(
    f: &[f64],
    weight: Option<&[f64]>,
    grid: &Grid,
) -> Result<(Vec<f64>, f64)> {
    grid.check_len(f.len(), "function")?;
    let integrand: Vec<f64> = match weight {
        Some(w) => {
            grid.check_len(w.len(), "weight")?;
            f.iter().zip(w).map(|(v, w)| w * v * v).collect()
        }
        None => f.iter().map(|v| v * v).collect(),
    };
    let norm = trapezoid(&integrand, grid.step()).sqrt();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::ZeroNorm);
    }
    Ok((f.iter().map(|v| v / norm).collect(), norm))
}

/// Nodes and density peaks of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Features {
    pub sign_changes: usize,
    pub maxima: usize,
}

/// Interior sign changes of `f` and local maxima of `|f|²`.
///
/// Samples with `|f|² ≤ 1e-9·peak` are ignored for both counts, so
/// numerically vanishing tails do not produce spurious features. A maximum is a
/// run of equal density values strictly above both neighbours; a missing
/// neighbour at either end of the samples counts as lower.
pub fn count_features(f: &[f64]) -> Result<Features> {
    if f.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "feature counting needs at least 3 samples, got {}",
            f.len()
        )));
    }
    let density: Vec<f64> = f.iter().map(|v| v * v).collect();
    let peak = density.iter().cloned().fold(0.0_f64, f64::max);
    let floor = 1e-9 * peak;

    let mut sign_changes = 0;
    let mut last_sign = 0.0_f64;
    for (v, d) in f.iter().zip(&density) {
        if *d <= floor || *v == 0.0 {
            continue;
        }
        let s = v.signum();
        if last_sign != 0.0 && s != last_sign {
            sign_changes += 1;
        }
        last_sign = s;
    }

    let mut maxima = 0;
    let n = density.len();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && density[j + 1] == density[i] {
            j += 1;
        }
        let value = density[i];
        let left_lower = i == 0 || density[i - 1] < value;
        let right_lower = j + 1 == n || density[j + 1] < value;
        if left_lower && right_lower && value > floor {
            maxima += 1;
        }
        i = j + 1;
    }
    Ok(Features {
        sign_changes,
        maxima,
    })
}

/// Bisection root of `g` on `[lo, hi]`, returned as the midpoint once the
/// bracket is narrower than `tol`.
pub fn solve_bracketed(g: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut ga = g(a);
    let gb = g(b);
    if ga == 0.0 {
        return Ok(a);
    }
    if gb == 0.0 {
        return Ok(b);
    }
    if !(ga * gb < 0.0) {
        return Err(Error::NoSignChange { lo: a, hi: b });
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Half-width of the truncated u-domain: `max(20R, 40/√|E_min|)`, with the
/// second term dropped when no energy estimate is available.
pub fn u_truncation(radius: f64, lowest_energy_estimate: Option<f64>) -> f64 {
    let base = 20.0 * radius;
    match lowest_energy_estimate {
        Some(e) if e != 0.0 && e.is_finite() => base.max(40.0 / e.abs().sqrt()),
        _ => base,
    }
}

/// Clipping distance for x-space problems on `(-π/2, π/2)`.
pub const X_CLIP: f64 = 1e-4;

/// Default number of points for u- and x-space grids.
pub const DEFAULT_POINTS: usize = 4001;

/// Clipped x-grid `[-π/2 + δ, π/2 - δ]`.
pub fn x_grid(count: usize) -> Result<Grid> {
    let edge = std::f64::consts::FRAC_PI_2 - X_CLIP;
    Grid::new(-edge, edge, count)
}
