//! Nine-point finite-difference stencils shared by the substitution oracles.

const D1: [f64; 9] = [
    1.0 / 280.0, -4.0 / 105.0, 0.2, -0.8, 0.0, 0.8, -0.2, 4.0 / 105.0, -1.0 / 280.0,
];
const D2: [f64; 9] = [
    -1.0 / 560.0, 8.0 / 315.0, -0.2, 1.6, -205.0 / 72.0, 1.6, -0.2, 8.0 / 315.0, -1.0 / 560.0,
];

/// Value, first and second derivative by nine-point central stencils.
pub fn jet<T>(f: impl Fn(f64) -> T, x: f64, h: f64) -> (T, T, T)
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Default,
{
    let (mut d1, mut d2) = (T::default(), T::default());
    for k in 0..9 {
        let v = f(x + (k as f64 - 4.0) * h);
        d1 = d1 + v * (D1[k] / h);
        d2 = d2 + v * (D2[k] / (h * h));
    }
    (f(x), d1, d2)
}

/// `|Σ terms| / Σ |terms|`.
pub fn relative(terms: &[f64]) -> f64 {
    terms.iter().sum::<f64>().abs() / terms.iter().map(|t| t.abs()).sum::<f64>()
}

/// Residual of `-(1-r²)y'' + 2ry' + V y = 0` with the throat value of
/// `ε²/(1-r²)²`, relative to the sum of term magnitudes.
#[allow(dead_code)]
pub fn r_equation_residual(y: impl Fn(f64) -> f64, m: i32, eps2: f64, r: f64) -> f64 {
    let (v, d1, d2) = jet(&y, r, 2e-3);
    let (mf, w) = (m as f64, 1.0 - r * r);
    let pot = (r * r - 2.0) / (4.0 * w) + 3.0 * mf * r / w + (mf * mf + 2.0) / w - 4.0 - eps2;
    relative(&[-(1.0 - r * r) * d2, 2.0 * r * d1, pot * v])
}
