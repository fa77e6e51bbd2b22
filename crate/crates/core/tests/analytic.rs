//! Closed-form spectra and eigenfunctions against substitution oracles
//! (ninth-order finite differences), independent eigensolves and quadrature.

use catenoid::analytic::{self, ExponentVariant, PartnerForm, QuantumNumbers, RadicandForm, RealnessPolicy};
use catenoid::geometry::CatenoidParams;
use catenoid::numeric::{self, Grid};
use catenoid::potentials::{self, PotentialModel, SpinorBranch};
use catenoid::specfun::{self, JacobiParams};
use num_complex::Complex64;
use proptest::prelude::*;

mod common;
use common::{jet, r_equation_residual, relative};

fn cat(r: f64) -> CatenoidParams {
    CatenoidParams::new(r).unwrap()
}

/// Own evaluation of `a`, `b` from the square roots.
fn ab(m: i32) -> (f64, f64) {
    let m = m as f64;
    (
        (7.0 + 12.0 * m + 4.0 * m * m).sqrt() / 4.0,
        (7.0 - 12.0 * m + 4.0 * m * m).sqrt() / 4.0,
    )
}

proptest! {
    #[test]
    fn energy_reproduces_the_jacobi_matching(m in -12i32..=12, n in 0u32..12, r in 0.2f64..5.0, vf in 0.1f64..3.0) {
        let bp = analytic::jacobi_branch_params(m);
        prop_assume!(bp.is_real());
        let level = analytic::energy_constant_case(&cat(r), vf, QuantumNumbers::new(n, m));
        prop_assume!(level.valid);
        let eps2 = (level.value.unwrap() * r / vf).powi(2);
        let (a, b) = ab(m);
        let nf = n as f64;
        let lhs = nf * (nf + 2.0 * a + 2.0 * b + 1.0);
        let rhs = 0.25 * (17.0 - 4.0 * a * a - 4.0 * b * b) + eps2 - b - a * (1.0 + 2.0 * b);
        prop_assert!((lhs - rhs).abs() < 1e-9 * lhs.abs().max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn energy_is_even_in_m(m in 0i32..=15, n in 0u32..10) {
        let p = cat(1.3);
        let e = analytic::energy_constant_case(&p, 0.7, QuantumNumbers::new(n, m));
        let f = analytic::energy_constant_case(&p, 0.7, QuantumNumbers::new(n, -m));
        prop_assert_eq!(e.valid, f.valid);
        if let (Some(x), Some(y)) = (e.value, f.value) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }
}

#[test]
fn liouville_spectrum_confirms_the_linear_term() {
    let grid = numeric::x_grid(4001).unwrap();
    for m in [3, -3, 4] {
        let op = analytic::constant_case_liouville_operator(m, &grid).unwrap();
        let numeric = numeric::eigenvalues_tridiagonal(&op, 4).unwrap();
        let bp = analytic::jacobi_branch_params(m);
        for (n, e) in numeric.iter().enumerate() {
            let corrected = analytic::constant_case_radicand(&bp, n as u32, RadicandForm::Corrected).unwrap() / 8.0;
            let printed = analytic::constant_case_radicand(&bp, n as u32, RadicandForm::Printed).unwrap() / 8.0;
            assert!((e - corrected).abs() < 1e-5 * corrected.abs(), "m={m} n={n}: {e} vs {corrected}");
            if n > 0 {
                assert!((e - printed).abs() > 1e-2 * corrected.abs(), "m={m} n={n}");
            }
        }
    }
}

#[test]
fn chain_exponents_solve_the_r_equation_and_printed_ones_do_not() {
    let p = cat(1.0);
    for n in 0..4 {
        let qn = QuantumNumbers::new(n, 3);
        let chain = analytic::ConstantCaseState::new(p, qn, ExponentVariant::Chain, RealnessPolicy::Strict).unwrap();
        let printed = analytic::ConstantCaseState::new(p, qn, ExponentVariant::Printed, RealnessPolicy::Strict).unwrap();
        let eps2 = chain.epsilon2();
        // y(r) = (1-r²)^{3/4} χ(u(r)) undoes the sec²x and (1-r²)^{1/4} factors.
        let as_r = |s: &analytic::ConstantCaseState| {
            let s = *s;
            move |r: f64| (1.0 - r * r).powf(0.75) * s.value(r / (1.0 - r * r).sqrt())
        };
        let (mut worst_chain, mut worst_printed) = (0.0_f64, 0.0_f64);
        for k in 0..=36 {
            let r = -0.9 + 0.05 * k as f64;
            worst_chain = worst_chain.max(r_equation_residual(as_r(&chain), 3, eps2, r));
            worst_printed = worst_printed.max(r_equation_residual(as_r(&printed), 3, eps2, r));
        }
        assert!(worst_chain < 1e-6, "n={n}: chain residual {worst_chain}");
        assert!(worst_printed > 1e-2, "n={n}: printed residual {worst_printed}");
    }
}

#[test]
fn chain_eigenfunction_has_n_nodes() {
    let p = cat(1.0);
    let grid = Grid::new(-60.0, 60.0, 6001).unwrap();
    for n in 0..4 {
        let s = analytic::ConstantCaseState::new(p, QuantumNumbers::new(n, 3), ExponentVariant::Chain, RealnessPolicy::Strict)
            .unwrap()
            .sample_normalized(grid)
            .unwrap();
        assert_eq!(numeric::count_features(&s.values).unwrap().sign_changes, n as usize);
        let total = numeric::trapezoid(&s.density(), grid.step());
        assert!((total - 1.0).abs() < 1e-8);
    }
}

#[test]
fn zero_energy_solution_residual() {
    for m in [0, 1, 2, -3] {
        let n1 = Complex64::new(0.7, -0.2);
        let mut worst = 0.0_f64;
        for k in 0..50 {
            let x = -1.2 + 2.4 * k as f64 / 49.0;
            let mf = m as f64;
            let (v, _, d2) = jet(|x| analytic::zero_energy_solution(m, n1, x).unwrap(), x, 5e-3);
            let sec = 1.0 / x.cos();
            let pot = 3.0 * mf * sec * x.tan() + (mf * mf + 2.0) * sec * sec - 4.0;
            let res = (-d2 + v * pot).norm() / (d2.norm() + (v * pot).norm());
            worst = worst.max(res);
        }
        assert!(worst < 1e-8, "m={m}: residual {worst}");
    }
}

#[test]
fn near_origin_solution_residual() {
    let eps = analytic::near_origin_quantization(2, 1).value.unwrap();
    for (c1, c2) in [(1.0, 0.0), (0.0, 1.0), (0.4, -1.3)] {
        let chi = |r: f64| analytic::near_origin_solution(1, eps, r, c1, c2).unwrap();
        for k in 0..=20 {
            let r = -0.1 + 0.01 * k as f64;
            let (v, d1, d2) = jet(chi, r, 1e-3);
            let terms = [d2, -2.0 * r * d1, ((10.0 - 4.0 + 4.0 * eps * eps) / 4.0 - 3.0 * r) * v];
            let res = relative(&terms);
            assert!(res < 1e-7, "({c1}, {c2}) r={r}: {res}");
        }
    }
}

#[test]
fn energy_dependent_solution_residual() {
    for (m, n) in [(2, 0), (3, 0), (3, 1), (4, 2)] {
        let sol = analytic::energy_dependent_branch(m, n).unwrap();
        assert!(sol.objective_residual < 1e-10);
        let nu = analytic::weber_order(m, sol.epsilon2).unwrap();
        assert!((nu - n as f64).abs() < 1e-10);
        for k in 0..=30 {
            let r = -0.3 + 0.02 * k as f64;
            let (v, _, d2) = jet(|r| sol.z_value(r).unwrap(), r, 1e-3);
            let terms = [-d2, (sol.potential(r) - sol.epsilon2) * v];
            let scale = terms[0].abs() + terms[1].abs();
            assert!((terms[0] + terms[1]).abs() < 1e-6 * scale, "m={m} n={n} r={r}");
        }
    }
}

fn pdfv() -> analytic::ScarfParams {
    analytic::scarf_params_pdfv(&cat(1.0), 2, 1.0).unwrap()
}

#[test]
fn pdfv_state_solves_the_scarf_equation() {
    let sp = pdfv();
    let a = sp.matched_a.unwrap();
    for n in 0..4 {
        let e = (a + n as f64).powi(2) - 1.0;
        for k in 0..=28 {
            let x = -1.4 + 0.1 * k as f64;
            let (v, _, d2) = jet(|x| analytic::scarf_state_x(&sp, n, x).unwrap(), x, 1e-3);
            let pot = potentials::scarf_form_pdfv(&cat(1.0), 2, x).unwrap();
            let terms = [-d2, (pot - e) * v];
            let res = (terms[0] + terms[1]).abs() / (terms[0].abs() + terms[1].abs());
            assert!(res < 1e-6, "n={n} x={x}: {res}");
        }
    }
}

#[test]
fn pdfv_normalization_by_u_quadrature() {
    // u = R sinh s keeps the throat resolved and reaches far into both tails.
    let sp = pdfv();
    let model = PotentialModel::scarf(sp.lambda, 2, SpinorBranch::Upper).unwrap();
    let p = cat(1.0);
    let grid = Grid::new(-14.0, 14.0, 40001).unwrap();
    for n in 0..4 {
        let integrand: Vec<f64> = grid
            .points()
            .iter()
            .map(|s| {
                let u = s.sinh();
                let w = analytic::eigenfunction_pdfv(&sp, QuantumNumbers::new(n, 2), u).unwrap();
                let vf = potentials::fermi_velocity(&model, &p, u);
                w * w / (vf * vf) * s.cosh()
            })
            .collect();
        let total = numeric::trapezoid(&integrand, grid.step());
        assert!((total - 1.0).abs() < 1e-6, "n={n}: {total}");
    }
}

#[test]
fn jacobi_norm_by_quadrature() {
    let sp = pdfv();
    let (al, be) = sp.jacobi_exponents().unwrap();
    let grid = Grid::new(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, 20001).unwrap();
    for (n, a, b) in [(0, al, be), (3, al, be), (2, 0.5, 1.5), (5, 2.0, 0.3)] {
        let p = JacobiParams::new(n, a, b).unwrap();
        let f: Vec<f64> = grid
            .points()
            .iter()
            .map(|x| {
                let s = x.sin();
                (1.0 - s).powf(a) * (1.0 + s).powf(b) * specfun::jacobi(p, s).unwrap().powi(2) * x.cos()
            })
            .collect();
        let q = numeric::trapezoid(&f, grid.step());
        let exact = analytic::jacobi_norm_squared(n, a, b).unwrap();
        assert!((q - exact).abs() < 1e-6 * exact, "{n} {a} {b}: {q} vs {exact}");
    }
}

#[test]
fn printed_superpotential_builds_the_potential_with_a_plus_sign() {
    let sp = pdfv();
    let a = sp.matched_a.unwrap();
    let mut worst_plus = 0.0_f64;
    let mut worst_minus = 0.0_f64;
    for k in 0..=26 {
        let x = -1.3 + 0.1 * k as f64;
        let (w, dw, _) = jet(|x| analytic::superpotential_pdfv(&sp, x).unwrap(), x, 1e-3);
        let target = potentials::scarf_form_pdfv(&cat(1.0), 2, x).unwrap() + 1.0 - a * a;
        worst_plus = worst_plus.max((w * w + dw - target).abs() / target.abs().max(1.0));
        worst_minus = worst_minus.max((w * w - dw - target).abs() / target.abs().max(1.0));
    }
    assert!(worst_plus < 1e-9, "{worst_plus}");
    assert!(worst_minus > 1e-1, "{worst_minus}");
}

#[test]
fn pdfv_partner_forms() {
    let sp = pdfv();
    let grid = numeric::x_grid(4000).unwrap();
    for n in 0..3 {
        let qn = QuantumNumbers::new(n, 2);
        let derived = analytic::partner_eigenfunction_pdfv(&sp, qn, PartnerForm::Derived, grid).unwrap();
        let ladder = analytic::partner_eigenfunction_pdfv(&sp, qn, PartnerForm::Ladder, grid).unwrap();
        let ov = numeric::overlap(&derived.values, &ladder.values, &grid).unwrap();
        assert!(ov > 0.999, "n={n}: overlap {ov}");
        let norm = numeric::trapezoid(&derived.density(), grid.step());
        assert!((norm - sp.lambda * sp.lambda / sp.radius).abs() < 1e-10);

        // Both printed forms describe something else.
        for form in [PartnerForm::PrintedX, PartnerForm::PrintedU] {
            let printed = analytic::partner_eigenfunction_pdfv(&sp, qn, form, grid).unwrap();
            let ov = numeric::overlap(&derived.values, &printed.values, &grid).unwrap();
            assert!(ov < 0.99, "n={n} {form:?}: overlap {ov}");
        }
    }
    assert!(analytic::partner_printed_u(&sp, 0, 0.0).is_err());
}

#[test]
fn constant_case_partner() {
    let p = cat(1.0);
    let grid = Grid::new(-40.0, 40.0, 8001).unwrap();
    // The Jacobi-branch level is an eigenfunction of the throat-frozen
    // r-equation, not of the u-space Hamiltonian. Its ladder image therefore
    // keeps all n+1 nodes instead of losing one, and neither passes the
    // u-space residual at the closed-form energy.
    for n in 0..3 {
        let f = analytic::partner_eigenfunction_constant(&p, QuantumNumbers::new(n, 3), grid).unwrap();
        assert_eq!(numeric::count_features(&f.values).unwrap().sign_changes, n as usize + 1);
        let total = numeric::trapezoid(&f.density(), grid.step());
        assert!((total - 1.0).abs() < 1e-8);
    }
    let model = PotentialModel::constant(1.0, 3, SpinorBranch::Lower).unwrap();
    let e1 = analytic::ConstantCaseState::new(p, QuantumNumbers::new(1, 3), ExponentVariant::Chain, RealnessPolicy::Strict)
        .unwrap()
        .epsilon2();
    let f = analytic::partner_eigenfunction_constant(&p, QuantumNumbers::new(0, 3), grid).unwrap();
    let res = numeric::ode_residual(&f.values, |u| potentials::v_eff(&model, &p, u), e1, &grid).unwrap();
    assert!(res > 1e-3, "{res}");
    let v = analytic::eigenfunction_constant_case(&p, QuantumNumbers::new(1, 2), ExponentVariant::Chain, 0.0);
    assert!(v.is_err());
}
