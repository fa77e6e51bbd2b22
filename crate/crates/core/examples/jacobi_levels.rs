// Constant Fermi velocity levels of the Jacobi branch, checked against a
// finite-difference eigensolve of the same problem in Liouville form.

use catenoid::analytic::{self, ExponentVariant, QuantumNumbers, RadicandForm, RealnessPolicy};
use catenoid::geometry::CatenoidParams;
use catenoid::numeric;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = CatenoidParams::new(1.0)?;
    let m = 3;
    let branch = analytic::jacobi_branch_params(m);
    let (a, b) = branch.ab().ok_or("m = 3 has real exponents")?;
    println!("m = {m}: a = {a:.6}, b = {b:.6}");

    let grid = numeric::x_grid(4001)?;
    let op = analytic::constant_case_liouville_operator(m, &grid)?;
    let numeric_eps2 = numeric::eigenvalues_tridiagonal(&op, 4)?;

    println!("{:>3} {:>12} {:>12} {:>12} {:>10}", "n", "eps² exact", "eps² FD", "no +8n", "|E|");
    for n in 0..4u32 {
        let level = analytic::energy_constant_case(&params, 1.0, QuantumNumbers::new(n, m));
        let exact = analytic::constant_case_epsilon2(&branch, n).ok_or("real branch")?;
        let without = analytic::constant_case_radicand(&branch, n, RadicandForm::Printed).ok_or("real branch")? / 8.0;
        println!(
            "{n:>3} {exact:>12.6} {:>12.6} {without:>12.6} {:>10.6}",
            numeric_eps2[n as usize],
            level.value.unwrap_or(f64::NAN)
        );
    }

    // The eigenfunction in u, sampled and normalized on a finite window.
    let state = analytic::ConstantCaseState::new(params, QuantumNumbers::new(2, m), ExponentVariant::Chain, RealnessPolicy::Strict)?;
    let samples = state.sample_normalized(numeric::Grid::new(-30.0, 30.0, 6001)?)?;
    let f = numeric::count_features(&samples.values)?;
    println!("n = 2 state: {} nodes, {} density maxima", f.sign_changes, f.maxima);

    // m = -2 has no real M₂; the level is reported, not computed.
    let bad = analytic::energy_constant_case(&params, 1.0, QuantumNumbers::new(1, -2));
    println!("m = -2: valid = {}, reason: {}", bad.valid, bad.reason.unwrap_or_default());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
