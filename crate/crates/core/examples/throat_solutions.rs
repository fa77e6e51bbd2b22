// Closed forms valid near the throat: the energy-dependent Weber branch,
// the near-origin Hermite expansion, and the zero-energy solution.

use catenoid::analytic;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n) in [(2, 0), (3, 0), (3, 1), (4, 2)] {
        let sol = analytic::energy_dependent_branch(m, n)?;
        let nu = analytic::weber_order(m, sol.epsilon2).ok_or("order undefined")?;
        println!(
            "m = {m}, n = {n}: eps² = {:.8}, ν - n = {:.1e}, f = {:.5}, Z(0.2) = {:.6}",
            sol.epsilon2,
            nu - n as f64,
            sol.f(),
            sol.z_value(0.2)?
        );
    }

    for (n, m) in [(2, 0), (3, 1), (5, 2)] {
        let level = analytic::near_origin_quantization(n, m);
        match level.value {
            Some(eps) => println!(
                "near origin n = {n}, m = {m}: eps = {eps:.6}, χ(0.1) = {:.6}",
                analytic::near_origin_solution(m, eps, 0.1, 1.0, 0.0)?
            ),
            None => println!("near origin n = {n}, m = {m}: {}", level.reason.unwrap_or_default()),
        }
    }

    let chi = analytic::zero_energy_solution(2, Complex64::new(1.0, 0.0), 0.4)?;
    println!("zero-energy solution at m = 2, x = 0.4: {chi:.6}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
