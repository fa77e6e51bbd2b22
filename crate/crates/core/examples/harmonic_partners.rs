// Factorization `H = A†A` on a grid: the harmonic oscillator pair, its
// intertwining, and the partner map that drops one level.

use catenoid::geometry::CatenoidParams;
use catenoid::numeric::{self, Grid};
use catenoid::susy::{self, FactorizedSystem, LadderDirection, LinearSuperpotential};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Grid::new(-10.0, 10.0, 4001)?;
    let sys = FactorizedSystem::new(LinearSuperpotential { slope: 1.0 }, grid)?;
    let (e1, e2) = sys.identity_error();
    println!("W² ∓ W' identity errors: {e1:.1e}, {e2:.1e}");

    let h1 = numeric::eigenvalues_tridiagonal(&numeric::discretize_samples(sys.u1(), &grid)?, 4)?;
    let h2 = numeric::eigenvalues_tridiagonal(&numeric::discretize_samples(sys.u2(), &grid)?, 3)?;
    println!("H1: {h1:.5?}");
    println!("H2: {h2:.5?}  (H1 without its zero mode)");

    let ground = susy::ground_state_from_w(&sys)?.normalized(None)?;
    let annihilated = susy::apply_ladder(&sys, LadderDirection::Lowering, &ground)?;
    println!("|A ψ0|∞ = {:.1e}", annihilated.max_abs());

    let spec = numeric::eigen_tridiagonal(&numeric::discretize_samples(sys.u1(), &grid)?, 3)?;
    let psi2 = spec.eigenfunction(2).ok_or("missing eigenvector")?;
    println!("intertwining residual on ψ2: {:.1e}", susy::check_intertwining(&sys, &psi2)?);
    let mapped = susy::partner_map_state(&sys, LadderDirection::Lowering, &psi2, spec.eigenvalues[2])?;
    println!("A ψ2 / √E has {} node(s)", numeric::count_features(&mapped.values)?.sign_changes);

    // The catenoid zero mode solves Aχ0 = 0 but is not square integrable.
    let params = CatenoidParams::new(1.0)?;
    let report = susy::catenoid_ground_state_report(&params, 2, 20.0)?;
    println!(
        "catenoid χ0 at m = 2: truncated norm {:.3}, growth on doubling {:.1}",
        report.truncated_norm, report.growth_on_doubling
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
