// Probability densities for the m = -2 figures, which exist only after
// regularizing complex parameters, next to the nearest valid m.

use catenoid::analytic::{self, ExponentVariant, QuantumNumbers, RealnessPolicy};
use catenoid::cli;
use catenoid::geometry::CatenoidParams;
use catenoid::numeric::{self, Grid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = CatenoidParams::new(1.0)?;
    let qn = QuantumNumbers::new(1, -2);

    let strict = analytic::ConstantCaseState::new(params, qn, ExponentVariant::Chain, RealnessPolicy::Strict);
    println!("strict: {}", strict.err().map(|e| e.to_string()).unwrap_or_default());

    let regularized = analytic::ConstantCaseState::new(params, qn, ExponentVariant::Chain, RealnessPolicy::AbsoluteValue)?;
    let grid = Grid::new(-8.0, 8.0, 1601)?;
    let density = regularized.sample_normalized(grid)?.density();
    println!("regularized m = -2, n = 1: {} density maxima", numeric::count_features(&density)?.maxima);

    let companion = cli::nearest_valid_m(-2);
    for n in 1..=3 {
        let (closed, solved) = cli::figure_maxima(&params, companion, n, 4001)?;
        println!("m = {companion}, n = {n}: maxima {closed} (closed form), {solved} (eigensolve)");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
