// Jacobi polynomials, confluent hypergeometric `M`, parabolic cylinder
// `D_ν`, and where `D_ν` refuses to answer.

use catenoid::specfun::{self, JacobiParams};
use catenoid::Error;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = JacobiParams::new(4, 1.25, 0.5)?;
    println!("P_4^(1.25, 0.5)(0.3) = {:.12}", specfun::jacobi(p, 0.3)?);
    println!("d/dx at 0.3          = {:.12}", specfun::jacobi_derivative(p, 0.3)?);

    println!("M(1, 2, 1) = {:.12} (e - 1)", specfun::kummer_m(1.0, 2.0, 1.0)?);
    println!("M(-0.5, 1.5, -8) = {:.12}", specfun::kummer_m(-0.5, 1.5, -8.0)?);

    for nu in [2.0, 0.5, -1.7] {
        println!("D_{nu}(1.5) = {:.12}", specfun::parabolic_cylinder_d(nu, 1.5)?);
    }
    // Integer orders reduce to Hermite polynomials and stay accurate far out.
    println!("D_3(15) = {:.6e}", specfun::parabolic_cylinder_d(3.0, 15.0)?);
    match specfun::parabolic_cylinder_d(0.5, 9.0) {
        Err(e @ Error::PrecisionLoss { .. }) => println!("D_0.5(9): {e}"),
        other => println!("D_0.5(9) unexpectedly gave {other:?}"),
    }

    println!("ln Γ(50.5) = {:.12}", specfun::log_gamma(50.5)?);
    println!("1/Γ(-2) = {}", specfun::recip_gamma(-2.0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
