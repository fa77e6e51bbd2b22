// Effective potentials of both spinor components, for a constant Fermi
// velocity and for the profile `v_F = λ(1 + u²/R²)`.

use catenoid::geometry::CatenoidParams;
use catenoid::potentials::{self, PotentialModel, SpinorBranch};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = CatenoidParams::new(1.0)?;
    let m = 2;
    let upper = PotentialModel::constant(1.0, m, SpinorBranch::Upper)?;
    let lower = PotentialModel::constant(1.0, m, SpinorBranch::Lower)?;
    let scarf = PotentialModel::scarf(1.5, m, SpinorBranch::Upper)?;

    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "u", "V_eff+", "V_eff-", "W", "U_eff+");
    for u in [-3.0, -1.0, 0.0, 1.0, 3.0] {
        println!(
            "{u:>6.1} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            potentials::v_eff(&upper, &params, u),
            potentials::v_eff(&lower, &params, u),
            potentials::superpotential(&params, m, u),
            potentials::u_eff(&scarf, &params, u),
        );
    }

    // The upper component is the W² - W' partner of the lower one.
    let w = potentials::CatenoidSuperpotential::new(params, m);
    for u in [-2.0, 0.3, 5.0] {
        let (v1, v2) = potentials::partner_potentials_from_w(&w, u);
        let direct = (potentials::v_eff(&upper, &params, u), potentials::v_eff(&lower, &params, u));
        println!("u = {u}: from W ({v1:.6}, {v2:.6}), direct ({:.6}, {:.6})", direct.0, direct.1);
    }

    // In x = atan(u/R) the velocity profile yields a Scarf-I potential.
    println!("Scarf coupling g = {}", potentials::scarf_pdfv_coupling(&params, m));
    for x in [-1.0, 0.0, 1.0] {
        println!("x = {x:>4}: {:.6}", potentials::scarf_form_pdfv(&params, m, x)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
