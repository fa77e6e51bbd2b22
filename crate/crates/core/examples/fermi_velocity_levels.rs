// Levels for `v_F(u) = λ(1 + u²/R²)`: the Scarf-I parameters, their
// energies against a direct eigensolve, and the SUSY partner states.

use catenoid::analytic::{self, PartnerForm, QuantumNumbers};
use catenoid::geometry::CatenoidParams;
use catenoid::{numeric, potentials};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (radius, lambda, m) = (1.0, 1.5, 2);
    let params = CatenoidParams::new(radius)?;
    let sp = analytic::scarf_params_pdfv(&params, m, lambda)?;
    let (a, b) = sp.matched().ok_or("no real Scarf parameters")?;
    println!("g = {:.4}, matched A = {a:.6}, B = {b:.6}", sp.coupling);
    println!("printed formulas: A = {:?}, B = {:?}", sp.printed.a, sp.printed.b);

    let grid = numeric::x_grid(4001)?;
    let op = numeric::discretize(|x| potentials::scarf_form_pdfv(&params, m, x).unwrap_or(f64::NAN), &grid)?;
    let ev = numeric::eigenvalues_tridiagonal(&op, 4)?;
    let scale = (lambda / radius).powi(2);
    for n in 0..4u32 {
        let level = analytic::energy_pdfv(&sp, QuantumNumbers::new(n, m));
        let e = level.value.ok_or("invalid level")?;
        println!("n = {n}: |E| = {e:.6}, numeric {:.6}", (scale * ev[n as usize]).sqrt());
    }

    // Partner of level 1 by shape invariance, by the ladder operator, and by
    // the printed closed form.
    let sgrid = analytic::scarf_x_grid(4001)?;
    let qn = QuantumNumbers::new(1, m);
    let derived = analytic::partner_eigenfunction_pdfv(&sp, qn, PartnerForm::Derived, sgrid)?;
    for form in [PartnerForm::Ladder, PartnerForm::PrintedX] {
        let other = analytic::partner_eigenfunction_pdfv(&sp, qn, form, sgrid)?;
        println!("overlap(Derived, {form:?}) = {:.6}", numeric::overlap(&derived.values, &other.values, &sgrid)?);
    }

    let u = 0.7;
    println!("ω_0({u}) = {:.6}", analytic::eigenfunction_pdfv(&sp, QuantumNumbers::new(0, m), u)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
