// The tridiagonal eigensolver on its own: the harmonic oscillator, second
// order convergence, and node counting.

use catenoid::numeric::{self, Grid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let solve = |count| -> catenoid::Result<Vec<f64>> {
        let grid = Grid::new(-10.0, 10.0, count)?;
        numeric::eigenvalues_tridiagonal(&numeric::discretize(|x| x * x, &grid)?, 5)
    };
    let coarse = solve(1001)?;
    let fine = solve(2001)?;
    for k in 0..5 {
        let exact = (2 * k + 1) as f64;
        println!(
            "E_{k}: {:.8} (h), {:.8} (h/2), error ratio {:.3}",
            coarse[k],
            fine[k],
            (coarse[k] - exact) / (fine[k] - exact)
        );
    }

    let grid = Grid::new(-10.0, 10.0, 2001)?;
    let spec = numeric::eigen_tridiagonal(&numeric::discretize(|x| x * x, &grid)?, 4)?;
    for k in 0..4 {
        let f = spec.eigenfunction(k).ok_or("missing eigenvector")?;
        let feats = numeric::count_features(&f.values)?;
        println!("state {k}: {} nodes, {} density maxima", feats.sign_changes, feats.maxima);
    }

    let root = numeric::solve_bracketed(|x| x.cos() - x, 0.0, 1.0, 1e-14)?;
    println!("cos x = x at {root:.14}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
