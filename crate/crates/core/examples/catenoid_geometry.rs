// The catenoid surface: embedding, metric, curvatures and spin connection
// along the meridian.

use catenoid::geometry::{self, CatenoidParams, SurfacePoint};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let params = CatenoidParams::new(1.0)?;
    println!("{:>6} {:>10} {:>10} {:>10} {:>12}", "u", "g_phiphi", "K", "H", "omega");
    for u in [-4.0, -1.0, 0.0, 0.5, 1.0, 4.0] {
        let k = geometry::curvatures(&params, u);
        println!(
            "{u:>6.2} {:>10.4} {:>10.4} {:>10.1e} {:>12.5}",
            geometry::metric_coefficient(&params, u),
            k.gaussian,
            k.mean,
            geometry::spin_connection(&params, u),
        );
    }

    // A point on the surface and the height of its circle of latitude.
    let p = SurfacePoint::new(2.0, std::f64::consts::FRAC_PI_3)?;
    let [x, y, z] = geometry::embed(&params, &p);
    println!("embed(u = 2, phi = pi/3) = ({x:.5}, {y:.5}, {z:.5})");
    assert!((params.meridian_from_height(z) - 2.0).abs() < 1e-12);

    // The asinh survives arguments where the naive formula cancels.
    println!("height(-1e9) = {:.6}", params.height(-1e9));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
