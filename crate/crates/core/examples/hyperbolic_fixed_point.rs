// Hyperbolic polygons with prescribed side lengths and ideal directions,
// as fixed points of a composition of contractions toward the boundary.

use deltapoly::polygons::hyperbolic::config_distance;
use deltapoly::polygons::{
    phi_fixed_point, FixedPointOptions, HyperbolicConfig, HyperbolicOutcome,
};

pub fn run_example() -> deltapoly::Result<()> {
    let configs = [
        HyperbolicConfig {
            masses: vec![1.0, 1.5, 2.0],
            angles: vec![0.0, 2.0, 4.0],
        },
        HyperbolicConfig {
            masses: vec![1.0, 1.0, 1.0, 2.9],
            angles: vec![0.0, 0.1, 0.2, 3.0],
        },
        HyperbolicConfig {
            masses: vec![3.0, 1.0, 1.0],
            angles: vec![0.0, 2.0, 4.0],
        },
    ];
    for cfg in configs {
        match phi_fixed_point(&cfg, &FixedPointOptions::default())? {
            HyperbolicOutcome::Polygon {
                polygon,
                closure_error,
                iterations,
            } => {
                let err = config_distance(&cfg, &polygon.gauss_map());
                println!(
                    "masses {:?}: closed after {iterations} steps, closure {closure_error:.1e}, Gauss map error {err:.1e}",
                    cfg.masses
                );
            }
            HyperbolicOutcome::Diverged {
                iterations,
                distance_from_origin,
            } => {
                println!("masses {:?}: escaped to distance {distance_from_origin:.1} in {iterations} steps", cfg.masses);
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
