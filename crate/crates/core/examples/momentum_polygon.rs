// Closed triangles of traceless Hermitian matrices with prescribed spectra,
// found by minimizing the momentum norm over unitary conjugates.

use deltapoly::polygons::{
    construct_polygon_momentum, sorted_eigenvalues, MomentumOptions, MomentumOutcome,
};

pub fn run_example() -> deltapoly::Result<()> {
    let inside = vec![
        vec![3.0, 0.0, -3.0],
        vec![2.0, 1.0, -3.0],
        vec![2.0, -1.0, -1.0],
    ];
    let outside = vec![
        vec![4.0, -2.0, -2.0],
        vec![1.0, 0.0, -1.0],
        vec![1.0, 0.0, -1.0],
    ];
    for h in [inside, outside] {
        match construct_polygon_momentum(&h, &MomentumOptions::default())? {
            MomentumOutcome::Polygon {
                tuple,
                residual,
                restarts_used,
            } => {
                println!(
                    "{h:?}: closed up, residual {residual:.2e} after {restarts_used} restart(s)"
                );
                for (a, spec) in tuple.to_matrices().iter().zip(&h) {
                    let got = sorted_eigenvalues(a);
                    println!("  spectrum {got:.6?} (wanted {spec:?})");
                }
            }
            MomentumOutcome::Failure { best_residual } => {
                println!("{h:?}: no polygon, best residual {best_residual:.3}");
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
