// Random closed triangles in the flat model 𝔭 and the curved model
// SL(3,ℂ)/SU(3) never violate the A2 inequalities.

use deltapoly::polygons::sample_thompson;

pub fn run_example() -> deltapoly::Result<()> {
    for n in [3, 4] {
        let report = sample_thompson(n, 300, 42)?;
        println!(
            "n = {n}: {} inequalities; worst value flat {:.4} ({}), curved {:.4} ({})",
            report.inequalities,
            report.flat.max_violation,
            report.flat.worst_inequality.as_deref().unwrap_or("-"),
            report.curved.max_violation,
            report.curved.worst_inequality.as_deref().unwrap_or("-"),
        );
        assert!(report.passes(1e-9));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
