// Cohomology of the generalized Grassmannians and the products that land on the point class.

use deltapoly::coxeter::{build_root_system, RootSystemName};
use deltapoly::schubert::{format_table, point_products, CohomologyRing, ProductMode};

pub fn run_example() -> deltapoly::Result<()> {
    for name in RootSystemName::ALL {
        let rs = build_root_system(name);
        for vertex in [1, 2] {
            let ring = CohomologyRing::new(&rs, vertex)?;
            print!("{}", format_table(&ring));
            let exact = point_products(&ring, 3, ProductMode::ExactPoint);
            let nonzero = point_products(&ring, 3, ProductMode::Nonzero);
            println!(
                "  triples with γ_j γ_k γ_l = [pt]: {}, nonzero multiples: {}\n",
                exact.len(),
                nonzero.len()
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
