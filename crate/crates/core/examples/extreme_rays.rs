// Exact redundancy removal and extreme rays of the triangle cones.

use deltapoly::cone::{ambient_ray, extreme_rays, irredundant, split_sides, ConeHRep};
use deltapoly::coxeter::{build_root_system, RootSystemName};
use deltapoly::inequalities::stability_system;
use deltapoly::io::sides_text;
use deltapoly::schubert::ProductMode;

pub fn run_example() -> deltapoly::Result<()> {
    for name in RootSystemName::ALL {
        let rs = build_root_system(name);
        let sys = stability_system(&rs, 3, ProductMode::ExactPoint, true)?;
        let h = ConeHRep::from_system(&rs, &sys);

        let irr = irredundant(&h);
        println!(
            "{name:?}: {} rows, {} irredundant",
            sys.len(),
            irr.subsystem.rows.len()
        );
        for i in irr.redundant_indices() {
            println!("  redundant: {}", sys.inequalities[i].to_symbolic());
        }

        let v = extreme_rays(&h)?;
        println!("  {} extreme rays", v.rays.len());
        for ray in &v.rays {
            println!(
                "    {}",
                sides_text(&split_sides(&rs, &ambient_ray(&rs, ray)))
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
