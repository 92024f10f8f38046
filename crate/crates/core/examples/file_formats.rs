// Writing inequality and ray files for external polyhedral tools, and reading them back.

use deltapoly::cone::{ambient_ray, extreme_rays, ConeHRep};
use deltapoly::coxeter::{build_root_system, RootSystemName};
use deltapoly::inequalities::stability_system;
use deltapoly::io::{parse_poi, parse_text, rays_poi, system_ieq, system_text};
use deltapoly::schubert::ProductMode;

pub fn run_example() -> deltapoly::Result<()> {
    let rs = build_root_system(RootSystemName::A2);
    let sys = stability_system(&rs, 3, ProductMode::ExactPoint, true)?.sorted();

    let text = system_text(&sys);
    assert_eq!(parse_text(&text)?.len(), sys.len());
    print!("{}", system_ieq(&rs, &sys));

    let v = extreme_rays(&ConeHRep::from_system(&rs, &sys))?;
    let rays: Vec<_> = v.rays.iter().map(|r| ambient_ray(&rs, r)).collect();
    let poi = rays_poi(9, &rays);
    print!("{poi}");
    assert_eq!(parse_poi(&poi)?, (9, rays));
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
