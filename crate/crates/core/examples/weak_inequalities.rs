// Weak triangle inequalities: the row form against the convex-hull form,
// and the comparison of the weak cone with the stability cone.

use deltapoly::cone::{cone_contains, ConeHRep};
use deltapoly::coxeter::{build_root_system, RootSystemName};
use deltapoly::inequalities::{stability_system, weak_geometric_test, weak_system};
use deltapoly::rational::{fmt_rational, qvec, Q};
use deltapoly::schubert::ProductMode;
use num::Zero;

fn show(h: &[Vec<Q>]) -> String {
    let sides: Vec<String> = h
        .iter()
        .map(|v| v.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
        .collect();
    format!("({})", sides.join(") ("))
}

pub fn run_example() -> deltapoly::Result<()> {
    let rs = build_root_system(RootSystemName::G2);
    let weak = weak_system(&rs, 3)?;
    println!("G2 weak system: {} rows", weak.len());

    let h = [qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[0, 1])];
    let sides: Vec<_> = h
        .iter()
        .map(|v| rs.dominant(v.clone()))
        .collect::<Result<_, _>>()?;
    let by_rows = weak
        .inequalities
        .iter()
        .all(|r| r.evaluate(&h) <= Q::zero());
    println!(
        "{}: rows say {by_rows}, hull test (first two roles) says {}",
        show(&h),
        weak_geometric_test(&rs, &sides)
    );

    for name in RootSystemName::ALL {
        let rs = build_root_system(name);
        let stab = ConeHRep::from_system(
            &rs,
            &stability_system(&rs, 3, ProductMode::ExactPoint, true)?,
        );
        let mut w = weak_system(&rs, 3)?;
        w.add_chamber(&rs);
        let w = ConeHRep::from_system(&rs, &w);
        println!(
            "{name:?}: stability ⊆ weak: {}, weak ⊆ stability: {}",
            cone_contains(&w, &stab),
            cone_contains(&stab, &w)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
