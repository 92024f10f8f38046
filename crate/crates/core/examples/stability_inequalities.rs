// The inequalities cutting out the side-length cone, one line per S₃-orbit,
// and a membership query.

use deltapoly::coxeter::{build_root_system, RootSystemName};
use deltapoly::inequalities::{membership, stability_system, Membership};
use deltapoly::rational::{fmt_rational, qvec, Q};
use deltapoly::schubert::ProductMode;

fn show(h: &[Vec<Q>]) -> String {
    let sides: Vec<String> = h
        .iter()
        .map(|v| v.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
        .collect();
    format!("({})", sides.join(") ("))
}

pub fn run_example() -> deltapoly::Result<()> {
    for name in RootSystemName::ALL {
        let rs = build_root_system(name);
        let sys = stability_system(&rs, 3, ProductMode::ExactPoint, false)?;
        println!("{name:?}, triangles: {} inequalities", sys.len());
        for row in sys.orbit_representatives(&rs) {
            println!("  {:<40} {}", row.to_symbolic(), row.to_text());
        }
    }

    let rs = build_root_system(RootSystemName::B2);
    let sys = stability_system(&rs, 3, ProductMode::ExactPoint, true)?;
    for h in [
        vec![qvec(&[1, 1]), qvec(&[1, 1]), qvec(&[2, 0])],
        vec![qvec(&[3, 0]), qvec(&[1, 0]), qvec(&[1, 0])],
    ] {
        match membership(&rs, &sys, &h)? {
            Membership::Member { tight } => {
                println!("{}: member, {} tight rows", show(&h), tight.len())
            }
            Membership::NonMember { violated } => {
                println!(
                    "{}: not a member, violates {}",
                    show(&h),
                    sys.inequalities[violated[0]].to_symbolic()
                )
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
