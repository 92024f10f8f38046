// Semistability of weighted configurations: in an apartment, and of
// subspaces of ℚⁿ under SL(n) and an isotropic group.

use deltapoly::configurations::{
    apartment_semistability, atom, iso_semistable, sl_semistable, ApartmentConfiguration,
    ApartmentPoint, GrassmannianMeasure, Strategy,
};
use deltapoly::coxeter::{build_root_system, RootSystemName};
use deltapoly::rational::{q, qf, qvec};

pub fn run_example() -> deltapoly::Result<()> {
    let rs = build_root_system(RootSystemName::B2);
    let cfg = ApartmentConfiguration {
        root_system: RootSystemName::B2,
        points: vec![
            ApartmentPoint {
                word: vec![],
                h: qvec(&[2, 1]),
            },
            ApartmentPoint {
                word: vec![1],
                h: vec![qf(1, 2), q(0)],
            },
            ApartmentPoint {
                word: vec![2],
                h: qvec(&[1, 1]),
            },
        ],
    };
    println!(
        "apartment: {}",
        serde_json::to_string(&apartment_semistability(&rs, &cfg)?)?
    );

    // three points of ℂP¹; the first is destabilizing once it carries half the mass
    for first in [qf(9, 10), q(1), qf(11, 10)] {
        let m = GrassmannianMeasure {
            n: 2,
            q: 1,
            form: None,
            atoms: vec![
                atom(&[&[1, 0]], first.clone()),
                atom(&[&[0, 1]], qf(1, 2)),
                atom(&[&[1, 1]], qf(1, 2)),
            ],
        };
        println!(
            "P¹ with mass {first} at 0: {}",
            serde_json::to_string(&sl_semistable(&m, &Strategy::Spans)?)?
        );
    }

    let lines = GrassmannianMeasure {
        n: 3,
        q: 1,
        form: None,
        atoms: vec![
            atom(&[&[1, 0, 0]], q(1)),
            atom(&[&[0, 1, 0]], q(1)),
            atom(&[&[1, 1, 0]], q(1)),
            atom(&[&[0, 0, 1]], q(1)),
        ],
    };
    println!(
        "three collinear points and one more: {}",
        serde_json::to_string(&sl_semistable(&lines, &Strategy::Lattice { cap: 1000 })?)?
    );

    let isotropic = GrassmannianMeasure {
        n: 2,
        q: 1,
        form: Some(vec![qvec(&[0, 1]), qvec(&[1, 0])]),
        atoms: vec![atom(&[&[1, 0]], q(2)), atom(&[&[0, 1]], q(1))],
    };
    println!(
        "isotropic lines: {}",
        serde_json::to_string(&iso_semistable(&isotropic, &Strategy::Spans)?)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
