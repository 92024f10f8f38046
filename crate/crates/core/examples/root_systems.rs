// Weyl groups, roots and the ♯ involution of the three rank-two systems.

use deltapoly::coxeter::{build_root_system, dominant_representative, sharp, RootSystemName};
use deltapoly::rational::{fmt_rational, qvec, Q};

fn show(v: &[Q]) -> String {
    format!(
        "({})",
        v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
    )
}

pub fn run_example() -> deltapoly::Result<()> {
    for name in RootSystemName::ALL {
        let rs = build_root_system(name);
        let w0 = rs.longest_element();
        println!(
            "{name:?}: |W| = {}, w0 = {:?} (length {})",
            rs.weyl().len(),
            w0.word,
            w0.length
        );
        let roots: Vec<String> = rs.positive_roots().iter().map(|r| show(r)).collect();
        println!("  positive roots {}", roots.join(" "));

        let v = match name {
            RootSystemName::A2 => qvec(&[-1, 3, -2]),
            _ => qvec(&[-2, 1]),
        };
        let (h, w) = dominant_representative(&rs, &v);
        println!("  {} = w{:?} · {}", show(&v), w.word, show(h.coords()));
        println!(
            "  {}♯ = {}",
            show(h.coords()),
            show(sharp(&rs, &h).coords())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> deltapoly::Result<()> {
    run_example()
}
