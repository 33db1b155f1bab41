//! Dihedral, affine and conjugation quandles, and their one-line specs.

use quandles::constructions::{affine, conjugation, dihedral, ConstructionSpec};
use quandles::orbit::is_connected;
use quandles::Permutation;

fn main() -> quandles::Result<()> {
    for n in 3..=6 {
        let q = dihedral(n);
        println!("dihedral({n}): latin {}, connected {}, profile {}", q.is_latin(), is_connected(&q), q.profile());
    }
    for t in 2..7 {
        match affine(7, t) {
            Ok(q) => println!("affine(7,{t}): latin {}, profile {}", q.is_latin(), q.profile()),
            Err(e) => println!("affine(7,{t}): {e}"),
        }
    }
    println!("affine(6,2): {}", affine(6, 2).unwrap_err());

    // Transpositions of S_4: six elements closed under conjugation.
    let gens = [Permutation::parse_cycles(4, "(1 2)")?, Permutation::parse_cycles(4, "(1 2 3 4)")?];
    let (q, members) = conjugation(&gens, &gens[0])?;
    println!("transpositions of S_4: order {}, profile {}", q.order(), q.profile());
    for (i, m) in members.iter().enumerate() {
        println!("  {} = {m}", i + 1);
    }

    for text in ["dihedral:5", "affine:9,2", "named:Q6_2", "conjugation:4|(1 2),(1 2 3 4)|(1 2 3 4)"] {
        let spec: ConstructionSpec = text.parse()?;
        let q = spec.build()?;
        println!("{spec}: order {}, latin {}", q.order(), q.is_latin());
    }
    Ok(())
}
