//! Orbits of the right multiplication group and connectedness.

use quandles::constructions::{dihedral, named_example};
use quandles::orbit::{check_conjugation_identity, connected_profile, orbits};

fn main() -> quandles::Result<()> {
    for (name, q) in [("dihedral(4)", dihedral(4)), ("dihedral(5)", dihedral(5)), ("Q6_2", named_example("Q6_2")?)] {
        let parts = orbits(&q);
        println!("{name}: orbits {:?}", parts.blocks());
        match connected_profile(&q) {
            Ok(cs) => println!("  connected, every right translation has structure {cs}"),
            Err(e) => println!("  {e}"),
        }
        println!("  {}", check_conjugation_identity(&q));
    }
    Ok(())
}
