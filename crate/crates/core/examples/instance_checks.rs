//! Every instance checker on a few quandles, as text and as JSON.

use quandles::checks::Checker;
use quandles::constructions::{dihedral, named_example};

fn main() -> quandles::Result<()> {
    let checker = Checker::with_witness_cap(4);
    for name in ["Q6_2", "Q9_4", "Q3_nonlatin"] {
        let q = named_example(name)?;
        println!("{name}");
        for report in checker.all(&q) {
            println!("  {report}");
        }
    }
    let r = checker.proposition_refinement(&named_example("Q9_4")?, 1)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
    // Latin without distinct cycle lengths: the criterion is only sufficient.
    let d5 = checker.main_theorem(&dihedral(5));
    println!("dihedral(5): {d5}");
    Ok(())
}
