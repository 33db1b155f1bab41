//! The two order-6 and order-9 tables from the literature and the small
//! order-3 table whose left translation is not a bijection.

use quandles::constructions::{named_example, NAMED_EXAMPLES};
use quandles::orbit::is_connected;

fn main() -> quandles::Result<()> {
    for name in NAMED_EXAMPLES {
        let q = named_example(name)?;
        println!("{name}: order {}, connected {}, latin {}", q.order(), is_connected(&q), q.is_latin());
        println!("  profile {}", q.profile());
        println!("  R_1 = {}", q.right_translation(1)?);
        let l1 = q.left_translation_map(1)?;
        match &l1.perm {
            Some(p) => println!("  L_1 = {p}"),
            None => println!("  L_1 = {:?} (not a bijection)", l1.map),
        }
    }
    Ok(())
}
