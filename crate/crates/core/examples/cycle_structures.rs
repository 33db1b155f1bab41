//! Permutations, cycle structures, orders and regular cycles.

use quandles::checks::check_shift_lemma;
use quandles::{CycleStructure, Permutation};

fn main() -> quandles::Result<()> {
    let p = Permutation::parse_cycles(9, "(2 3)(4 7 5 9 6 8)")?;
    println!("p = {p}");
    println!("cycle structure {}", p.cycle_structure());
    let (order, regular) = p.order_and_regular_cycle();
    println!("order {order}, has a cycle of that length: {regular}");
    println!("p^2 = {}, p^-1 = {}", p.pow(2), p.inverse());

    let s = Permutation::from_images(&[2, 1, 4, 3, 6, 5, 8, 7, 9])?;
    println!("conjugate by {s}: {} (same structure)", p.conjugate_by(&s)?);

    // No cycle of length lcm: order 6, longest cycle 3.
    let q = Permutation::parse_cycles(5, "(1 2)(3 4 5)")?;
    println!("{q}: {:?}", q.order_and_regular_cycle());

    let report = check_shift_lemma(&p);
    println!("{report}");
    for (k, v) in &report.details {
        println!("  {k}: {v}");
    }

    let cs: CycleStructure = "(1,3,6^4)".parse()?;
    println!("{cs} without its fixed point: {}", cs.without_unique_fixed_point().unwrap());
    Ok(())
}
