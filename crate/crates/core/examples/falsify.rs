//! Searching small orders for counterexamples to implications between
//! properties.

use quandles::checks::search_refinement_nonconnected;
use quandles::enumerate::{enumerate_quandles, falsify, EnumerationTask, Implication};

fn main() -> quandles::Result<()> {
    let implications = [
        "distinct-lengths=>latin",
        "latin=>distinct-lengths",
        "latin=>connected",
        "connected=>latin",
        "unique-fixed-point=>latin",
        "unique-fixed-point=>connected",
    ];
    for text in implications {
        let imp: Implication = text.parse()?;
        match falsify(imp, 6)? {
            Some(q) => println!("{text}: refuted at order {} by {:?}, profile {}", q.order(), q.rows(), q.profile()),
            None => println!("{text}: holds through order 6"),
        }
    }
    let tables = (1..=6).flat_map(|n| enumerate_quandles(&EnumerationTask::new(n)).unwrap());
    let found = search_refinement_nonconnected(tables);
    println!("non-connected quandles with a repeat-free R_i and unique fixed points, order <= 6: {}", found.len());
    Ok(())
}
