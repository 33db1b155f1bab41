//! Exhaustive enumeration: labelled counts, isomorphism classes, filters and
//! parallel runs.
//!
//! `cargo run --release --example enumerate -- 7`

use std::ops::ControlFlow;
use std::time::Instant;

use quandles::enumerate::{enumerate_parallel, for_each_quandle, EnumerationTask, Predicate};

fn main() -> quandles::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    println!("{:>2} {:>9} {:>7} {:>9} {:>6} {:>8}", "n", "labelled", "classes", "connected", "latin", "seconds");
    for n in 1..=max {
        let start = Instant::now();
        let mut labelled = 0u64;
        let _ = for_each_quandle(&EnumerationTask::new(n), |_| {
            labelled += 1;
            ControlFlow::Continue(())
        })?;
        let iso = EnumerationTask::new(n).up_to_iso(true);
        let classes = enumerate_parallel(&iso, 1)?.len();
        let connected = enumerate_parallel(&iso.clone().filter(Some(Predicate::Connected)), 1)?.len();
        let latin = enumerate_parallel(&iso.filter(Some(Predicate::Latin)), 1)?.len();
        println!(
            "{n:>2} {labelled:>9} {classes:>7} {connected:>9} {latin:>6} {:>8.2}",
            start.elapsed().as_secs_f64()
        );
    }
    // Restricting the first row splits the search into independent pieces.
    let pieces = EnumerationTask::new(5).split();
    let sizes: Vec<usize> = pieces.iter().map(|t| enumerate_parallel(t, 1).map(|v| v.len())).collect::<Result<_, _>>()?;
    println!("order 5 split by first row: {sizes:?}");
    Ok(())
}
