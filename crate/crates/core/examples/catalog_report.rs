//! Builds a catalog directory from the connected quandles of small order,
//! reads it back and prints the statistics and the two profile tables.
//!
//! `cargo run --release --example catalog_report -- [DIR]` reads an existing
//! directory of `Q_<n>_<m>.qdl` files instead.

use quandles::catalog::{
    appendix_tables, catalog_name, catalog_stats, load_catalog, render_repeat_free_table,
    render_repeated_profiles_table, serialize_table, TableFormat,
};
use quandles::enumerate::{enumerate_quandles, EnumerationTask, Predicate};

fn main() -> quandles::Result<()> {
    let scratch = tempfile::tempdir().expect("temp dir");
    let dir = match std::env::args().nth(1) {
        Some(d) => std::path::PathBuf::from(d),
        None => {
            for n in 1..=7 {
                let task = EnumerationTask::new(n).up_to_iso(true).filter(Some(Predicate::Connected));
                for (m, q) in enumerate_quandles(&task)?.iter().enumerate() {
                    let path = scratch.path().join(format!("{}.qdl", catalog_name(n, m + 1)));
                    std::fs::write(path, serialize_table(q, TableFormat::GapMatrix)).expect("write");
                }
            }
            scratch.path().to_path_buf()
        }
    };
    let entries = load_catalog(&dir)?;
    print!("{}", catalog_stats(&entries));
    let (repeat_free, repeated) = appendix_tables(&entries)?;
    println!();
    print!("{}", render_repeat_free_table(&repeat_free));
    println!();
    print!("{}", render_repeated_profiles_table(&repeated));
    Ok(())
}
