//! The `quandles` command line.
//!
//! Exit status: 0 on success, 1 when validation or a check fails, 2 on usage
//! errors (bad arguments, unreadable inputs). Results go to standard output,
//! diagnostics to standard error. Every subcommand accepts
//! `--format records` for one JSON object per line.

use std::collections::BTreeMap;
use std::io::Read;
use std::ops::ControlFlow;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{
    self, catalog_stats, entry_record, load_catalog, render_repeat_free_table, render_repeated_profiles_table,
    serialize_table, TableFormat,
};
use crate::checks::{search_refinement_nonconnected, sufficient_condition_holds, Checker};
use crate::constructions::ConstructionSpec;
use crate::enumerate::{enumerate_parallel, for_each_quandle, EnumerationTask, Predicate, DEFAULT_ORDER_GUARD};
use crate::error::Error;
use crate::orbit::orbits;
use crate::quandle::QuandleTable;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Records,
}

#[derive(Debug, Parser)]
#[command(name = "quandles", about = "Finite quandle tables: validation, analysis, enumeration and checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a table and report the first violated axiom.
    Check {
        /// Table file, `-` for standard input, or a construction spec.
        input: String,
    },
    /// Print the properties of a quandle.
    Analyze {
        /// Table file, `-` for standard input, or a construction spec
        /// (`dihedral:5`, `affine:9,4`, `named:Q9_4`).
        input: String,
    },
    /// Enumerate all quandles of an order.
    Enumerate {
        order: usize,
        /// One representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        /// Keep only tables with this property.
        #[arg(long, value_parser = parse_predicate)]
        filter: Option<Predicate>,
        /// Worker threads; above 1 the output is sorted after merging.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print the tables, not just the count.
        #[arg(long)]
        emit: bool,
        /// Also write the tables to this file, one GAP matrix per line.
        #[arg(long)]
        spill: Option<PathBuf>,
        /// Largest order accepted.
        #[arg(long, default_value_t = DEFAULT_ORDER_GUARD)]
        guard: usize,
    },
    /// Run every checker over all quandles of order up to N.
    Verify {
        max_order: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER_GUARD)]
        guard: usize,
    },
    /// Catalog statistics and appendix tables for a catalog directory.
    Report { dir: PathBuf },
    /// Print a constructed table in plain format.
    Construct { spec: String },
}

fn parse_predicate(s: &str) -> Result<Predicate, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutput {
    fn ok(stdout: String) -> Self {
        CliOutput { status: 0, stdout, stderr: String::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        CliOutput { status: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
    }

    fn failure(stdout: String, message: impl std::fmt::Display) -> Self {
        CliOutput { status: 1, stdout, stderr: format!("error: {message}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdin),
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if status == 0 {
                CliOutput::ok(text)
            } else {
                CliOutput { status, stdout: String::new(), stderr: text }
            }
        }
    }
}

enum Input {
    Table(QuandleTable),
    Invalid(Error),
}

/// `-` reads plain text from stdin; `KIND:ARGS` with a known kind is a
/// construction; anything else is a file path.
fn read_input(arg: &str, stdin: &mut dyn Read) -> Result<Input, CliOutput> {
    let text = if arg == "-" {
        let mut text = String::new();
        stdin.read_to_string(&mut text).map_err(|e| CliOutput::usage(format!("reading stdin: {e}")))?;
        text
    } else if let Some((kind, _)) = arg.split_once(':').filter(|(k, _)| ["dihedral", "affine", "named", "conjugation"].contains(k)) {
        let spec: ConstructionSpec = arg.parse().map_err(|e| CliOutput::usage(format!("{kind} spec: {e}")))?;
        return Ok(match spec.build() {
            Ok(q) => Input::Table(q),
            Err(e @ (Error::NotAUnit { .. } | Error::UnknownExample(_) | Error::BadConstruction { .. })) => {
                return Err(CliOutput::usage(e));
            }
            Err(e) => Input::Invalid(e),
        });
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliOutput::usage(format!("{arg}: {e}")))?
    };
    let format = if arg == "-" { TableFormat::Plain } else { TableFormat::detect(&text) };
    Ok(match catalog::parse_table(&text, format) {
        Ok(q) => Input::Table(q),
        Err(e) => Input::Invalid(e),
    })
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> CliOutput {
    let records = cli.format == OutputFormat::Records;
    match &cli.command {
        Command::Check { input } => check(input, records, stdin),
        Command::Analyze { input } => analyze(input, records, stdin),
        Command::Enumerate { order, iso, filter, jobs, emit, spill, guard } => {
            let task = EnumerationTask::new(*order).up_to_iso(*iso).filter(*filter).order_guard(*guard);
            enumerate(&task, *jobs, *emit, spill.as_deref(), records)
        }
        Command::Verify { max_order, jobs, guard } => verify(*max_order, *jobs, *guard, records),
        Command::Report { dir } => report(dir, records),
        Command::Construct { spec } => construct(spec, records),
    }
}

fn check(input: &str, records: bool, stdin: &mut dyn Read) -> CliOutput {
    match read_input(input, stdin) {
        Err(out) => out,
        Ok(Input::Table(q)) => CliOutput::ok(if records {
            format!("{}\n", json!({ "input": input, "valid": true, "order": q.order() }))
        } else {
            format!("valid quandle of order {}\n", q.order())
        }),
        Ok(Input::Invalid(e)) => {
            let stdout = if records {
                format!("{}\n", json!({ "input": input, "valid": false, "error": e.to_string() }))
            } else {
                format!("invalid: {e}\n")
            };
            CliOutput::failure(stdout, e)
        }
    }
}

/// Everything `analyze` prints, in output order.
#[derive(Serialize)]
struct Analysis {
    order: usize,
    connected: bool,
    latin: bool,
    profile: String,
    theorem_hypothesis: bool,
    theorem_conclusion: bool,
    unique_fixed_point: bool,
    hayashi: bool,
    orbits: usize,
}

pub fn analyze_table(q: &QuandleTable) -> String {
    let a = analysis(q);
    let yn = |b: bool| if b { "yes" } else { "no" };
    format!(
        "order={} connected={} latin={} profile={} theorem-hypothesis={} theorem-conclusion={} unique-fixed-point={} hayashi={} orbits={}\n",
        a.order,
        yn(a.connected),
        yn(a.latin),
        a.profile,
        yn(a.theorem_hypothesis),
        yn(a.theorem_conclusion),
        yn(a.unique_fixed_point),
        yn(a.hayashi),
        a.orbits,
    )
}

fn analysis(q: &QuandleTable) -> Analysis {
    let parts = orbits(q);
    Analysis {
        order: q.order(),
        connected: parts.len() == 1,
        latin: q.is_latin(),
        profile: q.profile().to_string(),
        theorem_hypothesis: sufficient_condition_holds(q),
        theorem_conclusion: q.is_latin(),
        unique_fixed_point: q.all_unique_fixed_point(),
        hayashi: q.right_translations().iter().all(|r| r.order_and_regular_cycle().1),
        orbits: parts.len(),
    }
}

fn analyze(input: &str, records: bool, stdin: &mut dyn Read) -> CliOutput {
    match read_input(input, stdin) {
        Err(out) => out,
        Ok(Input::Invalid(e)) => CliOutput::failure(String::new(), e),
        Ok(Input::Table(q)) => CliOutput::ok(if records {
            format!("{}\n", serde_json::to_string(&analysis(&q)).expect("serializable"))
        } else {
            analyze_table(&q)
        }),
    }
}

fn enumerate(task: &EnumerationTask, jobs: usize, emit: bool, spill: Option<&std::path::Path>, records: bool) -> CliOutput {
    let keep = emit || spill.is_some();
    let mut tables = Vec::new();
    let mut count = 0usize;
    let result = if jobs > 1 {
        enumerate_parallel(task, jobs).map(|all| {
            count = all.len();
            if keep {
                tables = all;
            }
        })
    } else {
        for_each_quandle(task, |q| {
            count += 1;
            if keep {
                tables.push(q);
            }
            ControlFlow::Continue(())
        })
        .map(|_| ())
    };
    if let Err(e) = result {
        return CliOutput::usage(e);
    }
    if let Some(path) = spill {
        if let Err(e) = catalog::write_spill(path, &tables) {
            return CliOutput::usage(e);
        }
    }
    let mut out = String::new();
    if emit {
        for q in &tables {
            if records {
                out.push_str(&json!({ "order": q.order(), "table": q.rows() }).to_string());
                out.push('\n');
            } else {
                out.push_str(&serialize_table(q, TableFormat::Plain));
                out.push('\n');
            }
        }
    }
    if records {
        out.push_str(&json!({ "order": task.order, "up_to_iso": task.up_to_iso, "count": count }).to_string());
        out.push('\n');
    } else {
        out.push_str(&format!("{count} quandles\n"));
    }
    CliOutput::ok(out)
}

#[derive(Default, Serialize)]
struct CheckTally {
    tables: usize,
    instances: usize,
    hypothesis_held: usize,
    inconsistent: usize,
    first_counterexample: Option<Vec<Vec<usize>>>,
}

fn verify(max_order: usize, jobs: usize, guard: usize, records: bool) -> CliOutput {
    use rayon::prelude::*;

    let checker = Checker::default();
    let mut tallies: BTreeMap<String, CheckTally> = BTreeMap::new();
    let mut refinement_hits = 0usize;
    let mut out = String::new();
    for n in 1..=max_order {
        let task = EnumerationTask::new(n).order_guard(guard);
        let tables = if jobs > 1 {
            enumerate_parallel(&task, jobs)
        } else {
            crate::enumerate::enumerate_quandles(&task)
        };
        let tables = match tables {
            Ok(t) => t,
            Err(e) => return CliOutput::usage(e),
        };
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
        let reports: Vec<_> = pool.install(|| tables.par_iter().map(|q| checker.all(q)).collect());
        for (q, reps) in tables.iter().zip(reports) {
            for r in reps {
                let t = tallies.entry(r.check_name.clone()).or_default();
                t.tables += 1;
                t.instances += r.counted_instances;
                t.hypothesis_held += r.hypothesis_holds as usize;
                if !r.passed() {
                    t.inconsistent += 1;
                    t.first_counterexample.get_or_insert_with(|| q.rows());
                }
            }
        }
        refinement_hits += search_refinement_nonconnected(tables).len();
        if !records {
            out.push_str(&format!("order {n}: checked\n"));
        }
    }
    let failures: usize = tallies.values().map(|t| t.inconsistent).sum();
    if records {
        for (name, t) in &tallies {
            let mut v = serde_json::to_value(t).expect("serializable");
            v["check"] = json!(name);
            out.push_str(&format!("{v}\n"));
        }
        out.push_str(&format!(
            "{}\n",
            json!({ "max_order": max_order, "inconsistent": failures, "refinement_nonconnected": refinement_hits })
        ));
    } else {
        for (name, t) in &tallies {
            out.push_str(&format!(
                "{name}: {} {} tables, {} instances, hypothesis held {}, inconsistent {}\n",
                if t.inconsistent == 0 { "PASS" } else { "FAIL" },
                t.tables,
                t.instances,
                t.hypothesis_held,
                t.inconsistent
            ));
            if let Some(rows) = &t.first_counterexample {
                out.push_str(&format!("  counterexample: {rows:?}\n"));
            }
        }
        out.push_str(&format!("non-connected quandles meeting the refinement hypotheses: {refinement_hits}\n"));
    }
    if failures == 0 {
        CliOutput::ok(out)
    } else {
        CliOutput::failure(out, format!("{failures} inconsistent check results"))
    }
}

fn report(dir: &std::path::Path, records: bool) -> CliOutput {
    let entries = match load_catalog(dir) {
        Ok(e) => e,
        Err(e @ Error::Io { .. }) => return CliOutput::usage(e),
        Err(e) => return CliOutput::failure(String::new(), e),
    };
    let stats = catalog_stats(&entries);
    // User tables without a catalog name stay out of the repeat-free table.
    let named: Vec<_> = entries.iter().filter(|e| e.index.is_some()).cloned().collect();
    let table5 = catalog::repeat_free_table(&named).expect("all entries named");
    let table6 = catalog::repeated_profiles_table(&entries);
    let mut out = String::new();
    if records {
        for e in &entries {
            out.push_str(&entry_record(e));
            out.push('\n');
        }
        out.push_str(&format!("{}\n", json!({ "stats": stats })));
        for r in &table5 {
            out.push_str(&format!("{}\n", json!({ "repeat_free": r })));
        }
        for r in &table6 {
            out.push_str(&format!("{}\n", json!({ "repeated_profiles": r })));
        }
    } else {
        out.push_str(&stats.to_string());
        out.push_str("\nconnected quandles whose profile has no repeats (fixed point omitted)\n");
        out.push_str(&render_repeat_free_table(&table5));
        out.push_str("\nprofiles of latin quandles with repeats (fixed point omitted)\n");
        out.push_str(&render_repeated_profiles_table(&table6));
    }
    CliOutput::ok(out)
}

fn construct(spec: &str, records: bool) -> CliOutput {
    let q = match spec.parse::<ConstructionSpec>().and_then(|s| s.build()) {
        Ok(q) => q,
        Err(e) => return CliOutput::usage(e),
    };
    CliOutput::ok(if records {
        format!("{}\n", json!({ "spec": spec, "order": q.order(), "table": q.rows() }))
    } else {
        serialize_table(&q, TableFormat::Plain)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CliOutput {
        run_args(std::iter::once("quandles").chain(args.iter().copied()), &mut std::io::empty())
    }

    #[test]
    fn analyze_named_example() {
        let out = run(&["analyze", "named:Q6_2"]);
        assert_eq!(out.status, 0);
        assert!(out.stdout.contains("connected=yes latin=no profile=(1^2,4) theorem-hypothesis=no"), "{}", out.stdout);
        assert_eq!(out.stdout, run(&["analyze", "named:Q6_2"]).stdout);
    }

    #[test]
    fn enumerate_count() {
        let out = run(&["enumerate", "3", "--iso"]);
        assert_eq!(out.stdout, "3 quandles\n");
        assert_eq!(run(&["enumerate", "3", "--iso", "--jobs", "3"]).stdout, "3 quandles\n");
    }

    #[test]
    fn verify_small() {
        let out = run(&["verify", "4"]);
        assert_eq!(out.status, 0, "{}", out.stdout);
        assert!(out.stdout.contains("main_theorem: PASS"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["enumerate"]).status, 2);
        assert_eq!(run(&["enumerate", "12"]).status, 2);
        assert_eq!(run(&["construct", "affine:6,2"]).status, 2);
        assert_eq!(run(&["analyze", "/no/such/file"]).status, 2);
        assert_eq!(run(&["frobnicate"]).status, 2);
    }

    #[test]
    fn check_stdin() {
        let mut input = "2\n1 2\n1 2\n".as_bytes();
        let out = run_args(["quandles", "check", "-"], &mut input);
        assert_eq!(out.status, 1);
        assert!(out.stdout.starts_with("invalid: "));
        let mut input = "3\n1 3 2\n3 2 1\n2 1 3\n".as_bytes();
        let out = run_args(["quandles", "check", "-"], &mut input);
        assert_eq!((out.status, out.stdout.as_str()), (0, "valid quandle of order 3\n"));
    }

    #[test]
    fn construct_plain() {
        let out = run(&["construct", "dihedral:3"]);
        assert_eq!(out.stdout, "3\n1 3 2\n3 2 1\n2 1 3\n");
        let out = run(&["--format", "records", "construct", "dihedral:3"]);
        assert!(out.stdout.contains("\"table\":[[1,3,2],[3,2,1],[2,1,3]]"));
    }
}
