//! Table text formats, profile notation, catalog directories and the
//! summary reports built from them.
//!
//! Two table formats are understood:
//!
//! * **plain**: the order `n` on the first non-comment line, then `n` lines
//!   of `n` whitespace-separated integers; `#` starts a comment.
//! * **gap_matrix**: a bracketed list of bracketed rows of comma-separated
//!   integers, e.g. `[[1,3,2],[3,2,1],[2,1,3]]`, with arbitrary whitespace.
//!
//! In both, row `i`, column `j` holds `i*j`.
//!
//! A catalog directory holds one table per file. Files named `Q_<n>_<m>.qdl`
//! are catalog entries `Q_{n,m}`; any other `*.qdl` file is a user table.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::is_connected;
use crate::perm::CycleStructure;
use crate::quandle::{Profile, QuandleTable};

pub const CATALOG_EXTENSION: &str = "qdl";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableFormat {
    Plain,
    GapMatrix,
}

impl TableFormat {
    /// GAP matrix if the first significant character is `[`, plain
    /// otherwise.
    pub fn detect(text: &str) -> TableFormat {
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty());
        match first {
            Some(l) if l.starts_with('[') => TableFormat::GapMatrix,
            _ => TableFormat::Plain,
        }
    }
}

pub fn parse_table(text: &str, format: TableFormat) -> Result<QuandleTable> {
    let raw = match format {
        TableFormat::Plain => parse_plain(text)?,
        TableFormat::GapMatrix => parse_gap(text)?,
    };
    QuandleTable::validate(&raw)
}

/// [`parse_table`] with [`TableFormat::detect`].
pub fn parse_table_auto(text: &str) -> Result<QuandleTable> {
    parse_table(text, TableFormat::detect(text))
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Whitespace-separated tokens of each non-empty line with their 1-based
/// line and column.
fn plain_lines(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((content[..s].chars().count() + 1, &content[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((lineno + 1, tokens));
        }
    }
    out
}

fn parse_plain(text: &str) -> Result<Vec<Vec<i64>>> {
    let lines = plain_lines(text);
    let mut iter = lines.into_iter();
    let Some((line, header)) = iter.next() else {
        return Err(syntax(1, 1, "missing order line"));
    };
    if header.len() != 1 {
        return Err(syntax(line, header[1].0, "the order line must hold a single integer"));
    }
    let n: usize = header[0]
        .1
        .parse()
        .map_err(|_| syntax(line, header[0].0, format!("bad order {:?}", header[0].1)))?;
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let mut rows = Vec::with_capacity(n);
    let mut last_line = line;
    for (line, tokens) in iter {
        if rows.len() == n {
            return Err(syntax(line, tokens[0].0, "unexpected content after the last row"));
        }
        if tokens.len() != n {
            let col = tokens.get(n).map_or_else(|| tokens.last().unwrap().0, |t| t.0);
            return Err(syntax(line, col, format!("expected {n} entries, found {}", tokens.len())));
        }
        let row = tokens
            .iter()
            .map(|&(col, tok)| tok.parse::<i64>().map_err(|_| syntax(line, col, format!("bad entry {tok:?}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
        last_line = line;
    }
    if rows.len() != n {
        return Err(syntax(last_line + 1, 1, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

struct GapLexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl GapLexer<'_> {
    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.bump();
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(syntax(line, column, format!("expected {want:?}, found {c:?}"))),
            None => Err(syntax(line, column, format!("expected {want:?}, found end of input"))),
        }
    }

    fn peek_significant(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let mut digits = String::new();
        if self.chars.peek() == Some(&'-') {
            digits.push('-');
            self.bump();
        }
        while let Some(&c) = self.chars.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.bump();
        }
        digits.parse().map_err(|_| syntax(line, column, "expected an integer"))
    }
}

fn parse_gap(text: &str) -> Result<Vec<Vec<i64>>> {
    let mut lx = GapLexer { chars: text.chars().peekable(), line: 1, column: 1 };
    lx.expect('[')?;
    let mut rows = Vec::new();
    if lx.peek_significant() == Some(']') {
        lx.bump();
    } else {
        loop {
            lx.expect('[')?;
            let mut row = Vec::new();
            if lx.peek_significant() == Some(']') {
                lx.bump();
            } else {
                loop {
                    row.push(lx.integer()?);
                    match lx.peek_significant() {
                        Some(',') => {
                            lx.bump();
                        }
                        _ => {
                            lx.expect(']')?;
                            break;
                        }
                    }
                }
            }
            rows.push(row);
            match lx.peek_significant() {
                Some(',') => {
                    lx.bump();
                }
                _ => {
                    lx.expect(']')?;
                    break;
                }
            }
        }
    }
    // Allow a trailing GAP statement terminator.
    if lx.peek_significant() == Some(';') {
        lx.bump();
    }
    if let Some(c) = lx.peek_significant() {
        return Err(syntax(lx.line, lx.column, format!("unexpected {c:?} after the matrix")));
    }
    if rows.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(rows)
}

/// Writes a table; [`parse_table`] reads it back unchanged.
pub fn serialize_table(q: &QuandleTable, format: TableFormat) -> String {
    let rows = q.rows();
    let mut out = String::new();
    match format {
        TableFormat::Plain => {
            let _ = writeln!(out, "{}", q.order());
            for row in rows {
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        TableFormat::GapMatrix => {
            out.push('[');
            for (pos, row) in rows.iter().enumerate() {
                if pos > 0 {
                    out.push(',');
                }
                let cells: Vec<String> = row.iter().map(usize::to_string).collect();
                let _ = write!(out, "[{}]", cells.join(","));
            }
            out.push(']');
        }
    }
    out
}

/// A cycle structure to be rendered, optionally without its fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileNotation {
    pub structure: CycleStructure,
    /// Only legal when the structure has exactly one fixed point.
    pub omit_unique_fixed_point: bool,
}

impl ProfileNotation {
    pub fn new(structure: CycleStructure, omit_unique_fixed_point: bool) -> Self {
        ProfileNotation { structure, omit_unique_fixed_point }
    }
}

/// Renders `(1^2,4)` style text; with omission, the single 1-cycle is
/// dropped, so `(1)` becomes `()`.
pub fn render_profile(pn: &ProfileNotation) -> Result<String> {
    if !pn.omit_unique_fixed_point {
        return Ok(pn.structure.to_string());
    }
    pn.structure
        .without_unique_fixed_point()
        .map(|s| s.to_string())
        .ok_or_else(|| Error::IllegalOmission(pn.structure.to_string()))
}

/// Inverse of [`render_profile`]: with `omitted`, one fixed point is added
/// back.
pub fn parse_profile(text: &str, omitted: bool) -> Result<ProfileNotation> {
    let parsed: CycleStructure = text.parse()?;
    if omitted {
        if parsed.fixed_point_count() != 0 {
            return Err(syntax(1, 1, format!("{text:?} lists a fixed point although it is omitted")));
        }
        Ok(ProfileNotation::new(parsed.with_extra_fixed_point(), true))
    } else {
        Ok(ProfileNotation::new(parsed, false))
    }
}

/// `"Q_{6,2}"` or `"Q_6_2"` → `(6, 2)`.
pub fn parse_catalog_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("Q_")?;
    let (n, m) = match rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        Some(inner) => inner.split_once(',')?,
        None => rest.split_once('_')?,
    };
    let (n, m) = (n.trim().parse().ok()?, m.trim().parse().ok()?);
    (n > 0 && m > 0).then_some((n, m))
}

pub fn catalog_name(n: usize, m: usize) -> String {
    format!("Q_{{{n},{m}}}")
}

/// A named table with its derived properties cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    /// `(n, m)` when the name is a catalog name `Q_{n,m}`.
    pub index: Option<(usize, usize)>,
    pub table: QuandleTable,
    pub connected: bool,
    pub latin: bool,
    pub distinct_lengths: bool,
    pub unique_fixed_point: bool,
    pub profile: Profile,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, table: QuandleTable) -> Self {
        let name = name.into();
        let index = parse_catalog_name(&name);
        let name = index.map_or(name, |(n, m)| catalog_name(n, m));
        CatalogEntry {
            index,
            connected: is_connected(&table),
            latin: table.is_latin(),
            distinct_lengths: table.all_columns_distinct_lengths(),
            unique_fixed_point: table.all_unique_fixed_point(),
            profile: table.profile(),
            table,
            name,
        }
    }

    /// The cached fields agree with a fresh computation.
    pub fn is_coherent(&self) -> bool {
        *self == CatalogEntry::new(self.name.clone(), self.table.clone())
    }

    /// Profile text with the unique fixed point dropped when the profile is
    /// a single structure with exactly one fixed point, full text otherwise.
    pub fn appendix_profile(&self) -> String {
        match self.profile.common() {
            Some(cs) => render_profile(&ProfileNotation::new(cs.clone(), cs.fixed_point_count() == 1))
                .expect("omission checked"),
            None => self.profile.to_string(),
        }
    }

    fn record(&self) -> EntryRecord<'_> {
        EntryRecord {
            name: &self.name,
            order: self.table.order(),
            connected: self.connected,
            latin: self.latin,
            distinct_lengths: self.distinct_lengths,
            unique_fixed_point: self.unique_fixed_point,
            profile: self.profile.to_string(),
        }
    }
}

#[derive(Serialize)]
struct EntryRecord<'a> {
    name: &'a str,
    order: usize,
    connected: bool,
    latin: bool,
    distinct_lengths: bool,
    unique_fixed_point: bool,
    profile: String,
}

/// JSON record for one catalog entry.
pub fn entry_record(entry: &CatalogEntry) -> String {
    serde_json::to_string(&entry.record()).expect("serializable")
}

/// Reads every `*.qdl` file of `dir`, in filename order. Files named
/// `Q_<n>_<m>.qdl` must hold a table of order `n`.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>> {
    let io = |path: &Path, e: std::io::Error| Error::Io { path: path.display().to_string(), message: e.to_string() };
    let mut files: Vec<std::path::PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == CATALOG_EXTENSION))
        .collect();
    files.sort();
    files
        .par_iter()
        .map(|path| {
            let text = std::fs::read_to_string(path).map_err(|e| io(path, e))?;
            let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            let table = parse_table_auto(&text).map_err(|e| match e {
                Error::Syntax { line, column, message } => {
                    Error::Syntax { line, column, message: format!("{}: {message}", path.display()) }
                }
                other => other,
            })?;
            if let Some((n, _)) = parse_catalog_name(&stem) {
                if n != table.order() {
                    return Err(syntax(1, 1, format!("{}: name says order {n}, table has order {}", path.display(), table.order())));
                }
            }
            Ok(CatalogEntry::new(stem, table))
        })
        .collect()
}

/// Writes tables one per line in GAP matrix form.
pub fn write_spill(path: &Path, tables: &[QuandleTable]) -> Result<()> {
    let mut text = String::new();
    for q in tables {
        text.push_str(&serialize_table(q, TableFormat::GapMatrix));
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_spill(path: &Path) -> Result<Vec<QuandleTable>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_table(l, TableFormat::GapMatrix))
        .collect()
}

/// A non-latin connected entry whose right translations all have a unique
/// fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exception {
    pub name: String,
    pub order: usize,
    pub profile: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub total: usize,
    pub connected: usize,
    pub latin: usize,
    pub latin_distinct_lengths: usize,
    pub latin_with_repeats: usize,
    pub nonlatin_connected_unique_fixed_point: usize,
    /// Sorted by order, profile, name.
    pub exceptions: Vec<Exception>,
}

pub fn catalog_stats(entries: &[CatalogEntry]) -> StatsReport {
    let mut report = StatsReport { total: entries.len(), ..StatsReport::default() };
    for e in entries {
        report.connected += e.connected as usize;
        if e.latin {
            report.latin += 1;
            if e.distinct_lengths {
                report.latin_distinct_lengths += 1;
            } else {
                report.latin_with_repeats += 1;
            }
        } else if e.connected && e.unique_fixed_point {
            report.nonlatin_connected_unique_fixed_point += 1;
            report.exceptions.push(Exception {
                name: e.name.clone(),
                order: e.table.order(),
                profile: e.profile.to_string(),
            });
        }
    }
    report.exceptions.sort_by(|a, b| (a.order, &a.profile, &a.name).cmp(&(b.order, &b.profile, &b.name)));
    report
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("total", self.total),
            ("connected", self.connected),
            ("latin", self.latin),
            ("latin, distinct cycle lengths", self.latin_distinct_lengths),
            ("latin, repeated cycle lengths", self.latin_with_repeats),
            ("non-latin connected, unique fixed points", self.nonlatin_connected_unique_fixed_point),
        ];
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in rows {
            writeln!(f, "{k:<width$}  {v:>6}")?;
        }
        for e in &self.exceptions {
            writeln!(f, "  {} order={} profile={}", e.name, e.order, e.profile)?;
        }
        Ok(())
    }
}

/// Connected entries whose profile has no repeated cycle length, grouped by
/// order and profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepeatFreeRow {
    pub n: usize,
    pub m: Vec<usize>,
    /// Fixed point omitted.
    pub profile: String,
}

/// Distinct profiles of latin entries whose profile repeats a cycle length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepeatedProfilesRow {
    pub n: usize,
    /// Fixed point omitted, sorted.
    pub profiles: Vec<String>,
}

/// Catalog indices with runs of three or more collapsed: `4-6,9,10`.
pub fn compress_indices(m: &[usize]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j + 1 < m.len() && m[j + 1] == m[j] + 1 {
            j += 1;
        }
        if j - i >= 2 {
            out.push(format!("{}-{}", m[i], m[j]));
        } else {
            out.extend(m[i..=j].iter().map(usize::to_string));
        }
        i = j + 1;
    }
    out.join(",")
}

/// Connected entries with repeat-free profiles, grouped by `(n, profile)`
/// and sorted by `n`, then profile text. Every such entry needs a catalog
/// name.
pub fn repeat_free_table(entries: &[CatalogEntry]) -> Result<Vec<RepeatFreeRow>> {
    let mut groups: BTreeMap<(usize, String), Vec<usize>> = BTreeMap::new();
    for e in entries.iter().filter(|e| e.connected && e.distinct_lengths) {
        let (n, m) = e.index.ok_or_else(|| Error::MissingCatalogName(e.name.clone()))?;
        groups.entry((n, e.appendix_profile())).or_default().push(m);
    }
    Ok(groups
        .into_iter()
        .map(|((n, profile), mut m)| {
            m.sort_unstable();
            m.dedup();
            RepeatFreeRow { n, m, profile }
        })
        .collect())
}

/// Per order, the distinct profiles of latin entries whose profile repeats a
/// cycle length.
pub fn repeated_profiles_table(entries: &[CatalogEntry]) -> Vec<RepeatedProfilesRow> {
    let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for e in entries.iter().filter(|e| e.latin && !e.distinct_lengths) {
        groups.entry(e.table.order()).or_default().push(e.appendix_profile());
    }
    groups
        .into_iter()
        .map(|(n, mut profiles)| {
            profiles.sort();
            profiles.dedup();
            RepeatedProfilesRow { n, profiles }
        })
        .collect()
}

/// Both appendix tables.
pub fn appendix_tables(entries: &[CatalogEntry]) -> Result<(Vec<RepeatFreeRow>, Vec<RepeatedProfilesRow>)> {
    Ok((repeat_free_table(entries)?, repeated_profiles_table(entries)))
}

pub fn render_repeat_free_table(rows: &[RepeatFreeRow]) -> String {
    let m_texts: Vec<String> = rows.iter().map(|r| compress_indices(&r.m)).collect();
    let mw = m_texts.iter().map(String::len).chain([1]).max().unwrap();
    let mut out = format!("{:>3}  {:<mw$}  profile\n", "n", "m");
    for (r, m) in rows.iter().zip(&m_texts) {
        let _ = writeln!(out, "{:>3}  {:<mw$}  {}", r.n, m, r.profile);
    }
    out
}

pub fn render_repeated_profiles_table(rows: &[RepeatedProfilesRow]) -> String {
    let mut out = String::from("  n  profiles\n");
    for r in rows {
        let _ = writeln!(out, "{:>3}  {}", r.n, r.profiles.join(" "));
    }
    out
}
