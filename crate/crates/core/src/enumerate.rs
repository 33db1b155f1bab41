//! Exhaustive generation of small quandles, canonical forms, isomorphism
//! tests and counterexample search.
//!
//! The search fills the table one column (right translation) at a time.
//! Right self-distributivity is equivalent to `R_k R_j R_k⁻¹ = R_{j*k}` for
//! all `j`, `k`, so whenever two columns are known the column at index
//! `R_k(j)` is forced; the search propagates these forced columns to a fixed
//! point and only branches on columns nothing determines yet. Every branch is
//! a permutation fixing its own index, which takes care of idempotency and
//! right-invertibility.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::{is_connected, orbits};
use crate::perm::Permutation;
use crate::quandle::QuandleTable;

/// Default upper bound on the order accepted by the enumerator.
pub const DEFAULT_ORDER_GUARD: usize = 8;

/// Named table properties usable as filters and in implications.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Latin,
    Connected,
    /// Every right translation has cycles of distinct lengths.
    DistinctLengths,
    /// Every right translation has exactly one fixed point.
    UniqueFixedPoint,
}

impl Predicate {
    pub const ALL: [Predicate; 4] =
        [Predicate::Latin, Predicate::Connected, Predicate::DistinctLengths, Predicate::UniqueFixedPoint];

    pub fn holds(self, q: &QuandleTable) -> bool {
        match self {
            Predicate::Latin => q.is_latin(),
            Predicate::Connected => is_connected(q),
            Predicate::DistinctLengths => q.all_columns_distinct_lengths(),
            Predicate::UniqueFixedPoint => q.all_unique_fixed_point(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Latin => "latin",
            Predicate::Connected => "connected",
            Predicate::DistinctLengths => "distinct-lengths",
            Predicate::UniqueFixedPoint => "unique-fixed-point",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::ALL.into_iter().find(|p| p.name() == s.trim()).ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: format!(
                "unknown predicate {s:?}; expected one of latin, connected, distinct-lengths, unique-fixed-point"
            ),
        })
    }
}

/// `hypothesis ⇒ conclusion`, written `distinct-lengths=>latin`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Implication {
    pub hypothesis: Predicate,
    pub conclusion: Predicate,
}

impl Implication {
    pub fn new(hypothesis: Predicate, conclusion: Predicate) -> Self {
        Implication { hypothesis, conclusion }
    }

    /// Hypothesis holds and conclusion fails.
    pub fn refuted_by(&self, q: &QuandleTable) -> bool {
        self.hypothesis.holds(q) && !self.conclusion.holds(q)
    }
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=>{}", self.hypothesis, self.conclusion)
    }
}

impl FromStr for Implication {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (h, c) = s.split_once("=>").ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: format!("expected HYPOTHESIS=>CONCLUSION, got {s:?}"),
        })?;
        Ok(Implication { hypothesis: h.parse()?, conclusion: c.parse()? })
    }
}

/// What to enumerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub order: usize,
    /// Emit one canonical representative per isomorphism class.
    pub up_to_iso: bool,
    pub predicate_filter: Option<Predicate>,
    /// Required leading entries of the first row: `1*1, 1*2, ...` (1-based).
    pub partition_prefix: Vec<usize>,
    /// Largest order accepted; raise it explicitly for bigger runs.
    pub order_guard: usize,
}

impl EnumerationTask {
    pub fn new(order: usize) -> Self {
        EnumerationTask {
            order,
            up_to_iso: false,
            predicate_filter: None,
            partition_prefix: Vec::new(),
            order_guard: DEFAULT_ORDER_GUARD,
        }
    }

    pub fn up_to_iso(mut self, yes: bool) -> Self {
        self.up_to_iso = yes;
        self
    }

    pub fn filter(mut self, p: Option<Predicate>) -> Self {
        self.predicate_filter = p;
        self
    }

    pub fn prefix(mut self, prefix: Vec<usize>) -> Self {
        self.partition_prefix = prefix;
        self
    }

    pub fn order_guard(mut self, guard: usize) -> Self {
        self.order_guard = guard;
        self
    }

    fn check(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::EmptyTable);
        }
        if self.order > self.order_guard || self.order > 255 {
            return Err(Error::OrderTooLarge { order: self.order, guard: self.order_guard.min(255) });
        }
        if let Some(&bad) = self.partition_prefix.iter().find(|&&v| !(1..=self.order).contains(&v)) {
            return Err(Error::ElementOutOfRange { element: bad, order: self.order });
        }
        if self.partition_prefix.len() > self.order {
            return Err(Error::ElementOutOfRange { element: self.partition_prefix.len(), order: self.order });
        }
        Ok(())
    }

    /// Splits into subtasks by extending the first-row prefix by one entry.
    /// The subtasks cover disjoint parts of the search space and together
    /// cover all of it. Values ruled out by idempotency (`1*1 = 1`, and
    /// `1*j != j` for `j != 1`) are not offered.
    pub fn split(&self) -> Vec<EnumerationTask> {
        let mut base = self.clone();
        if base.partition_prefix.is_empty() && base.order > 0 {
            base.partition_prefix.push(1);
        }
        let pos = base.partition_prefix.len();
        if pos >= base.order {
            return vec![base];
        }
        (1..=base.order)
            .filter(|&v| v != pos + 1)
            .map(|v| {
                let mut t = base.clone();
                t.partition_prefix.push(v);
                t
            })
            .collect()
    }
}

/// All permutations of `0..n` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

struct Search<'a> {
    n: usize,
    /// Column-major: `cols[j*n + i] = i*j`, 0-based.
    cols: Vec<u8>,
    assigned: Vec<bool>,
    /// Assigned columns in assignment order.
    trail: Vec<usize>,
    /// Required `0*j` values for the first columns.
    prefix: &'a [u8],
    candidates: Vec<Vec<Vec<u8>>>,
    scratch: Vec<u8>,
}

impl<'a> Search<'a> {
    fn new(n: usize, prefix: &'a [u8]) -> Self {
        let perms = all_permutations(n);
        let candidates = (0..n)
            .map(|c| perms.iter().filter(|p| p[c] as usize == c).cloned().collect())
            .collect();
        Search {
            n,
            cols: vec![0; n * n],
            assigned: vec![false; n],
            trail: Vec::with_capacity(n),
            prefix,
            candidates,
            scratch: vec![0; n],
        }
    }

    fn col(&self, j: usize) -> &[u8] {
        &self.cols[j * self.n..(j + 1) * self.n]
    }

    fn assign(&mut self, c: usize, perm: &[u8]) -> bool {
        if c < self.prefix.len() && perm[0] != self.prefix[c] {
            return false;
        }
        self.cols[c * self.n..(c + 1) * self.n].copy_from_slice(perm);
        self.assigned[c] = true;
        self.trail.push(c);
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let c = self.trail.pop().unwrap();
            self.assigned[c] = false;
        }
    }

    /// Enforces `R_{R_k(j)} = R_k R_j R_k⁻¹` for the pair `(j, k)`.
    fn enforce(&mut self, j: usize, k: usize) -> bool {
        let n = self.n;
        let m = self.cols[k * n + j] as usize;
        let mut target = std::mem::take(&mut self.scratch);
        {
            let rk = self.col(k);
            let rj = self.col(j);
            for x in 0..n {
                target[rk[x] as usize] = rk[rj[x] as usize];
            }
        }
        let ok = if self.assigned[m] {
            self.col(m) == &target[..]
        } else {
            self.assign(m, &target)
        };
        self.scratch = target;
        ok
    }

    /// Closes the assignment under forced columns, checking every pair that
    /// involves a column assigned at or after `trail[from]`.
    fn propagate(&mut self, from: usize) -> bool {
        let mut cursor = from;
        while cursor < self.trail.len() {
            let c = self.trail[cursor];
            cursor += 1;
            let mut idx = 0;
            while idx < self.trail.len() {
                let k = self.trail[idx];
                idx += 1;
                if k == c {
                    continue;
                }
                if !self.enforce(c, k) || !self.enforce(k, c) {
                    return false;
                }
            }
        }
        true
    }

    fn table(&self) -> QuandleTable {
        let n = self.n;
        let mut data = vec![0u8; n * n];
        for j in 0..n {
            for i in 0..n {
                data[i * n + j] = self.cols[j * n + i];
            }
        }
        QuandleTable::from_zero_based_unchecked(n, data)
    }

    fn run<F: FnMut(QuandleTable) -> ControlFlow<()>>(&mut self, emit: &mut F) -> ControlFlow<()> {
        let Some(c) = (0..self.n).find(|&c| !self.assigned[c]) else {
            return emit(self.table());
        };
        for idx in 0..self.candidates[c].len() {
            let mark = self.trail.len();
            let perm = std::mem::take(&mut self.candidates[c][idx]);
            let ok = self.assign(c, &perm) && self.propagate(mark);
            self.candidates[c][idx] = perm;
            if ok {
                self.run(emit)?;
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

/// Streams every quandle of the task's order to `visit`, stopping early when
/// `visit` breaks.
///
/// Without `up_to_iso`, every labelled table is produced exactly once in a
/// deterministic order. With it, each isomorphism class is produced once,
/// as its canonical form, the first time the search meets it.
pub fn for_each_quandle<F>(task: &EnumerationTask, mut visit: F) -> Result<ControlFlow<()>>
where
    F: FnMut(QuandleTable) -> ControlFlow<()>,
{
    task.check()?;
    let prefix: Vec<u8> = task.partition_prefix.iter().map(|&v| (v - 1) as u8).collect();
    let mut search = Search::new(task.order, &prefix);
    let filter = task.predicate_filter;
    let mut seen: HashSet<QuandleTable> = HashSet::new();
    let mut emit = |q: QuandleTable| {
        if filter.is_some_and(|p| !p.holds(&q)) {
            return ControlFlow::Continue(());
        }
        if task.up_to_iso {
            let canon = canonical_form(&q);
            if seen.insert(canon.clone()) {
                return visit(canon);
            }
            return ControlFlow::Continue(());
        }
        visit(q)
    };
    Ok(search.run(&mut emit))
}

/// Collects [`for_each_quandle`] into a vector.
pub fn enumerate_quandles(task: &EnumerationTask) -> Result<Vec<QuandleTable>> {
    let mut out = Vec::new();
    let _ = for_each_quandle(task, |q| {
        out.push(q);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Runs the task on `jobs` worker threads, splitting by first-row prefix.
///
/// Workers share nothing. The merged result is deduplicated (up to
/// isomorphism when requested) and sorted by table bytes, so it does not
/// depend on `jobs`.
pub fn enumerate_parallel(task: &EnumerationTask, jobs: usize) -> Result<Vec<QuandleTable>> {
    task.check()?;
    let mut subtasks = task.split();
    // A second level gives the pool enough pieces to balance.
    if jobs > 1 {
        subtasks = subtasks.iter().flat_map(EnumerationTask::split).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let parts: Vec<Result<Vec<QuandleTable>>> =
        pool.install(|| subtasks.par_iter().map(enumerate_quandles).collect());
    let mut merged: Vec<QuandleTable> = Vec::new();
    for part in parts {
        merged.extend(part?);
    }
    merged.sort();
    merged.dedup();
    Ok(merged)
}

/// Counts quandles of each order `1..=max_order`.
pub fn count_quandles(max_order: usize, up_to_iso: bool) -> Result<Vec<usize>> {
    (1..=max_order)
        .map(|n| {
            let mut count = 0;
            let _ = for_each_quandle(&EnumerationTask::new(n).up_to_iso(up_to_iso), |_| {
                count += 1;
                ControlFlow::Continue(())
            })?;
            Ok(count)
        })
        .collect()
}

/// First quandle of order at most `max_order` (smallest order first, then
/// search order) satisfying the hypothesis but not the conclusion.
pub fn falsify(property: Implication, max_order: usize) -> Result<Option<QuandleTable>> {
    falsify_with_guard(property, max_order, DEFAULT_ORDER_GUARD)
}

pub fn falsify_with_guard(property: Implication, max_order: usize, guard: usize) -> Result<Option<QuandleTable>> {
    if max_order > guard {
        return Err(Error::OrderTooLarge { order: max_order, guard });
    }
    for n in 1..=max_order {
        let mut found = None;
        let _ = for_each_quandle(&EnumerationTask::new(n).order_guard(guard), |q| {
            if property.refuted_by(&q) {
                found = Some(q);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Label-independent colouring of the elements, refined until stable.
///
/// Starts from the cycle structure of `R_x`, the image size of `L_x` and the
/// orbit size of `x`, then repeatedly splits classes by the multiset of
/// classes seen along rows and columns. Colours are ranks of the sorted
/// distinct signatures, so isomorphic tables get matching colourings.
pub fn element_classes(q: &QuandleTable) -> Vec<usize> {
    let n = q.order();
    let parts = orbits(q);
    let mut orbit_size = vec![0; n];
    for b in parts.blocks() {
        for &x in b {
            orbit_size[x - 1] = b.len();
        }
    }
    let initial: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut sig: Vec<usize> = Vec::new();
            for &(l, m) in q.right_translation_unchecked(x).cycle_structure().entries() {
                sig.extend([l, m]);
            }
            let mut image = vec![false; n];
            (0..n).for_each(|y| image[q.at(x, y)] = true);
            sig.push(usize::MAX);
            sig.push(image.iter().filter(|&&b| b).count());
            sig.push(orbit_size[x]);
            sig
        })
        .collect();
    let mut classes = ranks(&initial);
    loop {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let mut row: Vec<(usize, usize)> = (0..n).map(|y| (classes[y], classes[q.at(x, y)])).collect();
                let mut col: Vec<(usize, usize)> = (0..n).map(|y| (classes[y], classes[q.at(y, x)])).collect();
                row.sort_unstable();
                col.sort_unstable();
                let mut sig = vec![classes[x]];
                sig.extend(row.into_iter().flat_map(|(a, b)| [a, b]));
                sig.extend(col.into_iter().flat_map(|(a, b)| [a, b]));
                sig
            })
            .collect();
        let refined = ranks(&sigs);
        let count = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if count(&refined) == count(&classes) {
            return refined;
        }
        classes = refined;
    }
}

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect()
}

/// Canonical representative of the isomorphism class together with the
/// relabeling `σ` (0-based, old ↦ new) that produces it.
///
/// The representative is the byte-wise smallest table among the relabelings
/// that list elements in ascending colour order (see [`element_classes`]).
/// The cost is the product of the factorials of the colour class sizes, so
/// this is meant for small orders.
pub fn canonical_labeling(q: &QuandleTable) -> (QuandleTable, Vec<usize>) {
    let n = q.order();
    let classes = element_classes(q);
    // Members of each class, classes in ascending colour order.
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (classes[x], x));
    for x in order {
        match groups.last_mut() {
            Some(g) if classes[g[0]] == classes[x] => g.push(x),
            _ => groups.push(vec![x]),
        }
    }

    let mut best: Option<(QuandleTable, Vec<usize>)> = None;
    let mut sigma = vec![0usize; n];
    let mut arrangement: Vec<Vec<usize>> = groups.clone();
    fn visit(
        g: usize,
        groups: &[Vec<usize>],
        arrangement: &mut Vec<Vec<usize>>,
        sigma: &mut Vec<usize>,
        q: &QuandleTable,
        best: &mut Option<(QuandleTable, Vec<usize>)>,
    ) {
        if g == groups.len() {
            let mut next = 0;
            for members in arrangement.iter() {
                for &x in members {
                    sigma[x] = next;
                    next += 1;
                }
            }
            let t = q.relabel_zero_based(sigma);
            if best.as_ref().is_none_or(|(b, _)| t.as_bytes() < b.as_bytes()) {
                *best = Some((t, sigma.clone()));
            }
            return;
        }
        // Heap's algorithm over the members of group g.
        let k = groups[g].len();
        let mut c = vec![0usize; k];
        visit(g + 1, groups, arrangement, sigma, q, best);
        let mut i = 1;
        while i < k {
            if c[i] < i {
                if i % 2 == 0 {
                    arrangement[g].swap(0, i);
                } else {
                    arrangement[g].swap(c[i], i);
                }
                visit(g + 1, groups, arrangement, sigma, q, best);
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
    }
    visit(0, &groups, &mut arrangement, &mut sigma, q, &mut best);
    best.expect("at least one relabeling")
}

pub fn canonical_form(q: &QuandleTable) -> QuandleTable {
    canonical_labeling(q).0
}

/// An isomorphism `σ` from `a` to `b` (`σ(x*y) = σ(x)*σ(y)`), if any.
///
/// Rejects early on order, profile and colour-class mismatch, then
/// backtracks over colour-preserving assignments.
pub fn are_isomorphic(a: &QuandleTable, b: &QuandleTable) -> Option<Permutation> {
    let n = a.order();
    if n != b.order() || a.profile() != b.profile() {
        return None;
    }
    let (ca, cb) = (element_classes(a), element_classes(b));
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    fn extend(
        x: usize,
        a: &QuandleTable,
        b: &QuandleTable,
        ca: &[usize],
        cb: &[usize],
        sigma: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.order();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || ca[x] != cb[y] {
                continue;
            }
            sigma[x] = Some(y);
            used[y] = true;
            let consistent = (0..=x).all(|u| {
                (0..=x).all(|v| {
                    if u != x && v != x {
                        // Pairs among earlier elements were checked before,
                        // except where their product is x.
                        if a.at(u, v) != x {
                            return true;
                        }
                    }
                    match sigma[a.at(u, v)] {
                        Some(img) => img == b.at(sigma[u].unwrap(), sigma[v].unwrap()),
                        None => true,
                    }
                })
            });
            if consistent && extend(x + 1, a, b, ca, cb, sigma, used) {
                return true;
            }
            sigma[x] = None;
            used[y] = false;
        }
        false
    }

    let mut sigma = vec![None; n];
    let mut used = vec![false; n];
    extend(0, a, b, &ca, &cb, &mut sigma, &mut used).then(|| {
        let images: Vec<usize> = sigma.into_iter().map(|s| s.unwrap() + 1).collect();
        Permutation::from_images(&images).expect("injective assignment")
    })
}
