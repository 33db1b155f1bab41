//! Instance checkers for the structural facts about finite quandles used in
//! the latinity criterion: the cycle-shift identity, cycle-length division
//! under automorphisms, the refinement of right-translation cycles by left
//! translations, the distinct-cycle-lengths criterion itself, the necessary
//! conditions for latinity and the regular-cycle property.
//!
//! No checker assumes the statement it checks. Each evaluates hypothesis and
//! conclusion separately and reports whether the implication held; a report
//! with `consistent == false` is a counterexample.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::canonical_form;
use crate::error::Result;
use crate::orbit::{is_connected, orbits};
use crate::perm::{lcm, Permutation};
use crate::quandle::QuandleTable;

pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Verdict of one checker on one input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    /// `!hypothesis_holds || conclusion_holds`.
    pub consistent: bool,
    /// Failing instances, truncated to the witness cap.
    pub witnesses: Vec<Vec<usize>>,
    /// Number of failing instances before truncation.
    pub total_witnesses: usize,
    pub counted_instances: usize,
    /// Extra sub-verdicts and data specific to the check.
    pub details: BTreeMap<String, String>,
}

impl CheckReport {
    /// Consistent and without failing instances.
    pub fn passed(&self) -> bool {
        self.consistent && self.total_witnesses == 0
    }

    fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_string(), value.to_string());
        self
    }
}

/// One line: name, verdict, flags, instance and witness counts, details.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "{} {} hypothesis={} conclusion={} consistent={} instances={} witnesses={}",
            self.check_name,
            if self.passed() { "PASS" } else { "FAIL" },
            yn(self.hypothesis_holds),
            yn(self.conclusion_holds),
            yn(self.consistent),
            self.counted_instances,
            self.total_witnesses,
        )?;
        for (k, v) in &self.details {
            write!(f, " {k}={v}")?;
        }
        for w in &self.witnesses {
            let w: Vec<String> = w.iter().map(usize::to_string).collect();
            write!(f, " [{}]", w.join(","))?;
        }
        Ok(())
    }
}

/// Collects failing instances for checks that range over many instances.
#[derive(Debug)]
pub(crate) struct WitnessLog {
    cap: usize,
    witnesses: Vec<Vec<usize>>,
    total: usize,
    instances: usize,
}

impl Default for WitnessLog {
    fn default() -> Self {
        WitnessLog::with_cap(DEFAULT_WITNESS_CAP)
    }
}

impl WitnessLog {
    pub(crate) fn with_cap(cap: usize) -> Self {
        WitnessLog { cap, witnesses: Vec::new(), total: 0, instances: 0 }
    }

    pub(crate) fn record(&mut self, holds: bool, witness: impl FnOnce() -> Vec<usize>) {
        self.instances += 1;
        if !holds {
            self.total += 1;
            if self.witnesses.len() < self.cap {
                self.witnesses.push(witness());
            }
        }
    }

    /// Report for a check where every instance must hold whenever the
    /// hypothesis does.
    pub(crate) fn into_report(self, name: &str, hypothesis: bool) -> CheckReport {
        let conclusion = self.total == 0;
        CheckReport {
            check_name: name.to_string(),
            hypothesis_holds: hypothesis,
            conclusion_holds: conclusion,
            consistent: !hypothesis || conclusion,
            witnesses: self.witnesses,
            total_witnesses: self.total,
            counted_instances: self.instances,
            details: BTreeMap::new(),
        }
    }
}

/// Single-instance implication report.
fn implication(name: &str, cap: usize, hypothesis: bool, conclusion: bool, witness: impl FnOnce() -> Vec<usize>) -> CheckReport {
    let mut log = WitnessLog::with_cap(cap);
    log.record(!hypothesis || conclusion, witness);
    let mut report = log.into_report(name, hypothesis);
    report.conclusion_holds = conclusion;
    report
}

/// Relabels `p` so that its cycles become consecutive blocks
/// `(k, k+1, ..., k+ℓ-1)`, shorter cycles first (ties by least element),
/// each block starting at the cycle's least element.
///
/// Returns the relabeling `φ` (old element ↦ new element) and `φ p φ⁻¹`.
pub fn consecutive_relabeling(p: &Permutation) -> (Permutation, Permutation) {
    let mut cycles = p.cycles();
    cycles.sort_by_key(|c| (c.len(), c[0]));
    let mut phi = vec![0; p.degree()];
    for (new, &old) in cycles.iter().flatten().enumerate() {
        phi[old - 1] = new + 1;
    }
    let phi = Permutation::from_images(&phi).expect("cycles partition the domain");
    let relabeled = p.conjugate_by(&phi).expect("same degree");
    (phi, relabeled)
}

/// Whole-table witness for theorem-level counterexamples.
fn table_witness(q: &QuandleTable) -> Vec<usize> {
    q.rows().concat()
}

/// Checker with a configurable witness cap. The free functions in this
/// module use [`DEFAULT_WITNESS_CAP`].
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub witness_cap: usize,
}

impl Default for Checker {
    fn default() -> Self {
        Checker { witness_cap: DEFAULT_WITNESS_CAP }
    }
}

impl Checker {
    pub fn with_witness_cap(witness_cap: usize) -> Self {
        Checker { witness_cap }
    }

    /// On the consecutive relabeling `f` of `p`, checks `f^{j-i}(i) = j` for
    /// every cycle block and every `i`, `j` in it. Witnesses are `(i, j)` in
    /// relabeled coordinates.
    pub fn shift_lemma(&self, p: &Permutation) -> CheckReport {
        let (phi, f) = consecutive_relabeling(p);
        let mut log = WitnessLog::with_cap(self.witness_cap);
        for cycle in f.cycles() {
            for &i in &cycle {
                for &j in &cycle {
                    let holds = f.pow(j as i64 - i as i64).apply(i) == j;
                    log.record(holds, || vec![i, j]);
                }
            }
        }
        let relabeling: Vec<String> =
            (1..=p.degree()).map(|x| format!("{x}->{}", phi.apply(x))).collect();
        log.into_report("shift_lemma", true)
            .detail("relabeling", relabeling.join(" "))
            .detail("relabeled", &f)
    }

    /// For every automorphism `f = R_k` and every `x`, `y` with `z = x*y`,
    /// the length of `f`'s cycle through `z` divides the lcm of the lengths
    /// through `x` and `y`. Witnesses are `(k, x, y)`.
    pub fn division_lemma(&self, q: &QuandleTable) -> CheckReport {
        let n = q.order();
        let mut log = WitnessLog::with_cap(self.witness_cap);
        for k in 0..n {
            let lens = q.right_translation_unchecked(k).cycle_lengths_by_element();
            for x in 0..n {
                for y in 0..n {
                    let z = q.at(x, y);
                    let m = lcm(lens[x] as u128, lens[y] as u128);
                    log.record(m.is_multiple_of(lens[z] as u128), || vec![k + 1, x + 1, y + 1]);
                }
            }
        }
        log.into_report("division_lemma", true)
    }

    /// Hypothesis: `R_i` has cycles of distinct lengths and every right
    /// translation has a unique fixed point. Conclusion: `L_i` is a
    /// permutation whose cycles each lie inside a cycle of `R_i`.
    pub fn proposition_refinement(&self, q: &QuandleTable, i: usize) -> Result<CheckReport> {
        q.check_element(i)?;
        let r = q.right_translation_unchecked(i - 1);
        let hypothesis = r.cycle_structure().has_distinct_cycle_lengths() && q.all_unique_fixed_point();
        let left = q.left_translation_map(i)?;
        let r_cycle_lens = r.cycles().len();
        let (conclusion, l_cycle_count) = match &left.perm {
            None => (false, None),
            Some(l) => {
                let mut block = vec![0; q.order()];
                for (b, c) in r.cycles().iter().enumerate() {
                    for &x in c {
                        block[x - 1] = b;
                    }
                }
                let refines = l
                    .cycles()
                    .iter()
                    .all(|c| c.iter().all(|&x| block[x - 1] == block[c[0] - 1]));
                (refines, Some(l.cycles().len()))
            }
        };
        let report = implication("proposition_refinement", self.witness_cap, hypothesis, conclusion, || vec![i])
            .detail("element", i)
            .detail("right_cycles", r_cycle_lens)
            .detail("left_is_permutation", left.is_permutation());
        Ok(match l_cycle_count {
            Some(c) => report.detail("left_cycles", c),
            None => report,
        })
    }

    /// [`proposition_refinement`](Self::proposition_refinement) for every
    /// element, folded into one report with one instance per element.
    /// Witnesses are the elements where the implication failed.
    pub fn proposition_refinement_all(&self, q: &QuandleTable) -> CheckReport {
        let mut log = WitnessLog::with_cap(self.witness_cap);
        let mut any_hypothesis = false;
        for i in 1..=q.order() {
            let r = self.proposition_refinement(q, i).expect("element in range");
            any_hypothesis |= r.hypothesis_holds;
            log.record(r.consistent, || vec![i]);
        }
        log.into_report("proposition_refinement_all", any_hypothesis)
    }

    /// Hypothesis: every right translation has cycles of distinct lengths.
    /// Conclusion: the quandle is latin. An inconsistent report carries the
    /// whole table (row-major) as its witness.
    pub fn main_theorem(&self, q: &QuandleTable) -> CheckReport {
        let hypothesis = sufficient_condition_holds(q);
        let conclusion = q.is_latin();
        implication("main_theorem", self.witness_cap, hypothesis, conclusion, || table_witness(q))
    }

    /// If the quandle is latin, every right translation must have a unique
    /// fixed point and the quandle must be connected.
    pub fn necessary_conditions(&self, q: &QuandleTable) -> CheckReport {
        let latin = q.is_latin();
        let unique = q.all_unique_fixed_point();
        let connected = is_connected(q);
        implication("necessary_conditions", self.witness_cap, latin, unique && connected, || table_witness(q))
            .detail("unique_fixed_point", unique)
            .detail("connected", connected)
    }

    /// Hypothesis: the quandle is connected. Conclusion: every right
    /// translation has a regular cycle. Witnesses are the columns without
    /// one, recorded only when connected.
    pub fn hayashi(&self, q: &QuandleTable) -> CheckReport {
        let connected = orbits(q).len() == 1;
        let mut log = WitnessLog::with_cap(self.witness_cap);
        let mut orders = Vec::with_capacity(q.order());
        let mut all_regular = true;
        for (j, r) in q.right_translations().iter().enumerate() {
            let (order, regular) = r.order_and_regular_cycle();
            orders.push(order.to_string());
            all_regular &= regular;
            log.record(regular || !connected, || vec![j + 1]);
        }
        let mut report = log.into_report("hayashi", connected);
        report.conclusion_holds = all_regular;
        report.detail("connected", connected).detail("orders", orders.join(","))
    }

    /// Every check that applies to a whole table.
    pub fn all(&self, q: &QuandleTable) -> Vec<CheckReport> {
        vec![
            crate::orbit::check_conjugation_identity(q),
            self.division_lemma(q),
            self.proposition_refinement_all(q),
            self.main_theorem(q),
            self.necessary_conditions(q),
            self.hayashi(q),
        ]
    }
}

pub fn check_shift_lemma(p: &Permutation) -> CheckReport {
    Checker::default().shift_lemma(p)
}

pub fn check_division_lemma(q: &QuandleTable) -> CheckReport {
    Checker::default().division_lemma(q)
}

pub fn check_proposition_refinement(q: &QuandleTable, i: usize) -> Result<CheckReport> {
    Checker::default().proposition_refinement(q, i)
}

pub fn check_main_theorem(q: &QuandleTable) -> CheckReport {
    Checker::default().main_theorem(q)
}

pub fn check_necessary_conditions(q: &QuandleTable) -> CheckReport {
    Checker::default().necessary_conditions(q)
}

pub fn check_hayashi(q: &QuandleTable) -> CheckReport {
    Checker::default().hayashi(q)
}

/// Every right translation has cycles of distinct lengths.
pub fn sufficient_condition_holds(q: &QuandleTable) -> bool {
    q.all_columns_distinct_lengths()
}

/// Some `R_i` has distinct cycle lengths and all right translations have a
/// unique fixed point.
pub fn refinement_hypotheses_hold(q: &QuandleTable) -> bool {
    q.all_unique_fixed_point()
        && q.right_translations().iter().any(|r| r.cycle_structure().has_distinct_cycle_lengths())
}

/// Quandles from `source` that satisfy the refinement hypotheses for some
/// element but are not connected, sorted by order and canonical form.
pub fn search_refinement_nonconnected<I>(source: I) -> Vec<QuandleTable>
where
    I: IntoIterator<Item = QuandleTable>,
    I::IntoIter: Send,
{
    let mut found: Vec<(usize, Vec<u8>, QuandleTable)> = source
        .into_iter()
        .par_bridge()
        .filter(|q| refinement_hypotheses_hold(q) && !is_connected(q))
        .map(|q| (q.order(), canonical_form(&q).as_bytes().to_vec(), q))
        .collect();
    found.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
    found.into_iter().map(|(_, _, q)| q).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dihedral, named_example};

    fn q62() -> QuandleTable {
        named_example("Q6_2").unwrap()
    }
    fn q94() -> QuandleTable {
        named_example("Q9_4").unwrap()
    }
    fn q3() -> QuandleTable {
        named_example("Q3_nonlatin").unwrap()
    }
    fn one() -> QuandleTable {
        QuandleTable::from_rows(&[[1]]).unwrap()
    }

    #[test]
    fn shift_lemma_examples() {
        let p = Permutation::from_cycles(6, &[[4, 5, 6]]).unwrap();
        assert_eq!(p.pow(-2).apply(6), 4);
        let r = check_shift_lemma(&p);
        assert!(r.passed());
        assert_eq!(r.details["relabeling"], "1->1 2->2 3->3 4->4 5->5 6->6");

        let r1 = q94().right_translation(1).unwrap();
        let (_, f) = consecutive_relabeling(&r1);
        assert_eq!(f.to_string(), "(1)(2 3)(4 5 6 7 8 9)");
        let r = check_shift_lemma(&r1);
        assert!(r.passed());
        assert_eq!(r.counted_instances, 1 + 4 + 36);
        assert_eq!(r.details["relabeling"], "1->1 2->2 3->3 4->4 5->6 6->8 7->5 8->9 9->7");

        let r = check_shift_lemma(&Permutation::identity(3));
        assert!(r.passed());
        assert_eq!(r.counted_instances, 3);
    }

    #[test]
    fn division_lemma_examples() {
        let q = q62();
        let r1 = q.right_translation(1).unwrap();
        let lens = r1.cycle_lengths_by_element();
        assert_eq!(q.op(2, 3), 5);
        assert_eq!((lens[1], lens[2], lens[4]), (4, 1, 4));
        let r = check_division_lemma(&q94());
        assert!(r.passed());
        assert_eq!(r.counted_instances, 729);
        let r = check_division_lemma(&one());
        assert!(r.passed());
        assert_eq!(r.counted_instances, 1);
    }

    #[test]
    fn refinement_examples() {
        let r = check_proposition_refinement(&q94(), 1).unwrap();
        assert!(r.hypothesis_holds && r.conclusion_holds && r.consistent);
        assert_eq!(r.details["left_cycles"], "5");
        assert_eq!(r.details["right_cycles"], "3");

        let r = check_proposition_refinement(&q3(), 1).unwrap();
        assert!(!r.hypothesis_holds && !r.conclusion_holds && r.consistent);
        assert!(r.witnesses.is_empty());

        let r = check_proposition_refinement(&one(), 1).unwrap();
        assert!(r.hypothesis_holds && r.conclusion_holds);
        assert!(check_proposition_refinement(&one(), 2).is_err());
    }

    #[test]
    fn sufficient_condition_examples() {
        assert!(sufficient_condition_holds(&q94()));
        assert!(!sufficient_condition_holds(&q62()));
        assert!(!sufficient_condition_holds(&q3()));
    }

    #[test]
    fn main_theorem_examples() {
        let r = check_main_theorem(&q94());
        assert!(r.hypothesis_holds && r.conclusion_holds && r.consistent);
        let r = check_main_theorem(&q62());
        assert!(!r.hypothesis_holds && !r.conclusion_holds && r.consistent);
        let d5 = dihedral(5);
        assert_eq!(d5.profile().common().unwrap().to_string(), "(1,2^2)");
        let r = check_main_theorem(&d5);
        assert!(!r.hypothesis_holds && r.conclusion_holds && r.consistent);
    }

    #[test]
    fn necessary_condition_examples() {
        let r = check_necessary_conditions(&q94());
        assert!(r.hypothesis_holds && r.passed());
        assert_eq!(r.details["connected"], "true");
        assert_eq!(r.details["unique_fixed_point"], "true");
        let r = check_necessary_conditions(&q62());
        assert!(!r.hypothesis_holds && r.passed());
        let r = check_necessary_conditions(&dihedral(3));
        assert!(r.hypothesis_holds && r.conclusion_holds);
    }

    #[test]
    fn hayashi_examples() {
        let r = check_hayashi(&q62());
        assert!(r.passed() && r.conclusion_holds);
        assert_eq!(r.details["orders"], "4,4,4,4,4,4");
        let r = check_hayashi(&q94());
        assert!(r.passed());
        assert_eq!(r.details["orders"], "6,6,6,6,6,6,6,6,6");
        assert!(check_hayashi(&one()).passed());
    }

    #[test]
    fn refinement_search_examples() {
        assert!(search_refinement_nonconnected(vec![q62()]).is_empty());
        assert!(search_refinement_nonconnected(vec![q3()]).is_empty());
    }

    #[test]
    fn witness_cap_truncates() {
        let mut log = WitnessLog::with_cap(2);
        for x in 0..5 {
            log.record(false, || vec![x]);
        }
        let r = log.into_report("t", true);
        assert_eq!(r.witnesses.len(), 2);
        assert_eq!(r.total_witnesses, 5);
        assert!(!r.consistent);
    }

    #[test]
    fn report_line() {
        let line = check_main_theorem(&q94()).to_string();
        assert_eq!(line, "main_theorem PASS hypothesis=yes conclusion=yes consistent=yes instances=1 witnesses=0");
    }
}
