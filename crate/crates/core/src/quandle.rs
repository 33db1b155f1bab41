//! Validated quandle tables.
//!
//! A [`QuandleTable`] can only be obtained through validation of the three
//! quandle axioms (or from a constructor that guarantees them), so every
//! downstream computation may rely on them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{CycleStructure, Permutation};

/// Cayley table of a finite quandle: `op(i, j)` is `i*j`.
///
/// Stored row-major and 0-based; orders up to 255 are supported.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTable {
    n: usize,
    data: Vec<u8>,
}

/// Row `i` of a table viewed as the map `j ↦ i*j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftTranslation {
    /// 1-based images, `map[j-1] = i*j`.
    pub map: Vec<usize>,
    /// Populated iff the row is a bijection.
    pub perm: Option<Permutation>,
}

impl LeftTranslation {
    pub fn is_permutation(&self) -> bool {
        self.perm.is_some()
    }
}

impl QuandleTable {
    /// Checks the quandle axioms on a raw table whose entry in row `i`,
    /// column `j` is `i*j`.
    ///
    /// Checks run in the order: shape, entry range, idempotency,
    /// right-invertibility (columns are permutations), right
    /// self-distributivity. The first failure is returned with a witness.
    pub fn validate<R: AsRef<[i64]>>(raw: &[R]) -> Result<QuandleTable> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n > 255 {
            return Err(Error::TableTooLarge(n));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in raw.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::NotSquare { row: i + 1, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v < 1 || v > n as i64 {
                    return Err(Error::EntryOutOfRange { row: i + 1, column: j + 1, value: v, order: n });
                }
                data.push((v - 1) as u8);
            }
        }
        let table = QuandleTable { n, data };
        table.check_axioms()?;
        Ok(table)
    }

    /// Same as [`validate`](Self::validate) for unsigned rows.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<QuandleTable> {
        let raw: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| v as i64).collect())
            .collect();
        Self::validate(&raw)
    }

    /// Wraps 0-based row-major data already known to satisfy the axioms.
    pub(crate) fn from_zero_based_unchecked(n: usize, data: Vec<u8>) -> QuandleTable {
        debug_assert_eq!(data.len(), n * n);
        let table = QuandleTable { n, data };
        debug_assert_eq!(table.check_axioms(), Ok(()));
        table
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if self.at(i, i) != i {
                return Err(Error::NotIdempotent(i + 1));
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let v = self.at(i, j);
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::ColumnNotPermutation { column: j + 1, value: v + 1 });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.at(i, j);
                for k in 0..n {
                    if self.at(ij, k) != self.at(self.at(i, k), self.at(j, k)) {
                        return Err(Error::NotRightDistributive { i: i + 1, j: j + 1, k: k + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> usize {
        self.data[i * self.n + j] as usize
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `i*j` for 1-based `i`, `j`. Panics when out of range.
    pub fn op(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "element out of range for order {}",
            self.n
        );
        self.at(i - 1, j - 1) + 1
    }

    /// Rows as 1-based values.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.data.chunks(self.n).map(|r| r.iter().map(|&v| v as usize + 1).collect()).collect()
    }

    /// 0-based row-major entries, one byte per cell. Comparing these bytes
    /// is the ordering used for canonical forms.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<()> {
        if (1..=self.n).contains(&x) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: x, order: self.n })
        }
    }

    pub(crate) fn column_zero_based(&self, j: usize) -> Vec<usize> {
        (0..self.n).map(|i| self.at(i, j)).collect()
    }

    /// `R_j : i ↦ i*j`, column `j` of the table.
    pub fn right_translation(&self, j: usize) -> Result<Permutation> {
        self.check_element(j)?;
        Ok(self.right_translation_unchecked(j - 1))
    }

    pub(crate) fn right_translation_unchecked(&self, j: usize) -> Permutation {
        Permutation::from_zero_based(self.column_zero_based(j))
            .expect("validated columns are permutations")
    }

    /// All right translations, in column order.
    pub fn right_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|j| self.right_translation_unchecked(j)).collect()
    }

    /// `L_i : j ↦ i*j`, row `i` of the table.
    pub fn left_translation_map(&self, i: usize) -> Result<LeftTranslation> {
        self.check_element(i)?;
        let row = &self.data[(i - 1) * self.n..i * self.n];
        let perm = Permutation::from_zero_based(row.iter().map(|&v| v as usize).collect()).ok();
        Ok(LeftTranslation { map: row.iter().map(|&v| v as usize + 1).collect(), perm })
    }

    fn row_is_bijective(&self, i: usize) -> bool {
        let mut seen = vec![false; self.n];
        self.data[i * self.n..(i + 1) * self.n]
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    /// Every left translation is a permutation, i.e. the table is a latin
    /// square.
    pub fn is_latin(&self) -> bool {
        (0..self.n).all(|i| self.row_is_bijective(i))
    }

    /// Each `R_j` fixes `j` and nothing else.
    pub fn all_unique_fixed_point(&self) -> bool {
        (0..self.n).all(|j| (0..self.n).all(|i| i == j || self.at(i, j) != i))
    }

    /// Every right translation has cycles of pairwise distinct lengths.
    pub fn all_columns_distinct_lengths(&self) -> bool {
        self.right_translations().iter().all(|r| r.cycle_structure().has_distinct_cycle_lengths())
    }

    pub fn profile(&self) -> Profile {
        Profile::new(self.right_translations().iter().map(Permutation::cycle_structure).collect())
    }

    /// The isomorphic copy obtained by renaming every element `x` to
    /// `sigma(x)`: `table'[σi][σj] = σ(table[i][j])`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<QuandleTable> {
        if sigma.degree() != self.n {
            return Err(Error::DegreeMismatch { left: self.n, right: sigma.degree() });
        }
        Ok(self.relabel_zero_based(sigma.zero_based()))
    }

    pub(crate) fn relabel_zero_based(&self, sigma: &[usize]) -> QuandleTable {
        let n = self.n;
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                data[sigma[i] * n + sigma[j]] = sigma[self.at(i, j)] as u8;
            }
        }
        QuandleTable { n, data }
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuandleTable").field("n", &self.n).field("rows", &self.rows()).finish()
    }
}

/// Cycle structures of all right translations, one per element, kept sorted.
///
/// All `n` structures are stored even when they coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Profile {
    structures: Vec<CycleStructure>,
}

impl Profile {
    pub fn new(mut structures: Vec<CycleStructure>) -> Self {
        structures.sort();
        Profile { structures }
    }

    pub fn structures(&self) -> &[CycleStructure] {
        &self.structures
    }

    /// The common structure when all right translations agree.
    pub fn common(&self) -> Option<&CycleStructure> {
        let first = self.structures.first()?;
        self.structures.iter().all(|s| s == first).then_some(first)
    }

    /// Distinct structures, ascending.
    pub fn distinct(&self) -> Vec<&CycleStructure> {
        let mut out: Vec<&CycleStructure> = self.structures.iter().collect();
        out.dedup();
        out
    }
}

/// A single structure when all agree, otherwise the bracketed list.
impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(common) = self.common() {
            return write!(f, "{common}");
        }
        f.write_str("[")?;
        for (pos, s) in self.structures.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}
