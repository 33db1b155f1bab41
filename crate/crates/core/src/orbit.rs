//! Orbits of the right multiplication group, connectedness and the
//! connected profile.

use serde::Serialize;

use crate::checks::{CheckReport, WitnessLog};
use crate::error::{Error, Result};
use crate::perm::CycleStructure;
use crate::quandle::QuandleTable;

/// Partition of `{1..n}` into orbits. Blocks are sorted internally and
/// ordered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing the 1-based element `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }
}

/// Orbits under the group generated by all right translations.
///
/// Breadth-first closure over every generator `R_j` and its inverse.
pub fn orbits(q: &QuandleTable) -> OrbitPartition {
    let n = q.order();
    let generators: Vec<Vec<usize>> = (0..n).map(|j| q.column_zero_based(j)).collect();
    let inverses: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| {
            let mut inv = vec![0; n];
            for (x, &y) in g.iter().enumerate() {
                inv[y] = x;
            }
            inv
        })
        .collect();

    let mut block_id = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if block_id[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        block_id[start] = id;
        let mut block = vec![start];
        let mut cursor = 0;
        while cursor < block.len() {
            let x = block[cursor];
            cursor += 1;
            for g in generators.iter().chain(&inverses) {
                let y = g[x];
                if block_id[y] == usize::MAX {
                    block_id[y] = id;
                    block.push(y);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block.into_iter().map(|x| x + 1).collect());
    }
    OrbitPartition { blocks }
}

pub fn is_connected(q: &QuandleTable) -> bool {
    orbits(q).len() == 1
}

/// The cycle structure shared by all right translations of a connected
/// quandle.
///
/// Every column is recomputed and compared. Disagreement would mean a
/// connected quandle whose translations are not all conjugate, which cannot
/// happen for a valid table; it panics rather than return a wrong answer.
pub fn connected_profile(q: &QuandleTable) -> Result<CycleStructure> {
    let parts = orbits(q);
    if parts.len() != 1 {
        return Err(Error::NotConnected { blocks: parts.len() });
    }
    let profile = q.profile();
    match profile.common() {
        Some(cs) => Ok(cs.clone()),
        None => panic!("connected quandle with differing column cycle structures: {profile}"),
    }
}

/// Checks `R_k R_j R_k^{-1} = R_{j*k}` for all `j`, `k`: conjugating a right
/// translation by the automorphism `R_k` gives the translation by the image
/// of its index.
pub fn check_conjugation_identity(q: &QuandleTable) -> CheckReport {
    let n = q.order();
    let columns: Vec<Vec<usize>> = (0..n).map(|j| q.column_zero_based(j)).collect();
    let mut log = WitnessLog::default();
    for k in 0..n {
        let rk = &columns[k];
        for j in 0..n {
            let rj = &columns[j];
            let target = &columns[q.at(j, k)];
            // (R_k R_j R_k^{-1})(R_k x) = R_k(R_j x)
            let holds = (0..n).all(|x| target[rk[x]] == rk[rj[x]]);
            log.record(holds, || vec![j + 1, k + 1]);
        }
    }
    log.into_report("conjugation_identity", true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dihedral, named_example};

    #[test]
    fn orbit_examples() {
        let q62 = named_example("Q6_2").unwrap();
        assert_eq!(orbits(&q62).blocks(), &[vec![1, 2, 3, 4, 5, 6]]);
        let q3 = named_example("Q3_nonlatin").unwrap();
        assert_eq!(orbits(&q3).blocks(), &[vec![1], vec![2, 3]]);
        let d4 = dihedral(4);
        assert_eq!(orbits(&d4).blocks(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(orbits(&d4).block_of(4), Some(1));
    }

    #[test]
    fn connectedness_examples() {
        assert!(is_connected(&named_example("Q6_2").unwrap()));
        assert!(!is_connected(&named_example("Q3_nonlatin").unwrap()));
        assert!(is_connected(&QuandleTable::from_rows(&[[1]]).unwrap()));
    }

    #[test]
    fn connected_profile_examples() {
        let render = |name: &str| connected_profile(&named_example(name).unwrap()).unwrap().to_string();
        assert_eq!(render("Q6_2"), "(1^2,4)");
        assert_eq!(render("Q9_4"), "(1,2,6)");
        let one = QuandleTable::from_rows(&[[1]]).unwrap();
        assert_eq!(connected_profile(&one).unwrap().to_string(), "(1)");
        assert_eq!(
            connected_profile(&named_example("Q3_nonlatin").unwrap()),
            Err(Error::NotConnected { blocks: 2 })
        );
    }

    #[test]
    fn conjugation_identity_examples() {
        let r = check_conjugation_identity(&named_example("Q6_2").unwrap());
        assert!(r.passed());
        assert_eq!(r.counted_instances, 36);
        let r = check_conjugation_identity(&named_example("Q9_4").unwrap());
        assert!(r.passed());
        assert_eq!(r.counted_instances, 81);
        let r = check_conjugation_identity(&QuandleTable::from_rows(&[[1]]).unwrap());
        assert!(r.passed());
        assert_eq!(r.counted_instances, 1);
    }

    #[test]
    fn blocks_are_closed_under_generators() {
        for q in [dihedral(4), dihedral(6), named_example("Q3_nonlatin").unwrap()] {
            let parts = orbits(&q);
            for r in q.right_translations() {
                for inv in [false, true] {
                    let g = if inv { r.inverse() } else { r.clone() };
                    for block in parts.blocks() {
                        assert!(block.iter().all(|&x| block.contains(&g.apply(x))));
                    }
                }
            }
        }
    }
}
