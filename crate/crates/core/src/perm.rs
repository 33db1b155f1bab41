//! Permutations of `{1..n}` and their cycle structure.
//!
//! Elements are 1-based at every public boundary. Internally images are
//! stored 0-based.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A bijection of `{1..n}`.
///
/// The cycle decomposition is computed lazily and cached; equality, ordering
/// and hashing only look at the images.
#[derive(Clone)]
pub struct Permutation {
    images: Vec<usize>,
    cycles: OnceLock<Vec<Vec<usize>>>,
}

impl Permutation {
    fn from_zero_based_unchecked(images: Vec<usize>) -> Self {
        Permutation { images, cycles: OnceLock::new() }
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (x, &y) in images.iter().enumerate() {
            if y >= n {
                return Err(Error::NotAPermutation {
                    degree: n,
                    reason: format!("image of {} is {}, outside the domain", x + 1, y + 1),
                });
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::NotAPermutation {
                    degree: n,
                    reason: format!("{} is hit twice", y + 1),
                });
            }
        }
        Ok(Self::from_zero_based_unchecked(images))
    }

    /// Builds a permutation from its 1-based image list: `images[x-1]` is the
    /// image of `x`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let zero = images
            .iter()
            .enumerate()
            .map(|(x, &y)| {
                if (1..=n).contains(&y) {
                    Ok(y - 1)
                } else {
                    Err(Error::NotAPermutation {
                        degree: n,
                        reason: format!("image of {} is {}, outside the domain", x + 1, y),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_zero_based(zero)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_zero_based_unchecked((0..n).collect())
    }

    /// Builds a permutation of degree `n` from disjoint cycles in 1-based
    /// notation. Elements not mentioned are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (pos, &x) in cycle.iter().enumerate() {
                if !(1..=n).contains(&x) {
                    return Err(Error::NotAPermutation {
                        degree: n,
                        reason: format!("cycle element {x} outside the domain"),
                    });
                }
                if std::mem::replace(&mut touched[x - 1], true) {
                    return Err(Error::NotAPermutation {
                        degree: n,
                        reason: format!("{x} appears in more than one cycle position"),
                    });
                }
                images[x - 1] = cycle[(pos + 1) % cycle.len()] - 1;
            }
        }
        Ok(Self::from_zero_based_unchecked(images))
    }

    /// Parses cycle notation such as `"(1 2)(3 4 5)"` or `"(1,2)(3,4,5)"`.
    /// The empty string and `"()"` denote the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let syntax = |column: usize, message: &str| Error::Syntax {
            line: 1,
            column,
            message: message.to_string(),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        for (col, ch) in text.chars().enumerate().map(|(c, ch)| (c + 1, ch)) {
            if ch.is_ascii_digit() {
                if current.is_none() {
                    return Err(syntax(col, "digit outside a cycle"));
                }
                number.push(ch);
                continue;
            }
            if !number.is_empty() {
                let value = number.parse().map_err(|_| syntax(col, "number too large"))?;
                current.as_mut().unwrap().push(value);
                number.clear();
            }
            match ch {
                '(' if current.is_none() => current = Some(Vec::new()),
                ')' => match current.take() {
                    Some(c) if !c.is_empty() => cycles.push(c),
                    Some(_) => {}
                    None => return Err(syntax(col, "unbalanced ')'")),
                },
                ',' | ' ' | '\t' => {}
                _ => return Err(syntax(col, &format!("unexpected {ch:?}"))),
            }
        }
        if current.is_some() {
            return Err(syntax(text.chars().count(), "unterminated cycle"));
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based element `x`.
    ///
    /// Panics if `x` is outside `1..=degree`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other)?;
        Ok(Self::from_zero_based_unchecked(
            other.images.iter().map(|&y| self.images[y]).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Self::from_zero_based_unchecked(inv)
    }

    /// `k`-fold composition; negative powers go through the inverse.
    pub fn pow(&self, k: i64) -> Permutation {
        // Reduce the exponent with the cycle lengths instead of multiplying.
        let n = self.degree();
        let mut images = vec![0; n];
        for cycle in self.cycles_zero_based() {
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (pos, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(pos + shift) % cycle.len()];
            }
        }
        Self::from_zero_based_unchecked(images)
    }

    /// `other ∘ self ∘ other⁻¹`.
    pub fn conjugate_by(&self, other: &Permutation) -> Result<Permutation> {
        other.compose(self)?.compose(&other.inverse())
    }

    fn cycles_zero_based(&self) -> &[Vec<usize>] {
        self.cycles.get_or_init(|| {
            let n = self.degree();
            let mut seen = vec![false; n];
            let mut cycles = Vec::new();
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    cycle.push(x);
                    x = self.images[x];
                }
                cycles.push(cycle);
            }
            cycles
        })
    }

    /// Disjoint cycles, each starting at its minimal element, sorted by that
    /// minimal element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_zero_based()
            .iter()
            .map(|c| c.iter().map(|&x| x + 1).collect())
            .collect()
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        CycleStructure::from_lengths(self.cycles_zero_based().iter().map(Vec::len))
    }

    /// Length of the cycle containing each element, indexed 0-based.
    pub(crate) fn cycle_lengths_by_element(&self) -> Vec<usize> {
        let mut lens = vec![0; self.degree()];
        for c in self.cycles_zero_based() {
            for &x in c {
                lens[x] = c.len();
            }
        }
        lens
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x == y)
            .map(|(x, _)| x + 1)
            .collect()
    }

    /// Order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u128 {
        self.cycles_zero_based().iter().fold(1, |acc, c| lcm(acc, c.len() as u128))
    }

    /// Returns the order together with whether some cycle is regular, i.e. as
    /// long as the order itself.
    pub fn order_and_regular_cycle(&self) -> (u128, bool) {
        let order = self.order();
        let longest = self.cycles_zero_based().iter().map(Vec::len).max().unwrap_or(1);
        (order, order == longest as u128)
    }
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then the image lists lexicographically.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), &self.images).cmp(&(other.degree(), &other.images))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Cycle notation including 1-cycles, e.g. `(1)(2 6 4 5)(3)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (pos, x) in cycle.iter().enumerate() {
                if pos > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Multiset of cycle lengths, written `(1^{c1}, 2^{c2}, ...)`.
///
/// Entries are `(length, multiplicity)` pairs with strictly increasing
/// lengths and positive multiplicities.
///
/// Ordered lexicographically by the ascending list of cycle lengths with
/// repeats written out, so `(1^3)` (lengths `1,1,1`) sorts before `(1,2)`
/// (lengths `1,2`). Profiles are sorted with this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CycleStructure {
    entries: Vec<(usize, usize)>,
}

impl Ord for CycleStructure {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let expand = |c: &CycleStructure| {
            c.entries.iter().flat_map(|&(len, mult)| std::iter::repeat_n(len, mult)).collect::<Vec<_>>()
        };
        expand(self).cmp(&expand(other))
    }
}

impl PartialOrd for CycleStructure {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl CycleStructure {
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> Self {
        let mut lengths: Vec<usize> = lengths.into_iter().filter(|&l| l > 0).collect();
        lengths.sort_unstable();
        let mut entries: Vec<(usize, usize)> = Vec::new();
        for l in lengths {
            match entries.last_mut() {
                Some((len, mult)) if *len == l => *mult += 1,
                _ => entries.push((l, 1)),
            }
        }
        CycleStructure { entries }
    }

    /// Builds from `(length, multiplicity)` pairs in any order; pairs with the
    /// same length are merged and zero multiplicities dropped.
    pub fn from_entries<I: IntoIterator<Item = (usize, usize)>>(entries: I) -> Self {
        Self::from_lengths(
            entries.into_iter().flat_map(|(l, m)| std::iter::repeat_n(l, m)),
        )
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    /// Sum of length × multiplicity.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(l, m)| l * m).sum()
    }

    pub fn cycle_count(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, length: usize) -> usize {
        self.entries.iter().find(|(l, _)| *l == length).map_or(0, |(_, m)| *m)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.multiplicity(1)
    }

    /// No two cycles share a length.
    pub fn has_distinct_cycle_lengths(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    pub fn max_length(&self) -> usize {
        self.entries.last().map_or(0, |(l, _)| *l)
    }

    /// The structure with one fixed point removed. `None` unless there is
    /// exactly one fixed point.
    pub fn without_unique_fixed_point(&self) -> Option<CycleStructure> {
        (self.fixed_point_count() == 1).then(|| CycleStructure {
            entries: self.entries.iter().copied().filter(|&(l, _)| l != 1).collect(),
        })
    }

    /// Adds one fixed point.
    pub fn with_extra_fixed_point(&self) -> CycleStructure {
        Self::from_entries(self.entries.iter().copied().chain(std::iter::once((1, 1))))
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (pos, &(l, m)) in self.entries.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{m}")?;
            }
        }
        f.write_str(")")
    }
}

/// Parses `"(1^2,4)"`, `"(1, 2, 6)"`, `"()"`. Terms must be strictly
/// ascending by length, as rendered.
impl FromStr for CycleStructure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |message: String| Error::Syntax { line: 1, column: 1, message };
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| syntax(format!("{s:?} is not parenthesised")))?;
        if inner.trim().is_empty() {
            return Ok(CycleStructure { entries: Vec::new() });
        }
        let mut entries: Vec<(usize, usize)> = Vec::new();
        for term in inner.split(',') {
            let term = term.trim();
            let (l, m) = match term.split_once('^') {
                Some((l, m)) => (l.trim(), m.trim()),
                None => (term, "1"),
            };
            let parse = |t: &str| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v > 0)
                    .ok_or_else(|| syntax(format!("bad term {term:?} in {s:?}")))
            };
            let (l, m) = (parse(l)?, parse(m)?);
            if entries.last().is_some_and(|&(prev, _)| prev >= l) {
                return Err(syntax(format!("lengths not strictly ascending in {s:?}")));
            }
            entries.push((l, m));
        }
        Ok(CycleStructure { entries })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Column 1 of the 6-element table Q_{6,2}.
    fn r1_q62() -> Permutation {
        Permutation::from_images(&[1, 6, 3, 5, 2, 4]).unwrap()
    }

    /// Column 1 of the 9-element table Q_{9,4}.
    fn r1_q94() -> Permutation {
        Permutation::from_images(&[1, 3, 2, 7, 9, 8, 5, 4, 6]).unwrap()
    }

    #[test]
    fn algebra_examples() {
        let swap = Permutation::from_cycles(2, &[[1, 2]]).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());
        assert!(r1_q62().pow(4).is_identity());
        assert!(!r1_q62().pow(2).is_identity());
        let c = Permutation::from_cycles(3, &[[1, 2, 3]]).unwrap();
        assert_eq!(c.inverse(), Permutation::from_cycles(3, &[[1, 3, 2]]).unwrap());
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(
            swap.compose(&Permutation::identity(3)),
            Err(Error::DegreeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn compose_applies_right_first() {
        let p = Permutation::from_cycles(3, &[[1, 2]]).unwrap();
        let q = Permutation::from_cycles(3, &[[2, 3]]).unwrap();
        // p(q(2)) = p(3) = 3
        assert_eq!(p.compose(&q).unwrap().apply(2), 3);
    }

    #[test]
    fn cycles_examples() {
        assert_eq!(r1_q62().cycles(), vec![vec![1], vec![2, 6, 4, 5], vec![3]]);
        assert_eq!(r1_q62().to_string(), "(1)(2 6 4 5)(3)");
        assert_eq!(Permutation::identity(3).cycles(), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(r1_q94().cycles(), vec![vec![1], vec![2, 3], vec![4, 7, 5, 9, 6, 8]]);
    }

    #[test]
    fn cycle_structure_examples() {
        assert_eq!(r1_q62().cycle_structure().to_string(), "(1^2,4)");
        assert_eq!(Permutation::identity(5).cycle_structure().to_string(), "(1^5)");
        assert_eq!(r1_q94().cycle_structure().to_string(), "(1,2,6)");
    }

    #[test]
    fn distinct_lengths_examples() {
        let parse = |s: &str| s.parse::<CycleStructure>().unwrap();
        assert!(parse("(1,2,6)").has_distinct_cycle_lengths());
        assert!(!parse("(1^2,4)").has_distinct_cycle_lengths());
        assert!(parse("(1)").has_distinct_cycle_lengths());
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(r1_q62().fixed_points(), vec![1, 3]);
        assert_eq!(Permutation::identity(4).fixed_points(), vec![1, 2, 3, 4]);
        assert_eq!(r1_q94().fixed_points(), vec![1]);
    }

    #[test]
    fn order_examples() {
        assert_eq!(r1_q62().order_and_regular_cycle(), (4, true));
        let p = Permutation::from_cycles(5, &[vec![1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(p.order_and_regular_cycle(), (6, false));
        assert_eq!(Permutation::identity(1).order_and_regular_cycle(), (1, true));
    }

    #[test]
    fn parse_cycle_notation() {
        let p = Permutation::parse_cycles(9, "(1)(2,3)(4,7,5,9,6,8)").unwrap();
        assert_eq!(p, r1_q94());
        assert!(Permutation::parse_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::parse_cycles(3, "(1 2").is_err());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[3, 1]).is_err());
    }

    #[test]
    fn cycle_structure_text() {
        let cs: CycleStructure = "(1^2, 4)".parse().unwrap();
        assert_eq!(cs.entries(), &[(1, 2), (4, 1)]);
        assert_eq!(cs.degree(), 6);
        assert_eq!("()".parse::<CycleStructure>().unwrap().degree(), 0);
        assert!("(4,1)".parse::<CycleStructure>().is_err());
        assert!("(2^0)".parse::<CycleStructure>().is_err());
        assert!("1,2".parse::<CycleStructure>().is_err());
        let cs: CycleStructure = "(1,3,6^4)".parse().unwrap();
        assert_eq!(cs.without_unique_fixed_point().unwrap().to_string(), "(3,6^4)");
        assert_eq!(cs.without_unique_fixed_point().unwrap().with_extra_fixed_point(), cs);
    }

    #[test]
    fn cycle_structure_order() {
        let parse = |t: &str| t.parse::<CycleStructure>().unwrap();
        assert!(parse("(1^3)") < parse("(1,2)"));
        assert!(parse("(1^2,4)") < parse("(1,2,3)"));
        assert!(parse("(1,2)") < parse("(3)"));
    }
}
