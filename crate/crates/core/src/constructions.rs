//! Standard quandle families and hardcoded example tables.
//!
//! Residues `r ∈ {0..n-1}` are written as elements `r + 1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{gcd, Permutation};
use crate::quandle::QuandleTable;

/// Table Q_{6,2}: connected, not latin, profile (1^2,4).
const Q6_2: [[u8; 6]; 6] = [
    [1, 5, 1, 6, 4, 2],
    [6, 2, 5, 2, 1, 3],
    [3, 6, 3, 5, 2, 4],
    [5, 4, 6, 4, 3, 1],
    [2, 3, 4, 1, 5, 5],
    [4, 1, 2, 3, 6, 6],
];

/// Table Q_{9,4}: latin, profile (1,2,6).
const Q9_4: [[u8; 9]; 9] = [
    [1, 3, 2, 9, 8, 7, 6, 5, 4],
    [3, 2, 1, 8, 7, 9, 5, 4, 6],
    [2, 1, 3, 7, 9, 8, 4, 6, 5],
    [7, 9, 8, 4, 6, 5, 1, 3, 2],
    [9, 8, 7, 6, 5, 4, 3, 2, 1],
    [8, 7, 9, 5, 4, 6, 2, 1, 3],
    [5, 4, 6, 2, 1, 3, 7, 9, 8],
    [4, 6, 5, 1, 3, 2, 9, 8, 7],
    [6, 5, 4, 3, 2, 1, 8, 7, 9],
];

/// Non-connected quandle of order 3 whose `R_1 = (1)(2 3)` has distinct
/// cycle lengths while `L_1` is constant.
const Q3_NONLATIN: [[u8; 3]; 3] = [[1, 1, 1], [3, 2, 2], [2, 3, 3]];

pub const NAMED_EXAMPLES: [&str; 3] = ["Q6_2", "Q9_4", "Q3_nonlatin"];

/// One of the hardcoded tables: `"Q6_2"`, `"Q9_4"` or `"Q3_nonlatin"`.
pub fn named_example(name: &str) -> Result<QuandleTable> {
    fn rows<const N: usize>(t: &[[u8; N]; N]) -> Vec<Vec<usize>> {
        t.iter().map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }
    let rows = match name {
        "Q6_2" => rows(&Q6_2),
        "Q9_4" => rows(&Q9_4),
        "Q3_nonlatin" => rows(&Q3_NONLATIN),
        _ => return Err(Error::UnknownExample(name.to_string())),
    };
    QuandleTable::from_rows(&rows)
}

/// Dihedral quandle: `i*j = 2j - i (mod n)`.
pub fn dihedral(n: usize) -> QuandleTable {
    assert!((1..=255).contains(&n), "dihedral order must be in 1..=255");
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((2 * j + n - i) % n) as u8))
        .collect();
    QuandleTable::from_zero_based_unchecked(n, data)
}

/// Affine (Alexander) quandle on `Z_n`: `i*j = t·i + (1-t)·j (mod n)`.
///
/// Right translations `i ↦ t·i + (1-t)·j` are the automorphisms, as the
/// right-distributive axiom requires; the mirrored convention
/// `i*j = (1-t)·i + t·j` is not what this builds. `t` is reduced mod `n` and
/// must be a unit.
pub fn affine(n: usize, t: usize) -> Result<QuandleTable> {
    if !(1..=255).contains(&n) {
        return Err(Error::BadConstruction {
            spec: format!("affine:{n},{t}"),
            reason: "order must be in 1..=255".into(),
        });
    }
    let t = t % n;
    if gcd(t as u128, n as u128) != 1 {
        return Err(Error::NotAUnit { n, t });
    }
    let one_minus_t = (1 + n - t) % n;
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| ((t * i + one_minus_t * j) % n) as u8))
        .collect();
    Ok(QuandleTable::from_zero_based_unchecked(n, data))
}

/// Conjugation quandle `x*y = y⁻¹ x y` on the smallest set containing `seed`
/// that is closed under conjugation by the generators and by its own
/// members. Elements are numbered in ascending order of their image lists.
///
/// Returns the table together with the permutation behind each element.
pub fn conjugation(generators: &[Permutation], seed: &Permutation) -> Result<(QuandleTable, Vec<Permutation>)> {
    let n = seed.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch { left: n, right: g.degree() });
    }
    // The cycle cache inside Permutation does not take part in ordering.
    #[allow(clippy::mutable_key_type)]
    let mut set: BTreeSet<Permutation> = BTreeSet::from([seed.clone()]);
    let mut frontier = vec![seed.clone()];
    while let Some(x) = frontier.pop() {
        let conjugators: Vec<Permutation> = generators.iter().chain(set.iter()).cloned().collect();
        for g in &conjugators {
            for h in [g.clone(), g.inverse()] {
                let y = x.conjugate_by(&h)?;
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        // New members also act on the old ones.
        let members: Vec<Permutation> = set.iter().cloned().collect();
        for m in &members {
            for h in [x.clone(), x.inverse()] {
                let y = m.conjugate_by(&h)?;
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    let elements: Vec<Permutation> = set.into_iter().collect();
    if elements.len() > 255 {
        return Err(Error::TableTooLarge(elements.len()));
    }
    let index = |p: &Permutation| elements.binary_search(p).expect("closed under conjugation");
    let mut rows = Vec::with_capacity(elements.len());
    for x in &elements {
        let mut row = Vec::with_capacity(elements.len());
        for y in &elements {
            // y⁻¹ x y as maps: t ↦ y⁻¹(x(y(t)))
            let prod = y.inverse().compose(&x.compose(y)?)?;
            row.push(index(&prod) + 1);
        }
        rows.push(row);
    }
    Ok((QuandleTable::from_rows(&rows)?, elements))
}

/// A constructor plus its parameters, with a one-line text form:
/// `dihedral:5`, `affine:9,4`, `named:Q9_4`,
/// `conjugation:4|(1 2),(1 2 3 4)|(1 2 3 4)` (degree, generators, seed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Dihedral { n: usize },
    Affine { n: usize, t: usize },
    Conjugation { generators: Vec<Permutation>, seed: Permutation },
    Named { name: String },
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<QuandleTable> {
        match self {
            ConstructionSpec::Dihedral { n } => Ok(dihedral(*n)),
            ConstructionSpec::Affine { n, t } => affine(*n, *t),
            ConstructionSpec::Conjugation { generators, seed } => Ok(conjugation(generators, seed)?.0),
            ConstructionSpec::Named { name } => named_example(name),
        }
    }
}

impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::BadConstruction { spec: s.to_string(), reason: reason.to_string() };
        let (kind, args) = s.split_once(':').ok_or_else(|| bad("expected KIND:ARGS"))?;
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| bad("expected a positive integer"));
        match kind.trim() {
            "dihedral" => {
                let n = int(args)?;
                if !(1..=255).contains(&n) {
                    return Err(bad("order must be in 1..=255"));
                }
                Ok(ConstructionSpec::Dihedral { n })
            }
            "affine" => {
                let (n, t) = args.split_once(',').ok_or_else(|| bad("expected affine:N,T"))?;
                let (n, t) = (int(n)?, int(t)?);
                if n == 0 {
                    return Err(bad("order must be positive"));
                }
                Ok(ConstructionSpec::Affine { n, t })
            }
            "named" => {
                let name = args.trim();
                if !NAMED_EXAMPLES.contains(&name) {
                    return Err(Error::UnknownExample(name.to_string()));
                }
                Ok(ConstructionSpec::Named { name: name.to_string() })
            }
            "conjugation" => {
                let parts: Vec<&str> = args.split('|').collect();
                let [degree, gens, seed] = parts[..] else {
                    return Err(bad("expected conjugation:DEGREE|GEN,GEN,...|SEED"));
                };
                let degree = int(degree)?;
                let mut generators = Vec::new();
                // Generators are separated by "),(" boundaries; commas inside
                // cycles are also allowed, so split on ')' followed by ','.
                for g in split_generators(gens) {
                    generators.push(Permutation::parse_cycles(degree, g)?);
                }
                let seed = Permutation::parse_cycles(degree, seed.trim())?;
                Ok(ConstructionSpec::Conjugation { generators, seed })
            }
            _ => Err(bad("unknown kind; expected dihedral, affine, named or conjugation")),
        }
    }
}

fn split_generators(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    for (pos, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                out.push(text[start..pos].trim());
                start = pos + 1;
            }
            _ => {}
        }
    }
    let last = text[start..].trim();
    if !last.is_empty() {
        out.push(last);
    }
    out
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionSpec::Dihedral { n } => write!(f, "dihedral:{n}"),
            ConstructionSpec::Affine { n, t } => write!(f, "affine:{n},{t}"),
            ConstructionSpec::Named { name } => write!(f, "named:{name}"),
            ConstructionSpec::Conjugation { generators, seed } => {
                let gens: Vec<String> = generators.iter().map(compact_cycles).collect();
                write!(f, "conjugation:{}|{}|{}", seed.degree(), gens.join(","), compact_cycles(seed))
            }
        }
    }
}

/// Cycle notation without 1-cycles; the identity is `()`.
fn compact_cycles(p: &Permutation) -> String {
    let s: String = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
        .collect();
    if s.is_empty() {
        "()".to_string()
    } else {
        s
    }
}
