//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the enumerator or canonicalizer under test.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Table as 0-based rows: `t[i][j] = i * j`.
pub type Raw = Vec<Vec<usize>>;

pub fn is_quandle(t: &Raw) -> bool {
    let n = t.len();
    if t.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return false;
    }
    if (0..n).any(|i| t[i][i] != i) {
        return false;
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for row in t {
            if std::mem::replace(&mut seen[row[j]], true) {
                return false;
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if t[t[i][j]][k] != t[t[i][k]][t[j][k]] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_latin(t: &Raw) -> bool {
    t.iter().all(|row| row.iter().collect::<BTreeSet<_>>().len() == row.len())
}

pub fn is_connected(t: &Raw) -> bool {
    let n = t.len();
    let mut reached = vec![false; n];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(x) = stack.pop() {
        // Orbits under a finite group: forward images suffice.
        for &y in &t[x] {
            if !reached[y] {
                reached[y] = true;
                stack.push(y);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Every permutation of `0..n`, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Table of `sigma(i) * sigma(j) = sigma(i * j)`.
pub fn relabel(t: &Raw, sigma: &[usize]) -> Raw {
    let n = t.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[sigma[i]][sigma[j]] = sigma[t[i][j]];
        }
    }
    out
}

/// Least relabeling over all `n!` permutations.
pub fn naive_canonical(t: &Raw) -> Raw {
    permutations(t.len()).iter().map(|s| relabel(t, s)).min().unwrap()
}

pub fn automorphism_count(t: &Raw) -> usize {
    permutations(t.len()).iter().filter(|s| relabel(t, s) == *t).count()
}

/// Every `n x n` table over `0..n`, filtered by the axioms.
pub fn all_tables_filter(n: usize) -> BTreeSet<Raw> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut out = BTreeSet::new();
    for code in 0..total {
        let mut c = code;
        let mut t = vec![vec![0; n]; n];
        for cell in 0..cells {
            t[cell / n][cell % n] = c % n;
            c /= n;
        }
        if is_quandle(&t) {
            out.insert(t);
        }
    }
    out
}

/// Every choice of columns fixing their own index, filtered by the axioms.
pub fn column_product_filter(n: usize) -> BTreeSet<Raw> {
    let perms = permutations(n);
    let choices: Vec<Vec<&Vec<usize>>> = (0..n).map(|c| perms.iter().filter(|p| p[c] == c).collect()).collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let mut t = vec![vec![0; n]; n];
        for (j, &k) in idx.iter().enumerate() {
            for i in 0..n {
                t[i][j] = choices[j][k][i];
            }
        }
        if is_quandle(&t) {
            out.insert(t);
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Column-by-column search checking `R_k R_j R_k^-1 = R_{R_k(j)}` on
/// assigned columns only. Returns all tables.
pub fn column_backtrack(n: usize) -> Vec<Raw> {
    let perms = permutations(n);
    let choices: Vec<Vec<Vec<usize>>> =
        (0..n).map(|c| perms.iter().filter(|p| p[c] == c).cloned().collect()).collect();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<usize>> = Vec::new();
    fn consistent(cols: &[Vec<usize>], n: usize) -> bool {
        let m = cols.len();
        for k in 0..m {
            let mut inv = vec![0; n];
            for x in 0..n {
                inv[cols[k][x]] = x;
            }
            for j in 0..m {
                let t = cols[k][j];
                if t >= m || (j != m - 1 && k != m - 1 && t != m - 1) {
                    continue;
                }
                if (0..n).any(|x| cols[k][cols[j][inv[x]]] != cols[t][x]) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(cols: &mut Vec<Vec<usize>>, choices: &[Vec<Vec<usize>>], n: usize, out: &mut Vec<Raw>) {
        let m = cols.len();
        if m == n {
            out.push((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect());
            return;
        }
        for p in &choices[m] {
            cols.push(p.clone());
            if consistent(cols, n) {
                rec(cols, choices, n, out);
            }
            cols.pop();
        }
    }
    rec(&mut cols, &choices, n, &mut out);
    out
}

/// Isomorphism classes by naive canonical form.
pub fn classes(tables: impl IntoIterator<Item = Raw>) -> BTreeSet<Raw> {
    tables.into_iter().map(|t| naive_canonical(&t)).collect()
}

pub fn to_raw(q: &quandles::QuandleTable) -> Raw {
    q.rows().into_iter().map(|r| r.into_iter().map(|v| v - 1).collect()).collect()
}

pub fn from_raw(t: &Raw) -> quandles::QuandleTable {
    let rows: Vec<Vec<usize>> = t.iter().map(|r| r.iter().map(|v| v + 1).collect()).collect();
    quandles::QuandleTable::from_rows(&rows).unwrap()
}

/// Connected quandles with repeat-free profiles, as published: order,
/// catalog indices, profile with the fixed point omitted.
pub const REPEAT_FREE_PUBLISHED: &[(usize, &str, &str)] = &[
    (1, "1", "()"),
    (3, "1", "(2)"),
    (4, "1", "(3)"),
    (5, "2,3", "(4)"),
    (7, "4,5", "(6)"),
    (8, "2,3", "(7)"),
    (9, "4-6", "(2,6)"),
    (9, "7,8", "(8)"),
    (11, "6-9", "(10)"),
    (12, "4", "(2,3,6)"),
    (13, "1,5,6,10", "(12)"),
    (16, "8,9", "(15)"),
    (17, "2,4-6,9-11,13", "(16)"),
    (19, "1,2,9,12-14", "(18)"),
    (20, "7,8", "(3,4,12)"),
    (23, "4,6,9,10,13,14,16,18-20", "(22)"),
    (24, "24,25", "(2,7,14)"),
    (25, "21-30", "(4,20)"),
    (25, "31-34", "(24)"),
    (27, "37-40,47-52,60,61", "(2,6,18)"),
    (27, "62-65", "(26)"),
    (29, "1,2,7,9,10,13,14,17,18,20,25,26", "(28)"),
    (31, "2,10-12,16,20,21,23", "(30)"),
    (32, "10-15", "(31)"),
    (32, "16,17", "(3,7,21)"),
    (36, "69,70", "(3,8,24)"),
    (37, "24-35", "(36)"),
    (40, "29-32", "(4,7,28)"),
    (41, "24-39", "(40)"),
    (43, "30-41", "(42)"),
    (44, "6-9", "(3,10,30)"),
    (47, "24-45", "(46)"),
];

/// Profiles of latin quandles with repeated cycle lengths, as published,
/// fixed point omitted.
pub const REPEATED_PUBLISHED: &[(usize, &[&str])] = &[
    (5, &["(2^2)"]),
    (7, &["(2^3)", "(3^2)"]),
    (9, &["(2^4)", "(4^2)"]),
    (11, &["(2^5)", "(5^2)"]),
    (13, &["(2^6)", "(3^4)", "(4^3)", "(6^2)"]),
    (15, &["(2^7)", "(2,4^3)", "(2^2,10)"]),
    (16, &["(3^5)", "(5^3)", "(3,6^2)"]),
    (17, &["(2^8)", "(4^4)", "(8^2)"]),
    (19, &["(2^9)", "(3^6)", "(6^3)", "(9^2)"]),
    (20, &["(2^2,3,6^2)"]),
    (21, &["(2^10)", "(2,6^3)", "(2,3^2,6^2)", "(2^3,14)"]),
    (23, &["(2^11)", "(11^2)"]),
    (25, &["(2^12)", "(3^8)", "(4^6)", "(2^2,4^5)", "(6^4)", "(8^3)", "(2^2,10^2)", "(12^2)"]),
    (27, &["(2^13)", "(2,4^6)", "(2^4,6^3)", "(2,6^4)", "(2,8^3)", "(13^2)", "(2^4,18)"]),
    (28, &["(3^9)", "(3,6^4)", "(2^3,3,6^3)"]),
    (29, &["(2^14)", "(4^7)", "(7^4)", "(14^2)"]),
    (31, &["(2^15)", "(3^10)", "(5^6)", "(6^5)", "(10^3)", "(15^2)"]),
    (33, &["(2^16)", "(2^5,22)", "(2,5^2,10^2)", "(2,10^3)"]),
    (35, &["(3^2,4,12^2)", "(4,6,12^2)", "(2^2,3^2,6^4)", "(2^2,6^5)", "(2^3,4^7)", "(2^17)"]),
    (36, &["(3,4^2,12^2)", "(2^4,3,6^4)", "(2,3,6^5)"]),
    (37, &["(2^18)", "(3^12)", "(4^9)", "(6^6)", "(9^4)", "(12^3)", "(18^2)"]),
    (39, &["(2^19)", "(2^6,26)", "(2,12^3)", "(2,6^6)", "(2,4^9)", "(2,3^4,6^4)"]),
    (40, &["(2^2,7,14^2)"]),
    (41, &["(2^20)", "(4^10)", "(5^8)", "(8^5)", "(10^4)", "(20^2)"]),
    (43, &["(2^21)", "(3^14)", "(6^7)", "(7^6)", "(14^3)", "(21^2)"]),
    (44, &["(3,5^2,15^2)", "(2^5,3,6^5)"]),
    (
        45,
        &[
            "(4,8^5)",
            "(2^2,8^5)",
            "(4^11)",
            "(2^2,4^10)",
            "(2^22)",
            "(2^4,6^6)",
            "(2^4,4^9)",
            "(2^7,6^5)",
            "(2^7,30)",
            "(2^7,10^3)",
            "(2,4^3,6,12^2)",
        ],
    ),
    (47, &["(2^23)", "(23^2)"]),
];

/// Expands `"4-6,9"` into `[4, 5, 6, 9]`.
pub fn expand_indices(text: &str) -> Vec<usize> {
    text.split(',')
        .flat_map(|part| match part.split_once('-') {
            Some((a, b)) => (a.parse().unwrap()..=b.parse().unwrap()).collect::<Vec<usize>>(),
            None => vec![part.parse().unwrap()],
        })
        .collect()
}
