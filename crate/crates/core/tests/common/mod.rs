#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use rand::Rng;
use trimax::diagram::{Column, WiringDiagram};

/// For every wire, the wires it crosses in left-to-right order.
pub fn crossing_sequences(d: &WiringDiagram) -> Vec<Vec<usize>> {
    let n = d.n();
    let mut order: Vec<usize> = (0..n).collect();
    let mut seq = vec![Vec::new(); n];
    for c in d.columns() {
        for &r in c.rows() {
            let (a, b) = (order[r - 1], order[r]);
            seq[a].push(b);
            seq[b].push(a);
            order.swap(r - 1, r);
        }
    }
    seq
}

#[derive(Debug, PartialEq, Eq)]
pub struct Oracle {
    pub triangles: usize,
    /// `(wire, crossings to the left)` of every triangle side.
    pub used: BTreeSet<(usize, usize)>,
    pub contact: Vec<usize>,
}

/// Three wires bound a triangle iff on each of them the crossings with the
/// other two are consecutive: no other wire cuts a side.
pub fn oracle(d: &WiringDiagram) -> Oracle {
    let n = d.n();
    let seq = crossing_sequences(d);
    let pos = |w: usize, other: usize| seq[w].iter().position(|&x| x == other);
    let mut triangles = 0;
    let mut used = BTreeSet::new();
    let mut contact = vec![0; n];
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut sides = Vec::new();
                for (w, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
                    match (pos(w, x), pos(w, y)) {
                        (Some(i), Some(j)) if i.abs_diff(j) == 1 => sides.push((w, i.max(j))),
                        _ => break,
                    }
                }
                if sides.len() == 3 {
                    triangles += 1;
                    for s in sides {
                        used.insert(s);
                        contact[s.0] += 1;
                    }
                }
            }
        }
    }
    Oracle {
        triangles,
        used,
        contact,
    }
}

/// Random complete diagram: random crossings of adjacent uncrossed pairs,
/// each placed in the leftmost column its neighbours allow.
pub fn random_complete(n: usize, rng: &mut impl Rng) -> WiringDiagram {
    let mut order: Vec<usize> = (0..n).collect();
    // Column index after the last crossing in each row (0 = none yet).
    let mut next_free = vec![0usize; n + 1];
    let mut columns: Vec<Vec<usize>> = Vec::new();
    loop {
        let ready: Vec<usize> = (1..n).filter(|&r| order[r - 1] < order[r]).collect();
        if ready.is_empty() {
            break;
        }
        let r = ready[rng.gen_range(0..ready.len())];
        let k = next_free[r - 1]
            .max(next_free[r])
            .max(next_free[(r + 1).min(n)]);
        if columns.len() <= k {
            columns.push(Vec::new());
        }
        columns[k].push(r);
        next_free[r] = k + 1;
        order.swap(r - 1, r);
    }
    let columns = columns
        .into_iter()
        .map(|c| Column::new(c).expect("non-adjacent by construction"))
        .collect();
    WiringDiagram::from_columns(n, columns).expect("valid by construction")
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

/// Stored maximal witnesses `(n, best, diagram)`.
pub fn witnesses() -> Vec<(usize, usize, WiringDiagram)> {
    [(5, 5), (6, 7), (7, 11), (8, 14), (9, 21), (10, 25)]
        .into_iter()
        .map(|(n, best)| {
            let path = data_dir().join(format!("witness_n{n}.wd"));
            let text = std::fs::read_to_string(&path).expect("witness file");
            (
                n,
                best,
                WiringDiagram::parse(&text).expect("witness parses"),
            )
        })
        .collect()
}
