//! Finite lattices with the top at the last index, one per isomorphism class.
//!
//! A finite meet-semilattice with a top is a lattice, so these are exactly the meet
//! reducts available to every signature searched here.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::table::Table;

/// Lattices of size `n` with top `n − 1`, sorted by their meet table.
pub fn lattices(n: usize) -> Vec<Table> {
    if n == 0 {
        return Vec::new();
    }
    // naturally labelled posets: x ≤ y only if x ≤ y as integers; the top is n − 1
    let inner: Vec<(usize, usize)> = (0..n.saturating_sub(1)).tuple_combinations().collect();
    let mut seen = BTreeSet::new();
    for bits in 0u64..1 << inner.len() {
        let mut le = vec![vec![false; n]; n];
        for x in 0..n {
            le[x][x] = true;
            le[x][n - 1] = true;
        }
        for (k, &(x, y)) in inner.iter().enumerate() {
            le[x][y] = bits >> k & 1 == 1;
        }
        let transitive = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| !(le[x][y] && le[y][z]) || le[x][z])));
        if !transitive {
            continue;
        }
        if let Some(meet) = meet_of(&le) {
            seen.insert(canonical_meet(&meet));
        }
    }
    seen.into_iter().collect()
}

fn meet_of(le: &[Vec<bool>]) -> Option<Table> {
    let n = le.len();
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| le[z][a] && le[z][b]).collect();
            rows[a][b] = *lower.iter().find(|&&z| lower.iter().all(|&w| le[w][z]))?;
        }
    }
    Table::from_rows(&rows).ok()
}

/// Least relabelling that keeps the top at `n − 1`.
fn canonical_meet(meet: &Table) -> Table {
    let n = meet.size();
    (0..n - 1)
        .permutations(n - 1)
        .map(|mut p| {
            p.push(n - 1);
            meet.permute(&p)
        })
        .min()
        .unwrap_or_else(|| meet.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // lattices up to isomorphism: 1, 1, 1, 2, 5, 15
        let counts: Vec<usize> = (1..=6).map(|n| lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }

    #[test]
    fn top_is_last() {
        for n in 1..=5 {
            for m in lattices(n) {
                for x in 0..n {
                    assert_eq!(m.get(x, n - 1), x);
                    assert_eq!(m.get(x, x), x);
                }
            }
        }
    }
}
