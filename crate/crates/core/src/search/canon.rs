//! Canonical forms of models under relabelling of the carrier.

use itertools::Itertools;

use crate::table::Table;

/// The least concatenation `(top, t₀, t₁, t₂)` over all permutations of the carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub top: u8,
    pub cells: Vec<u8>,
}

fn image(tables: &[&Table], top: usize, perm: &[usize]) -> CanonicalForm {
    let n = perm.len();
    let mut cells = vec![0u8; tables.len() * n * n];
    for (k, t) in tables.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                cells[k * n * n + perm[a] * n + perm[b]] = perm[t.get(a, b)] as u8;
            }
        }
    }
    CanonicalForm {
        top: perm[top] as u8,
        cells,
    }
}

/// Returns the canonical form and a permutation (`perm[old] = new`) that realises it.
pub fn canonical_form(tables: &[&Table], top: usize) -> (CanonicalForm, Vec<usize>) {
    let n = tables[0].size();
    let mut best: Option<(CanonicalForm, Vec<usize>)> = None;
    for perm in (0..n).permutations(n) {
        let img = image(tables, top, &perm);
        if best.as_ref().is_none_or(|(b, _)| img < *b) {
            best = Some((img, perm));
        }
    }
    best.expect("at least one permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_on_a_chain() {
        let meet = Table::from_fn(3, |a, b| a.min(b));
        let sim = Table::from_fn(3, |a, b| if a == b { 2 } else { a.min(b) });
        let (c, perm) = canonical_form(&[&meet, &sim], 2);
        let m2 = meet.permute(&perm);
        let s2 = sim.permute(&perm);
        let (c2, _) = canonical_form(&[&m2, &s2], perm[2]);
        assert_eq!(c, c2);
    }
}
