//! Named models that ship with the tool, loadable as `builtin:NAME`.

use crate::algebra::FiniteAlgebra;
use crate::bck::BckAlgebra;
use crate::format::Model;
use crate::hoop::{hoop_to_pea, PseudoHoop};
use crate::table::Table;

pub const NAMES: &[&str] = &[
    "ciungu5",
    "degenerate",
    "two_chain",
    "two_chain_hoop",
    "two_chain_pbck",
    "boolean_hoop",
    "lukasiewicz3",
    "lukasiewicz3_hoop",
];

/// Pseudo BCK-meet-semilattice on `0 a b c 1` without meet compatibility.
pub const CIUNGU5_TEXT: &str = "\
kind pbck
elements 0 a b c 1
top 1
# 0 < a < c < 1, 0 < b < c < 1, a and b incomparable
table meet
0 0 0 0 0
0 a 0 a a
0 0 b b b
0 a b c c
0 a b c 1
table imp
1 1 1 1 1
0 1 b 1 1
a a 1 1 1
0 a b 1 1
0 a b c 1
table simp
1 1 1 1 1
b 1 b 1 1
0 a 1 1 1
0 a b 1 1
0 a b c 1
";

pub fn lookup(name: &str) -> Option<Model> {
    Some(match name {
        "ciungu5" => Model::Pbck(ciungu5()),
        "degenerate" => Model::Pea(degenerate()),
        "two_chain" => Model::Pea(two_chain()),
        "two_chain_hoop" => Model::Pea(two_chain_hoop()),
        "two_chain_pbck" => Model::Pbck(two_chain_pbck()),
        "boolean_hoop" => Model::Hoop(boolean_hoop()),
        "lukasiewicz3" => Model::Pea(three_chain_lukasiewicz_pea()),
        "lukasiewicz3_hoop" => Model::Hoop(lukasiewicz_hoop(3)),
        _ => return None,
    })
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn chain_names(n: usize) -> Vec<String> {
    match n {
        1 => names(&["1"]),
        2 => names(&["0", "1"]),
        _ => {
            let mut v = vec!["0".to_string()];
            v.extend((1..n - 1).map(|i| ((b'a' + (i - 1) as u8) as char).to_string()));
            v.push("1".to_string());
            v
        }
    }
}

/// Built from the two implication tables; the meet is read off the induced order.
pub fn ciungu5() -> BckAlgebra {
    let names = names(&["0", "a", "b", "c", "1"]);
    let imp = [
        [4, 4, 4, 4, 4],
        [0, 4, 2, 4, 4],
        [1, 1, 4, 4, 4],
        [0, 1, 2, 4, 4],
        [0, 1, 2, 3, 4],
    ];
    let simp = [
        [4, 4, 4, 4, 4],
        [2, 4, 2, 4, 4],
        [0, 1, 4, 4, 4],
        [0, 1, 2, 4, 4],
        [0, 1, 2, 3, 4],
    ];
    let t = |rows: [[usize; 5]; 5]| Table::from_fn(5, |a, b| rows[a][b]);
    BckAlgebra::with_induced_meet(names, 4, t(imp), t(simp)).unwrap()
}

/// The one-element algebra.
pub fn degenerate() -> FiniteAlgebra {
    let t = Table::from_fn(1, |_, _| 0);
    FiniteAlgebra::new(names(&["1"]), 0, t.clone(), t.clone(), t).unwrap()
}

/// `{0, 1}` with both operations the biconditional.
pub fn two_chain() -> FiniteAlgebra {
    let meet = Table::from_fn(2, |a, b| a.min(b));
    let eq = Table::from_fn(2, |a, b| usize::from(a == b));
    FiniteAlgebra::new(chain_names(2), 1, meet, eq.clone(), eq).unwrap()
}

fn classical() -> Table {
    Table::from_fn(2, |a, b| usize::from(a <= b))
}

pub fn two_chain_pbck() -> BckAlgebra {
    let meet = Table::from_fn(2, |a, b| a.min(b));
    BckAlgebra::new(chain_names(2), 1, meet, classical(), classical()).unwrap()
}

/// Two-element Boolean algebra as a hoop: `⊙ = ∧`, both residua classical implication.
pub fn boolean_hoop() -> PseudoHoop {
    let prod = Table::from_fn(2, |a, b| a.min(b));
    PseudoHoop::new(chain_names(2), 1, prod, classical(), classical()).unwrap()
}

/// The algebra induced by the Boolean hoop: `1 ∼ 0 = 1`, `0 ∼ 1 = 0`, `⌣∼` classical
/// implication.
pub fn two_chain_hoop() -> FiniteAlgebra {
    hoop_to_pea(&boolean_hoop()).unwrap()
}

/// Łukasiewicz chain `0 < ... < n−1`: `a ⊙ b = max(0, a + b − (n−1))`,
/// `a → b = a ⇝ b = min(n−1, n−1 − a + b)`.
pub fn lukasiewicz_hoop(n: usize) -> PseudoHoop {
    assert!(n >= 1);
    let top = n - 1;
    let prod = Table::from_fn(n, |a, b| (a + b).saturating_sub(top));
    let imp = Table::from_fn(n, |a, b| (top + b).saturating_sub(a).min(top));
    PseudoHoop::new(chain_names(n), top, prod, imp.clone(), imp).unwrap()
}

pub fn three_chain_lukasiewicz_pea() -> FiniteAlgebra {
    hoop_to_pea(&lukasiewicz_hoop(3)).unwrap()
}
