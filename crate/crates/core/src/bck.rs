//! Pseudo BCK-meet-semilattices `(X; →, ⇝, ∧, 1)` and the term translations to and from
//! pseudo equality algebras.
//!
//! `pea_to_pbck` sends `(∼, ⌣∼)` to `a → b = (a ∧ b) ∼ a`, `a ⇝ b = a ⌣∼ (a ∧ b)`;
//! `pbck_to_pea` sends `(→, ⇝)` to `a ∼ b = b → a`, `a ⌣∼ b = a ⇝ b`. The second is only
//! sound on algebras satisfying meet compatibility
//! `b → a ≤ (b ∧ c) → (a ∧ c)` and `b ⇝ a ≤ (b ∧ c) ⇝ (a ∧ c)`.

use crate::algebra::{check_new_axioms_with, semilattice_report, FiniteAlgebra, ImpView, MeetView, SEMILATTICE};
use crate::derived::{meet_absorption, meet_compat_imp, meet_compat_simp};
use crate::error::{Error, Result};
use crate::laws::{self, implies, Law, Part};
use crate::report::{AxiomReport, CheckMode};
use crate::table::{default_names, validate_names, Table};

#[derive(Clone, Debug)]
pub struct BckAlgebra {
    names: Vec<String>,
    top: usize,
    meet: Table,
    imp: Table,
    simp: Table,
}

impl PartialEq for BckAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && self.meet == other.meet && self.imp == other.imp && self.simp == other.simp
    }
}

impl Eq for BckAlgebra {}

impl BckAlgebra {
    pub fn new(names: Vec<String>, top: usize, meet: Table, imp: Table, simp: Table) -> Result<Self> {
        let n = meet.size();
        if imp.size() != n || simp.size() != n {
            return Err(Error::Input("tables of different sizes".into()));
        }
        if top >= n {
            return Err(Error::Input(format!("top index {top} out of range")));
        }
        validate_names(&names, n)?;
        Ok(BckAlgebra {
            names,
            top,
            meet,
            imp,
            simp,
        })
    }

    pub fn from_tables(top: usize, meet: Table, imp: Table, simp: Table) -> Result<Self> {
        Self::new(default_names(meet.size(), top), top, meet, imp, simp)
    }

    /// Builds the meet from the order `a ≤ b ⟺ a → b = 1`. Fails if that relation is not
    /// a partial order in which every pair has a greatest lower bound.
    pub fn with_induced_meet(names: Vec<String>, top: usize, imp: Table, simp: Table) -> Result<Self> {
        let n = imp.size();
        let le = |a: usize, b: usize| imp.get(a, b) == top;
        let mut rows = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&z| le(z, a) && le(z, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&z| lower.iter().all(|&w| le(w, z)))
                    .ok_or_else(|| Error::Input(format!("elements {a} and {b} have no meet")))?;
                rows[a][b] = glb;
            }
        }
        Self::new(names, top, Table::from_rows(&rows)?, imp, simp)
    }

    pub fn size(&self) -> usize {
        self.meet.size()
    }
    pub fn top(&self) -> usize {
        self.top
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn meet_table(&self) -> &Table {
        &self.meet
    }
    pub fn imp_table(&self) -> &Table {
        &self.imp
    }
    pub fn simp_table(&self) -> &Table {
        &self.simp
    }
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet.get(a, b)
    }
    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp.get(a, b)
    }
    pub fn simp(&self, a: usize, b: usize) -> usize {
        self.simp.get(a, b)
    }
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        validate_names(&names, self.size())?;
        self.names = names;
        Ok(self)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn permute(&self, perm: &[usize]) -> BckAlgebra {
        let mut names = vec![String::new(); self.size()];
        for (i, name) in self.names.iter().enumerate() {
            names[perm[i]] = name.clone();
        }
        BckAlgebra {
            names,
            top: perm[self.top],
            meet: self.meet.permute(perm),
            imp: self.imp.permute(perm),
            simp: self.simp.permute(perm),
        }
    }
}

impl MeetView for BckAlgebra {
    fn size(&self) -> usize {
        self.meet.size()
    }
    fn top(&self) -> usize {
        self.top
    }
    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.meet.get(a, b))
    }
}

impl ImpView for BckAlgebra {
    fn imp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.imp.get(a, b))
    }
    fn simp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.simp.get(a, b))
    }
}

type BL = Law<dyn ImpView>;
type BP = Part<dyn ImpView>;

fn order_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    Some(v.le(t[0], t[1])? == (v.imp(t[0], t[1])? == v.top()))
}
fn order_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    Some(v.le(t[0], t[1])? == (v.simp(t[0], t[1])? == v.top()))
}
fn pbck1_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(v.simp(v.imp(a, b)?, v.simp(v.imp(b, c)?, v.imp(a, c)?)?)? == v.top())
}
fn pbck1_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(v.imp(v.simp(a, b)?, v.imp(v.simp(b, c)?, v.simp(a, c)?)?)? == v.top())
}
fn pbck2_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    Some(v.imp(v.top(), t[0])? == t[0])
}
fn pbck2_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    Some(v.simp(v.top(), t[0])? == t[0])
}
fn pbck3_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    Some(v.imp(t[0], v.top())? == v.top())
}
fn pbck3_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    Some(v.simp(t[0], v.top())? == v.top())
}
fn pbck4_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let top = v.top();
    implies(v.imp(a, b)? == top && v.imp(b, a)? == top, || Some(a == b))
}
fn pbck4_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let top = v.top();
    implies(v.simp(a, b)? == top && v.simp(b, a)? == top, || Some(a == b))
}
fn sl1(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.meet(a, v.simp(v.imp(a, b)?, b)?)? == a)
}
fn sl2(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.imp(v.meet(a, b)?, b)? == v.top())
}

pub(crate) static PBCK_AXIOMS: [BL; 7] = [
    BL {
        id: "order",
        arity: 2,
        parts: &[BP { holds: order_imp }, BP { holds: order_simp }],
    },
    BL {
        id: "PBCK1",
        arity: 3,
        parts: &[BP { holds: pbck1_imp }, BP { holds: pbck1_simp }],
    },
    BL {
        id: "PBCK2",
        arity: 1,
        parts: &[BP { holds: pbck2_imp }, BP { holds: pbck2_simp }],
    },
    BL {
        id: "PBCK3",
        arity: 1,
        parts: &[BP { holds: pbck3_imp }, BP { holds: pbck3_simp }],
    },
    BL {
        id: "PBCK4",
        arity: 2,
        parts: &[BP { holds: pbck4_imp }, BP { holds: pbck4_simp }],
    },
    BL {
        id: "SL1",
        arity: 2,
        parts: &[BP { holds: sl1 }],
    },
    BL {
        id: "SL2",
        arity: 2,
        parts: &[BP { holds: sl2 }],
    },
];

fn p1_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = (t[0], t[1], t[2]);
    implies(v.le(x, y)?, || v.le(v.imp(z, x)?, v.imp(z, y)?))
}
fn p1_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = (t[0], t[1], t[2]);
    implies(v.le(x, y)?, || v.le(v.simp(z, x)?, v.simp(z, y)?))
}
fn p2_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = (t[0], t[1], t[2]);
    implies(v.le(x, y)?, || v.le(v.imp(y, z)?, v.imp(x, z)?))
}
fn p2_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = (t[0], t[1], t[2]);
    implies(v.le(x, y)?, || v.le(v.simp(y, z)?, v.simp(x, z)?))
}
fn p3(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = (t[0], t[1], t[2]);
    v.le(v.imp(x, y)?, v.imp(v.imp(z, x)?, v.imp(z, y)?)?)
}
// x ⇝ y ≤ (z ⇝ x) ⇝ (z ⇝ y); with → in the middle the law already fails on a
// three-element chain of a non-commutative model
fn p4(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = (t[0], t[1], t[2]);
    v.le(v.simp(x, y)?, v.simp(v.simp(z, x)?, v.simp(z, y)?)?)
}

pub(crate) static PBCK_CONSEQUENCES: [BL; 4] = [
    BL {
        id: "P1",
        arity: 3,
        parts: &[BP { holds: p1_imp }, BP { holds: p1_simp }],
    },
    BL {
        id: "P2",
        arity: 3,
        parts: &[BP { holds: p2_imp }, BP { holds: p2_simp }],
    },
    BL {
        id: "P3",
        arity: 3,
        parts: &[BP { holds: p3 }],
    },
    BL {
        id: "P4",
        arity: 3,
        parts: &[BP { holds: p4 }],
    },
];

pub(crate) static MEET_COMPATIBILITY: [BL; 1] = [BL {
    id: "meet-compatibility",
    arity: 3,
    parts: &[
        BP { holds: meet_compat_imp },
        BP {
            holds: meet_compat_simp,
        },
    ],
}];

pub(crate) static MEET_ABSORPTION: [BL; 1] = [BL {
    id: "meet-absorption",
    arity: 2,
    parts: &[BP { holds: meet_absorption }],
}];

fn run(b: &BckAlgebra, set: &[BL], mode: CheckMode) -> AxiomReport {
    let mut failures = Vec::new();
    laws::run(b as &dyn ImpView, b.size(), set, mode, &mut failures);
    AxiomReport::from_failures(failures)
}

/// Semilattice laws of the meet, coincidence of the implication order with the meet
/// order, PBCK1–PBCK4 and the equational forms SL1, SL2.
pub fn check_pbck(b: &BckAlgebra) -> AxiomReport {
    check_pbck_with(b, CheckMode::Full)
}

pub fn check_pbck_with(b: &BckAlgebra, mode: CheckMode) -> AxiomReport {
    let semi = semilattice_report(b, &SEMILATTICE, mode);
    if mode == CheckMode::FastFail && !semi.verdict {
        return semi;
    }
    semi.merge(run(b, &PBCK_AXIOMS, mode))
}

/// P1–P4, which every pseudo BCK-algebra satisfies. Reported apart from the axioms.
pub fn check_pbck_consequences(b: &BckAlgebra) -> AxiomReport {
    run(b, &PBCK_CONSEQUENCES, CheckMode::Full)
}

/// `b → a ≤ (b ∧ c) → (a ∧ c)` and `b ⇝ a ≤ (b ∧ c) ⇝ (a ∧ c)` for all `(a, b, c)`.
pub fn check_meet_compatibility(b: &BckAlgebra) -> AxiomReport {
    run(b, &MEET_COMPATIBILITY, CheckMode::Full)
}

pub fn check_meet_compatibility_with(b: &BckAlgebra, mode: CheckMode) -> AxiomReport {
    run(b, &MEET_COMPATIBILITY, mode)
}

/// `a → (a ∧ b) = a → b` and `a ⇝ (a ∧ b) = a ⇝ b`; holds under meet compatibility.
pub fn check_meet_absorption(b: &BckAlgebra) -> AxiomReport {
    run(b, &MEET_ABSORPTION, CheckMode::Full)
}

pub fn replay_pbck_law(b: &BckAlgebra, law: &str, witness: &[usize]) -> bool {
    laws::violates(b as &dyn MeetView, &SEMILATTICE, law, witness)
        || [
            &PBCK_AXIOMS[..],
            &PBCK_CONSEQUENCES,
            &MEET_COMPATIBILITY,
            &MEET_ABSORPTION,
        ]
        .iter()
        .any(|set| laws::violates(b as &dyn ImpView, set, law, witness))
}

pub(crate) fn to_pbck_unchecked(a: &FiniteAlgebra) -> BckAlgebra {
    let d = a.derived();
    BckAlgebra {
        names: a.names().to_vec(),
        top: a.top(),
        meet: a.meet_table().clone(),
        imp: d.imp.clone(),
        simp: d.simp.clone(),
    }
}

pub(crate) fn to_pea_unchecked(b: &BckAlgebra) -> FiniteAlgebra {
    FiniteAlgebra::new(
        b.names.clone(),
        b.top,
        b.meet.clone(),
        b.imp.transpose(),
        b.simp.clone(),
    )
    .expect("tables already validated")
}

fn require_pea(a: &FiniteAlgebra) -> Result<()> {
    let r = check_new_axioms_with(a, CheckMode::FastFail);
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(Error::Contract(format!(
            "not a pseudo equality algebra: {} fails at {:?}",
            f.axiom, f.witness
        ))),
    }
}

fn require_pbck(b: &BckAlgebra) -> Result<()> {
    let r = check_pbck_with(b, CheckMode::FastFail);
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(Error::Contract(format!(
            "not a pseudo BCK-meet-semilattice: {} fails at {:?}",
            f.axiom, f.witness
        ))),
    }
}

/// The translation to a pseudo BCK-meet-semilattice. The result is checked: it must
/// satisfy the axioms and meet compatibility.
pub fn pea_to_pbck(a: &FiniteAlgebra) -> Result<BckAlgebra> {
    require_pea(a)?;
    let b = to_pbck_unchecked(a);
    let r = check_pbck_with(&b, CheckMode::FastFail).merge(check_meet_compatibility_with(&b, CheckMode::FastFail));
    if let Some(f) = r.failures.first() {
        return Err(Error::violation(
            format!("translated algebra satisfies {}", f.axiom),
            &f.witness,
        ));
    }
    Ok(b)
}

/// The translation back to a pseudo equality algebra. Algebras without meet
/// compatibility are rejected with the first violating triple.
pub fn pbck_to_pea(b: &BckAlgebra) -> Result<FiniteAlgebra> {
    require_pbck(b)?;
    let compat = check_meet_compatibility_with(b, CheckMode::FastFail);
    if let Some(f) = compat.failures.first() {
        return Err(Error::Rejected {
            law: "meet-compatibility",
            witness: f.witness.clone(),
        });
    }
    let a = to_pea_unchecked(b);
    let r = check_new_axioms_with(&a, CheckMode::FastFail);
    if let Some(f) = r.failures.first() {
        return Err(Error::violation(
            format!("translated algebra satisfies {}", f.axiom),
            &f.witness,
        ));
    }
    Ok(a)
}

/// `true` iff translating to a pBCK, back, and again gives the first translation.
pub fn roundtrip_pea(a: &FiniteAlgebra) -> Result<bool> {
    let fa = pea_to_pbck(a)?;
    let gfa = pbck_to_pea(&fa).map_err(|e| match e {
        Error::Rejected { witness, .. } => Error::violation("translated algebra is meet compatible", &witness),
        other => other,
    })?;
    Ok(to_pbck_unchecked(&gfa) == fa)
}

/// `true` iff translating to a pseudo equality algebra and back is the identity.
pub fn roundtrip_pbck(b: &BckAlgebra) -> Result<bool> {
    let gb = pbck_to_pea(b).map_err(|e| match e {
        Error::Rejected { witness, .. } => Error::Contract(format!("meet compatibility fails at {witness:?}")),
        other => other,
    })?;
    Ok(to_pbck_unchecked(&gb) == *b)
}

/// An algebra is invariant iff it is fixed by the two translations composed.
pub fn is_invariant(a: &FiniteAlgebra) -> Result<bool> {
    require_pea(a)?;
    Ok(is_invariant_unchecked(a))
}

pub(crate) fn is_invariant_unchecked(a: &FiniteAlgebra) -> bool {
    to_pea_unchecked(&to_pbck_unchecked(a)) == *a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn ciungu5_is_a_pbck_without_meet_compatibility() {
        let b = builtin::ciungu5();
        let r = check_pbck(&b);
        assert!(r.verdict, "{r:?}");
        assert!(check_pbck_consequences(&b).verdict);

        let x = check_meet_compatibility(&b);
        assert!(!x.verdict);
        let idx = |s: &str| b.index_of(s).unwrap();
        let (a_, b_, c_) = (idx("a"), idx("b"), idx("c"));
        assert!(x.contains("meet-compatibility", &[b_, c_, a_]));
        // row-major first violation comes from the ⇝ half; the → half first fails at (b, a, a)
        assert_eq!(x.failures[0].witness, vec![a_, b_, b_]);
        assert!(x.contains("meet-compatibility", &[b_, a_, a_]));
        for f in &x.failures {
            assert!(replay_pbck_law(&b, &f.axiom, &f.witness));
        }
    }

    #[test]
    fn ciungu5_is_rejected_by_the_backward_translation() {
        let b = builtin::ciungu5();
        match pbck_to_pea(&b) {
            Err(Error::Rejected { law, witness }) => {
                assert_eq!(law, "meet-compatibility");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
        assert!(matches!(roundtrip_pbck(&b), Err(Error::Contract(_))));
    }

    #[test]
    fn mutated_ciungu5_is_not_a_pbck() {
        let b = builtin::ciungu5();
        let (ia, ib) = (b.index_of("a").unwrap(), b.index_of("b").unwrap());
        let mut imp = b.imp_table().clone();
        imp.set(ia, ib, b.top());
        let m = BckAlgebra::new(
            b.names().to_vec(),
            b.top(),
            b.meet_table().clone(),
            imp,
            b.simp_table().clone(),
        )
        .unwrap();
        assert!(!check_pbck(&m).verdict);
    }

    #[test]
    fn two_chain_round_trips() {
        let a = builtin::two_chain();
        let f = pea_to_pbck(&a).unwrap();
        let classical = builtin::two_chain_pbck();
        assert_eq!(f, classical);
        assert!(check_pbck(&f).verdict);
        assert!(check_meet_compatibility(&f).verdict);
        assert!(roundtrip_pea(&a).unwrap());
        assert!(roundtrip_pbck(&classical).unwrap());
        // the backward image sets 1 ∼ 0 = 0 → 1 = 1, so it is not the biconditional
        let g = pbck_to_pea(&classical).unwrap();
        assert_eq!(g, builtin::two_chain_hoop());
        assert!(!is_invariant(&a).unwrap());
        assert!(is_invariant(&g).unwrap());
    }

    #[test]
    fn induced_meet_of_ciungu5() {
        let b = builtin::ciungu5();
        let idx = |s: &str| b.index_of(s).unwrap();
        assert_eq!(b.meet(idx("a"), idx("b")), idx("0"));
        assert_eq!(b.meet(idx("a"), idx("c")), idx("a"));
        assert_eq!(b.meet(idx("b"), idx("c")), idx("b"));
        assert!(!b.le(idx("a"), idx("b")));
    }
}
