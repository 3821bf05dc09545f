//! The derived implications `a → b := (a ∧ b) ∼ a` and `a ⇝ b := a ⌣∼ (a ∧ b)` and the
//! catalogue of properties they satisfy in every pseudo equality algebra.

use crate::algebra::{FiniteAlgebra, ImpView, MeetView, PeaView};
use crate::laws::{self, implies, Law, Part};
use crate::report::{AxiomReport, CheckMode};
use crate::table::Table;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedTables {
    pub imp: Table,
    pub simp: Table,
}

impl DerivedTables {
    pub fn derive(a: &FiniteAlgebra) -> Self {
        let n = a.size();
        DerivedTables {
            imp: Table::from_fn(n, |x, y| a.sim(a.meet(x, y), x)),
            simp: Table::from_fn(n, |x, y| a.bsim(x, a.meet(x, y))),
        }
    }
}

/// Computes `→` and `⇝` entrywise from the defining equations.
pub fn derive(a: &FiniteAlgebra) -> DerivedTables {
    DerivedTables::derive(a)
}

/// An algebra paired with externally supplied implication tables.
pub(crate) struct DerivedView {
    pub alg: FiniteAlgebra,
    pub d: DerivedTables,
}

impl DerivedView {
    fn new(a: &FiniteAlgebra, d: &DerivedTables) -> Self {
        DerivedView {
            alg: a.clone(),
            d: d.clone(),
        }
    }
}

impl MeetView for DerivedView {
    fn size(&self) -> usize {
        self.alg.size()
    }
    fn top(&self) -> usize {
        self.alg.top()
    }
    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.alg.meet(a, b))
    }
}

impl ImpView for DerivedView {
    fn imp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.d.imp.get(a, b))
    }
    fn simp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.d.simp.get(a, b))
    }
}

impl PeaView for DerivedView {
    fn sim(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.alg.sim(a, b))
    }
    fn bsim(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.alg.bsim(a, b))
    }
}

type PL = Law<dyn PeaView>;
type PP = Part<dyn PeaView>;

// --- monotonicity of the implications

fn sim_meet_weakening(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    let ab = v.meet(a, b)?;
    let ac = v.meet(a, c)?;
    let abc = v.meet(ab, c)?;
    Some(v.le(v.sim(ab, a)?, v.sim(abc, ac)?)? && v.le(v.imp(a, b)?, v.imp(ac, b)?)?)
}
fn bsim_meet_weakening(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    let ab = v.meet(a, b)?;
    let ac = v.meet(a, c)?;
    let abc = v.meet(ab, c)?;
    Some(v.le(v.bsim(a, ab)?, v.bsim(ac, abc)?)? && v.le(v.simp(a, b)?, v.simp(ac, b)?)?)
}
fn monotone_consequent(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    implies(v.le(c, b)?, || {
        Some(v.le(v.imp(a, c)?, v.imp(a, b)?)? && v.le(v.simp(a, c)?, v.simp(a, b)?)?)
    })
}
fn antitone_antecedent(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    implies(v.le(c, a)?, || {
        Some(v.le(v.imp(a, b)?, v.imp(c, b)?)? && v.le(v.simp(a, b)?, v.simp(c, b)?)?)
    })
}

pub(crate) static MONOTONICITY: [PL; 4] = [
    PL {
        id: "sim-meet-weakening",
        arity: 3,
        parts: &[PP {
            holds: sim_meet_weakening,
        }],
    },
    PL {
        id: "bsim-meet-weakening",
        arity: 3,
        parts: &[PP {
            holds: bsim_meet_weakening,
        }],
    },
    PL {
        id: "monotone-consequent",
        arity: 3,
        parts: &[PP {
            holds: monotone_consequent,
        }],
    },
    PL {
        id: "antitone-antecedent",
        arity: 3,
        parts: &[PP {
            holds: antitone_antecedent,
        }],
    },
];

// --- the implication law catalogue

fn equiv_below_imp(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.le(v.bsim(a, b)?, v.simp(a, b)?)? && v.le(v.sim(b, a)?, v.imp(a, b)?)?)
}
fn equiv_expansion(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, c) = (t[0], t[1]);
    let l = v.bsim(v.sim(c, a)?, c)?;
    let r = v.sim(c, v.bsim(a, c)?)?;
    v.le(a, v.meet(l, r)?)
}
fn unit_equiv_order(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let top = v.top();
    implies(v.bsim(a, b)? == top || v.sim(b, a)? == top, || v.le(a, b))
}
fn unit_equiv_monotone(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    let top = v.top();
    let first = implies(v.sim(a, b)? == top, || v.le(v.sim(c, a)?, v.sim(c, b)?))?;
    let second = implies(v.bsim(a, b)? == top, || v.le(v.bsim(b, c)?, v.bsim(a, c)?))?;
    Some(first && second)
}
pub(crate) fn order_via_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let top = v.top();
    let le = v.le(a, b)?;
    Some(le == (v.imp(a, b)? == top) && le == (v.simp(a, b)? == top))
}
fn imp_units(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let a = t[0];
    let top = v.top();
    Some(
        v.simp(a, top)? == top
            && v.simp(a, a)? == top
            && v.imp(a, a)? == top
            && v.imp(a, top)? == top
            && v.simp(top, a)? == a
            && v.imp(top, a)? == a,
    )
}
fn consequent_below(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    v.le(a, v.meet(v.imp(b, a)?, v.simp(b, a)?)?)
}
fn double_residue(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let l = v.simp(v.imp(a, b)?, b)?;
    let r = v.imp(v.simp(a, b)?, b)?;
    v.le(a, v.meet(l, r)?)
}
fn suffixing(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(
        v.le(v.imp(a, b)?, v.simp(v.imp(b, c)?, v.imp(a, c)?)?)?
            && v.le(v.simp(a, b)?, v.imp(v.simp(b, c)?, v.simp(a, c)?)?)?,
    )
}
fn residuation_swap(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(v.le(a, v.imp(b, c)?)? == v.le(b, v.simp(a, c)?)?)
}
fn exchange(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(v.imp(a, v.simp(b, c)?)? == v.simp(b, v.imp(a, c)?)?)
}
pub(crate) fn meet_compat_imp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.imp(b, a)?, v.imp(v.meet(b, c)?, v.meet(a, c)?)?)
}
pub(crate) fn meet_compat_simp(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.simp(b, a)?, v.simp(v.meet(b, c)?, v.meet(a, c)?)?)
}
pub(crate) fn meet_absorption(v: &dyn ImpView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let ab = v.meet(a, b)?;
    Some(v.imp(a, b)? == v.imp(a, ab)? && v.simp(a, b)? == v.simp(a, ab)?)
}

fn order_via_imp_pea(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    order_via_imp(upcast(v), t)
}
fn meet_compat_pea(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(meet_compat_imp(upcast(v), t)? && meet_compat_simp(upcast(v), t)?)
}
fn meet_absorption_pea(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    meet_absorption(upcast(v), t)
}

fn upcast(v: &dyn PeaView) -> &dyn ImpView {
    v
}

pub(crate) static IMPLICATION_LAWS: [PL; 13] = [
    PL {
        id: "equiv-below-imp",
        arity: 2,
        parts: &[PP { holds: equiv_below_imp }],
    },
    PL {
        id: "equiv-expansion",
        arity: 2,
        parts: &[PP { holds: equiv_expansion }],
    },
    PL {
        id: "unit-equiv-order",
        arity: 2,
        parts: &[PP {
            holds: unit_equiv_order,
        }],
    },
    PL {
        id: "unit-equiv-monotone",
        arity: 3,
        parts: &[PP {
            holds: unit_equiv_monotone,
        }],
    },
    PL {
        id: "order-via-imp",
        arity: 2,
        parts: &[PP {
            holds: order_via_imp_pea,
        }],
    },
    PL {
        id: "imp-units",
        arity: 1,
        parts: &[PP { holds: imp_units }],
    },
    PL {
        id: "consequent-below",
        arity: 2,
        parts: &[PP {
            holds: consequent_below,
        }],
    },
    PL {
        id: "double-residue",
        arity: 2,
        parts: &[PP { holds: double_residue }],
    },
    PL {
        id: "suffixing",
        arity: 3,
        parts: &[PP { holds: suffixing }],
    },
    PL {
        id: "residuation-swap",
        arity: 3,
        parts: &[PP {
            holds: residuation_swap,
        }],
    },
    PL {
        id: "exchange",
        arity: 3,
        parts: &[PP { holds: exchange }],
    },
    PL {
        id: "meet-compatibility",
        arity: 3,
        parts: &[PP { holds: meet_compat_pea }],
    },
    PL {
        id: "meet-absorption",
        arity: 2,
        parts: &[PP {
            holds: meet_absorption_pea,
        }],
    },
];

fn run(a: &FiniteAlgebra, d: &DerivedTables, set: &[PL]) -> AxiomReport {
    let view = DerivedView::new(a, d);
    let mut failures = Vec::new();
    laws::run(&view as &dyn PeaView, a.size(), set, CheckMode::Full, &mut failures);
    AxiomReport::from_failures(failures)
}

/// Monotonicity of `→`, `⇝` in each argument, including the two meet-weakening forms.
/// The order-conditional items are checked as material implications over all triples.
pub fn check_implication_monotonicity(a: &FiniteAlgebra, d: &DerivedTables) -> AxiomReport {
    run(a, d, &MONOTONICITY)
}

/// The thirteen-item catalogue: comparison with `∼`/`⌣∼`, order characterisation, units,
/// suffixing, residuation swap `a ≤ b → c ⟺ b ≤ a ⇝ c`, exchange
/// `a → (b ⇝ c) = b ⇝ (a → c)`, meet compatibility and meet absorption.
pub fn check_implication_laws(a: &FiniteAlgebra, d: &DerivedTables) -> AxiomReport {
    run(a, d, &IMPLICATION_LAWS)
}

pub fn replay_derived_law(a: &FiniteAlgebra, d: &DerivedTables, law: &str, witness: &[usize]) -> bool {
    let view = DerivedView::new(a, d);
    laws::violates(&view as &dyn PeaView, &MONOTONICITY, law, witness)
        || laws::violates(&view as &dyn PeaView, &IMPLICATION_LAWS, law, witness)
}
