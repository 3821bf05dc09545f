//! Finite pseudo equality algebras `(X; ∼, ⌣∼, ∧, 1)` and their axiom systems.

use std::sync::OnceLock;

use crate::derived::DerivedTables;
use crate::error::{Error, Result};
use crate::laws::{self, Law, Part};
use crate::report::{AxiomReport, CheckMode};
use crate::table::{default_names, validate_names, Table};

/// Read access to a meet table with a top element.
pub(crate) trait MeetView {
    fn size(&self) -> usize;
    fn top(&self) -> usize;
    fn meet(&self, a: usize, b: usize) -> Option<usize>;

    fn le(&self, a: usize, b: usize) -> Option<bool> {
        Some(self.meet(a, b)? == a)
    }
}

/// Read access to a meet together with two implications `→` and `⇝`.
pub(crate) trait ImpView: MeetView {
    fn imp(&self, a: usize, b: usize) -> Option<usize>;
    fn simp(&self, a: usize, b: usize) -> Option<usize>;
}

/// Read access to the pseudo equality signature, possibly partially filled. The
/// implications are the derived ones: `a → b = (a ∧ b) ∼ a`, `a ⇝ b = a ⌣∼ (a ∧ b)`.
pub(crate) trait PeaView: ImpView {
    fn sim(&self, a: usize, b: usize) -> Option<usize>;
    fn bsim(&self, a: usize, b: usize) -> Option<usize>;
}

/// A finite algebra of type (2,2,2,0) given by its `meet`, `sim` (∼) and `bsim` (⌣∼)
/// tables and the index of its top element. Names are display labels only; equality
/// compares tables and top.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    names: Vec<String>,
    top: usize,
    meet: Table,
    sim: Table,
    bsim: Table,
    derived: OnceLock<DerivedTables>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.top == other.top && self.meet == other.meet && self.sim == other.sim && self.bsim == other.bsim
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    pub fn new(names: Vec<String>, top: usize, meet: Table, sim: Table, bsim: Table) -> Result<Self> {
        let n = meet.size();
        if sim.size() != n || bsim.size() != n {
            return Err(Error::Input("tables of different sizes".into()));
        }
        if top >= n {
            return Err(Error::Input(format!("top index {top} out of range")));
        }
        validate_names(&names, n)?;
        Ok(FiniteAlgebra {
            names,
            top,
            meet,
            sim,
            bsim,
            derived: OnceLock::new(),
        })
    }

    /// Same as [`FiniteAlgebra::new`] with generated names.
    pub fn from_tables(top: usize, meet: Table, sim: Table, bsim: Table) -> Result<Self> {
        let names = default_names(meet.size(), top);
        Self::new(names, top, meet, sim, bsim)
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
    pub fn sim_table(&self) -> &Table {
        &self.sim
    }
    pub fn bsim_table(&self) -> &Table {
        &self.bsim
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet.get(a, b)
    }
    #[inline]
    pub fn sim(&self, a: usize, b: usize) -> usize {
        self.sim.get(a, b)
    }
    #[inline]
    pub fn bsim(&self, a: usize, b: usize) -> usize {
        self.bsim.get(a, b)
    }
    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// The derived implications, computed once.
    pub fn derived(&self) -> &DerivedTables {
        self.derived.get_or_init(|| DerivedTables::derive(self))
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        validate_names(&names, self.size())?;
        self.names = names;
        Ok(self)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Relabels the carrier: element `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> FiniteAlgebra {
        let mut names = vec![String::new(); self.size()];
        for (i, name) in self.names.iter().enumerate() {
            names[perm[i]] = name.clone();
        }
        FiniteAlgebra {
            names,
            top: perm[self.top],
            meet: self.meet.permute(perm),
            sim: self.sim.permute(perm),
            bsim: self.bsim.permute(perm),
            derived: OnceLock::new(),
        }
    }
}

impl MeetView for FiniteAlgebra {
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

impl ImpView for FiniteAlgebra {
    fn imp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.sim(self.meet(a, b), a))
    }
    fn simp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.bsim(a, self.meet(a, b)))
    }
}

impl PeaView for FiniteAlgebra {
    fn sim(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.sim.get(a, b))
    }
    fn bsim(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.bsim.get(a, b))
    }
}

/// `x ≤ y` iff `x ∧ y = x`.
pub fn leq(a: &FiniteAlgebra, x: usize, y: usize) -> Result<bool> {
    let n = a.size();
    if x >= n || y >= n {
        return Err(Error::Input(format!("element index out of range for size {n}")));
    }
    Ok(a.le(x, y))
}

// ---------------------------------------------------------------------------
// semilattice

type ML = Law<dyn MeetView>;
type MP = Part<dyn MeetView>;

fn idempotent(v: &dyn MeetView, t: &[usize]) -> Option<bool> {
    Some(v.meet(t[0], t[0])? == t[0])
}
fn commutative(v: &dyn MeetView, t: &[usize]) -> Option<bool> {
    Some(v.meet(t[0], t[1])? == v.meet(t[1], t[0])?)
}
fn associative(v: &dyn MeetView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    let l = v.meet(v.meet(a, b)?, c)?;
    let r = v.meet(a, v.meet(b, c)?)?;
    Some(l == r)
}
fn top_greatest(v: &dyn MeetView, t: &[usize]) -> Option<bool> {
    Some(v.meet(t[0], v.top())? == t[0])
}

macro_rules! semilattice_laws {
    ($name:ident, $idem:expr, $comm:expr, $assoc:expr, $top:expr) => {
        pub(crate) static $name: [ML; 4] = [
            ML {
                id: $idem,
                arity: 1,
                parts: &[MP { holds: idempotent }],
            },
            ML {
                id: $comm,
                arity: 2,
                parts: &[MP { holds: commutative }],
            },
            ML {
                id: $assoc,
                arity: 3,
                parts: &[MP { holds: associative }],
            },
            ML {
                id: $top,
                arity: 1,
                parts: &[MP { holds: top_greatest }],
            },
        ];
    };
}

semilattice_laws!(SEMILATTICE, "idempotence", "commutativity", "associativity", "top");
semilattice_laws!(F1, "F1", "F1", "F1", "F1");
semilattice_laws!(F1_JK, "F1'", "F1'", "F1'", "F1'");

pub(crate) fn semilattice_report<V: MeetView + 'static>(v: &V, laws: &[ML], mode: CheckMode) -> AxiomReport {
    let mut failures = Vec::new();
    laws::run(v as &dyn MeetView, v.size(), laws, mode, &mut failures);
    AxiomReport::from_failures(failures)
}

/// Idempotence, commutativity, associativity of the meet and `x ∧ 1 = x`.
pub fn check_semilattice(a: &FiniteAlgebra) -> AxiomReport {
    semilattice_report(a, &SEMILATTICE, CheckMode::Full)
}

// ---------------------------------------------------------------------------
// F2–F7

type PL = Law<dyn PeaView>;
type PP = Part<dyn PeaView>;

fn f2_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.sim(t[0], t[0])? == v.top())
}
fn f2_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.bsim(t[0], t[0])? == v.top())
}
fn f3_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.sim(t[0], v.top())? == t[0])
}
fn f3_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.bsim(v.top(), t[0])? == t[0])
}

/// The chain `x ≤ y ≤ z` obtained from an arbitrary triple as `(a∧b∧c, b∧c, c)`.
fn chain(v: &dyn PeaView, t: &[usize]) -> Option<(usize, usize, usize)> {
    let y = v.meet(t[1], t[2])?;
    let x = v.meet(t[0], y)?;
    Some((x, y, t[2]))
}

fn f4_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = chain(v, t)?;
    let xz = v.sim(x, z)?;
    Some(v.le(xz, v.sim(y, z)?)? && v.le(xz, v.sim(x, y)?)?)
}
fn f4_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (x, y, z) = chain(v, t)?;
    let zx = v.bsim(z, x)?;
    Some(v.le(zx, v.bsim(z, y)?)? && v.le(zx, v.bsim(y, x)?)?)
}
fn f5_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.sim(a, b)?, v.sim(v.meet(a, c)?, v.meet(b, c)?)?)
}
fn f5_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.bsim(a, b)?, v.bsim(v.meet(a, c)?, v.meet(b, c)?)?)
}
fn f6_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.sim(a, b)?, v.bsim(v.sim(c, a)?, v.sim(c, b)?)?)
}
fn f6_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.bsim(a, b)?, v.sim(v.bsim(a, c)?, v.bsim(b, c)?)?)
}
fn f7_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.sim(a, b)?, v.sim(v.sim(a, c)?, v.sim(b, c)?)?)
}
fn f7_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.bsim(a, b)?, v.bsim(v.bsim(c, a)?, v.bsim(c, b)?)?)
}

pub(crate) static NEW_AXIOMS: [PL; 6] = [
    PL {
        id: "F2",
        arity: 1,
        parts: &[PP { holds: f2_sim }, PP { holds: f2_bsim }],
    },
    PL {
        id: "F3",
        arity: 1,
        parts: &[PP { holds: f3_sim }, PP { holds: f3_bsim }],
    },
    PL {
        id: "F4",
        arity: 3,
        parts: &[PP { holds: f4_sim }, PP { holds: f4_bsim }],
    },
    PL {
        id: "F5",
        arity: 3,
        parts: &[PP { holds: f5_sim }, PP { holds: f5_bsim }],
    },
    PL {
        id: "F6",
        arity: 3,
        parts: &[PP { holds: f6_sim }, PP { holds: f6_bsim }],
    },
    PL {
        id: "F7",
        arity: 3,
        parts: &[PP { holds: f7_sim }, PP { holds: f7_bsim }],
    },
];

// original axioms, under which ∼ and ⌣∼ are both commutative

fn jk2_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.sim(t[0], t[1])? == v.sim(t[1], t[0])?)
}
fn jk2_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.bsim(t[0], t[1])? == v.bsim(t[1], t[0])?)
}
fn jk4_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.sim(t[0], v.top())? == t[0])
}
fn jk4_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.bsim(t[0], v.top())? == t[0])
}
fn jk7_sim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.sim(a, b)?, v.bsim(v.sim(a, c)?, v.sim(b, c)?)?)
}
fn jk7_bsim(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    v.le(v.bsim(a, b)?, v.sim(v.bsim(a, c)?, v.bsim(b, c)?)?)
}

pub(crate) static JK_AXIOMS: [PL; 6] = [
    PL {
        id: "F2'",
        arity: 2,
        parts: &[PP { holds: jk2_sim }, PP { holds: jk2_bsim }],
    },
    PL {
        id: "F3'",
        arity: 1,
        parts: &[PP { holds: f2_sim }, PP { holds: f2_bsim }],
    },
    PL {
        id: "F4'",
        arity: 1,
        parts: &[PP { holds: jk4_sim }, PP { holds: jk4_bsim }],
    },
    PL {
        id: "F5'",
        arity: 3,
        parts: &[PP { holds: f4_sim }, PP { holds: f4_bsim }],
    },
    PL {
        id: "F6'",
        arity: 3,
        parts: &[PP { holds: f5_sim }, PP { holds: f5_bsim }],
    },
    PL {
        id: "F7'",
        arity: 3,
        parts: &[PP { holds: jk7_sim }, PP { holds: jk7_bsim }],
    },
];

fn full_report(a: &FiniteAlgebra, semilattice: &[ML], axioms: &[PL], mode: CheckMode) -> AxiomReport {
    let mut failures = Vec::new();
    let stopped = laws::run(a as &dyn MeetView, a.size(), semilattice, mode, &mut failures);
    if !stopped {
        laws::run(a as &dyn PeaView, a.size(), axioms, mode, &mut failures);
    }
    AxiomReport::from_failures(failures)
}

/// Checks F1–F7. F4 is evaluated in its equational form: for every triple `(a, b, c)` the
/// chain `a∧b∧c ≤ b∧c ≤ c` must satisfy the four inequalities.
pub fn check_new_axioms(a: &FiniteAlgebra) -> AxiomReport {
    check_new_axioms_with(a, CheckMode::Full)
}

pub fn check_new_axioms_with(a: &FiniteAlgebra, mode: CheckMode) -> AxiomReport {
    full_report(a, &F1, &NEW_AXIOMS, mode)
}

/// Checks the original axioms F1'–F7' (both operations commutative, `a ∼ 1 = a = a ⌣∼ 1`).
pub fn check_jk_axioms(a: &FiniteAlgebra) -> AxiomReport {
    check_jk_axioms_with(a, CheckMode::Full)
}

pub fn check_jk_axioms_with(a: &FiniteAlgebra, mode: CheckMode) -> AxiomReport {
    full_report(a, &F1_JK, &JK_AXIOMS, mode)
}

/// `true` iff the witness, replayed through the named axiom of F1–F7, violates it.
pub fn replay_new_axiom(a: &FiniteAlgebra, axiom: &str, witness: &[usize]) -> bool {
    laws::violates(a as &dyn MeetView, &F1, axiom, witness)
        || laws::violates(a as &dyn PeaView, &NEW_AXIOMS, axiom, witness)
}

/// Under the original axioms the two operations must coincide. Returns the first cell
/// where they differ; `Some` would refute that claim.
pub fn collapse_witness(a: &FiniteAlgebra) -> Result<Option<(usize, usize)>> {
    let report = check_jk_axioms_with(a, CheckMode::FastFail);
    if !report.verdict {
        let f = &report.failures[0];
        return Err(Error::Contract(format!(
            "not a model of the original axioms: {} fails at {:?}",
            f.axiom, f.witness
        )));
    }
    Ok(a.sim.first_difference(&a.bsim))
}

/// `true` iff `∼ = ⌣∼` and `∼` is commutative, i.e. the algebra is an equality algebra.
///
/// Two implications are asserted on every call: commutative `∼` and `⌣∼` must coincide,
/// and `1 ∼ a = a = a ⌣∼ 1` for all `a` forces them to coincide.
pub fn is_equality_algebra(a: &FiniteAlgebra) -> Result<bool> {
    let report = check_new_axioms_with(a, CheckMode::FastFail);
    if !report.verdict {
        return Err(Error::Contract(format!(
            "not a pseudo equality algebra: {} fails at {:?}",
            report.failures[0].axiom, report.failures[0].witness
        )));
    }
    equality_algebra_unchecked(a)
}

pub(crate) fn equality_algebra_unchecked(a: &FiniteAlgebra) -> Result<bool> {
    let diff = a.sim.first_difference(&a.bsim);
    if let Some((x, y)) = diff {
        if a.sim.is_commutative() && a.bsim.is_commutative() {
            return Err(Error::violation("commutative sim and bsim coincide", &[x, y]));
        }
        let n = a.size();
        let units = (0..n).all(|x| a.sim(a.top, x) == x && a.bsim(x, a.top) == x);
        if units {
            return Err(Error::violation("1 ∼ a = a = a ⌣∼ 1 forces sim = bsim", &[x, y]));
        }
        return Ok(false);
    }
    Ok(a.sim.is_commutative())
}
