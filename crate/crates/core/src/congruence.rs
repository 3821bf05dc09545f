//! Congruences, their correspondence with normal closed deductive systems, quotients,
//! and the subtractive and Mal'cev term identities.

use rayon::prelude::*;

use crate::algebra::{check_new_axioms_with, equality_algebra_unchecked, FiniteAlgebra, PeaView};
use crate::deduction::{
    deductive_system, diagnose, enumerate_ds_unchecked, is_commutative_ds, is_normal, normality_violation,
    DeductiveSystem, DsDiagnosis, DsFilter, SubsetMask,
};
use crate::error::{Error, Result};
use crate::laws::{self, Law, Part};
use crate::report::{AxiomReport, CheckMode};
use crate::table::{env_bound, Table};

pub const DEFAULT_MAX_CON_N: usize = 10;
pub const MAX_CON_ENV: &str = "PEQA_MAX_CON_N";

/// A partition stored as a restricted growth string: `class_of[i]` is the ordinal of
/// the first occurrence of `i`'s block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EquivRelation {
    class_of: Vec<usize>,
}

impl EquivRelation {
    /// Relabels arbitrary block ids into restricted growth form.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut seen: Vec<usize> = Vec::new();
        let class_of = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i,
                None => {
                    seen.push(*l);
                    seen.len() - 1
                }
            })
            .collect();
        EquivRelation { class_of }
    }

    /// Builds the partition of a relation, or `None` if it is not an equivalence.
    pub fn from_relation(n: usize, rel: impl Fn(usize, usize) -> bool) -> Option<Self> {
        let mut labels = vec![usize::MAX; n];
        for x in 0..n {
            if labels[x] == usize::MAX {
                labels[x] = x;
                for y in x + 1..n {
                    if rel(x, y) {
                        labels[y] = x;
                    }
                }
            }
        }
        let r = Self::from_labels(&labels);
        let ok = (0..n).all(|x| (0..n).all(|y| rel(x, y) == r.related(x, y)));
        ok.then_some(r)
    }

    pub fn identity(n: usize) -> Self {
        EquivRelation {
            class_of: (0..n).collect(),
        }
    }

    pub fn all(n: usize) -> Self {
        EquivRelation { class_of: vec![0; n] }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn class(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class_of.iter().enumerate() {
            blocks[c].push(x);
        }
        blocks
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("{{{}}}", parts.join(" | "))
    }
}

/// All restricted growth strings of length `n`, in lexicographic order.
pub fn partitions(n: usize) -> Vec<EquivRelation> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<EquivRelation>) {
        if prefix.len() == n {
            out.push(EquivRelation {
                class_of: prefix.clone(),
            });
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for c in 0..=limit {
            prefix.push(c);
            go(prefix, max.max(c), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    go(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

/// Operation name and the quadruple `(a, b, x, _)` with `a θ b` where substitution fails.
pub fn congruence_violation(a: &FiniteAlgebra, r: &EquivRelation) -> Option<(&'static str, [usize; 3])> {
    let n = a.size();
    let ops: [(&'static str, &Table); 3] = [
        ("meet", a.meet_table()),
        ("sim", a.sim_table()),
        ("bsim", a.bsim_table()),
    ];
    for x in 0..n {
        for y in x + 1..n {
            if !r.related(x, y) {
                continue;
            }
            for z in 0..n {
                for &(name, t) in &ops {
                    if !r.related(t.get(x, z), t.get(y, z)) || !r.related(t.get(z, x), t.get(z, y)) {
                        return Some((name, [x, y, z]));
                    }
                }
            }
        }
    }
    None
}

/// Compatibility with `∼`, `⌣∼` and `∧`.
pub fn is_congruence(a: &FiniteAlgebra, r: &EquivRelation) -> bool {
    r.size() == a.size() && congruence_violation(a, r).is_none()
}

fn bound_check(a: &FiniteAlgebra) -> Result<()> {
    let bound = env_bound(MAX_CON_ENV, DEFAULT_MAX_CON_N);
    if a.size() > bound {
        return Err(Error::Capacity {
            what: "congruence scan",
            size: a.size(),
            bound,
        });
    }
    Ok(())
}

/// Every congruence, in restricted-growth order.
pub fn enumerate_congruences(a: &FiniteAlgebra) -> Result<Vec<EquivRelation>> {
    bound_check(a)?;
    Ok(enumerate_congruences_unchecked(a))
}

pub(crate) fn enumerate_congruences_unchecked(a: &FiniteAlgebra) -> Vec<EquivRelation> {
    partitions(a.size())
        .into_par_iter()
        .filter(|r| is_congruence(a, r))
        .collect()
}

/// The class of the top. It is always a closed normal deductive system; this is checked.
pub fn top_class(a: &FiniteAlgebra, r: &EquivRelation) -> Result<DeductiveSystem> {
    if !is_congruence(a, r) {
        return Err(Error::Contract("not a congruence".into()));
    }
    top_class_unchecked(a, r)
}

fn top_class_unchecked(a: &FiniteAlgebra, r: &EquivRelation) -> Result<DeductiveSystem> {
    let s = SubsetMask::from_elements((0..a.size()).filter(|&x| r.related(x, a.top())));
    let members: Vec<usize> = s.elements().collect();
    let ds = deductive_system(a, s).map_err(|_| Error::violation("the top class is a deductive system", &members))?;
    if !ds.flags.closed || !ds.flags.normal {
        return Err(Error::violation("the top class is closed and normal", &members));
    }
    Ok(ds)
}

fn four_condition(a: &FiniteAlgebra, s: SubsetMask, x: usize, y: usize) -> bool {
    s.contains(a.sim(x, y)) && s.contains(a.sim(y, x)) && s.contains(a.bsim(x, y)) && s.contains(a.bsim(y, x))
}

/// `x θ y ⟺ x ∼ y, y ∼ x, x ⌣∼ y, y ⌣∼ x ∈ S`. For every deductive system this is an
/// equivalence; for a normal one it is a congruence equal to either two-condition form.
/// Both facts are checked.
pub fn relation_of_ds(a: &FiniteAlgebra, s: SubsetMask) -> Result<EquivRelation> {
    match diagnose(a, s) {
        DsDiagnosis::Ok => {}
        d => return Err(Error::Contract(d.describe(a))),
    }
    relation_of_ds_unchecked(a, s)
}

fn relation_of_ds_unchecked(a: &FiniteAlgebra, s: SubsetMask) -> Result<EquivRelation> {
    let n = a.size();
    let members: Vec<usize> = s.elements().collect();
    let r = EquivRelation::from_relation(n, |x, y| four_condition(a, s, x, y))
        .ok_or_else(|| Error::violation("the four-condition relation is an equivalence", &members))?;
    if normality_violation(a, s).is_none() {
        if !is_congruence(a, &r) {
            return Err(Error::violation("a normal system induces a congruence", &members));
        }
        for x in 0..n {
            for y in 0..n {
                let by_sim = s.contains(a.sim(x, y)) && s.contains(a.sim(y, x));
                let by_bsim = s.contains(a.bsim(x, y)) && s.contains(a.bsim(y, x));
                if by_sim != r.related(x, y) || by_bsim != r.related(x, y) {
                    return Err(Error::violation("the simplified relations coincide", &[x, y]));
                }
            }
        }
    }
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub congruences: Vec<EquivRelation>,
    pub systems: Vec<DeductiveSystem>,
    /// congruences θ with `θ_{F_θ} ≠ θ`
    pub bad_congruences: Vec<EquivRelation>,
    /// systems F with `F_{θ_F} ≠ F`
    pub bad_systems: Vec<SubsetMask>,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.congruences.len() == self.systems.len() && self.bad_congruences.is_empty() && self.bad_systems.is_empty()
    }
}

pub fn bijection_report(a: &FiniteAlgebra) -> Result<BijectionReport> {
    bound_check(a)?;
    let congruences = enumerate_congruences_unchecked(a);
    let systems = enumerate_ds_unchecked(a, DsFilter::NormalClosed)?;
    let mut bad_congruences = Vec::new();
    for r in &congruences {
        let f = top_class_unchecked(a, r)?;
        if relation_of_ds_unchecked(a, f.members)? != *r {
            bad_congruences.push(r.clone());
        }
    }
    let mut bad_systems = Vec::new();
    for d in &systems {
        let r = relation_of_ds_unchecked(a, d.members)?;
        if top_class_unchecked(a, &r)?.members != d.members {
            bad_systems.push(d.members);
        }
    }
    Ok(BijectionReport {
        congruences,
        systems,
        bad_congruences,
        bad_systems,
    })
}

/// Congruences and normal closed deductive systems correspond through the top class
/// and the four-condition relation.
pub fn bijection_check(a: &FiniteAlgebra) -> Result<bool> {
    Ok(bijection_report(a)?.holds())
}

/// The quotient by the congruence of a normal deductive system. Classes are ordered by
/// their least member and named `[x]` after it.
pub fn quotient(a: &FiniteAlgebra, s: SubsetMask) -> Result<FiniteAlgebra> {
    if !is_normal(a, s)? {
        let (x, y) = normality_violation(a, s).unwrap();
        return Err(Error::Contract(DsDiagnosis::NotNormal { x, y }.describe(a)));
    }
    quotient_unchecked(a, s)
}

pub(crate) fn quotient_unchecked(a: &FiniteAlgebra, s: SubsetMask) -> Result<FiniteAlgebra> {
    let r = relation_of_ds_unchecked(a, s)?;
    let blocks = r.blocks();
    let k = blocks.len();
    let reps: Vec<usize> = blocks.iter().map(|b| b[0]).collect();
    let n = a.size();
    let mut tables = Vec::new();
    for t in [a.meet_table(), a.sim_table(), a.bsim_table()] {
        let q = Table::from_fn(k, |i, j| r.class(t.get(reps[i], reps[j])));
        // every pair of representatives must land in the same class
        for x in 0..n {
            for y in 0..n {
                if r.class(t.get(x, y)) != q.get(r.class(x), r.class(y)) {
                    return Err(Error::violation("quotient operations are well defined", &[x, y]));
                }
            }
        }
        tables.push(q);
    }
    let names = reps.iter().map(|&x| format!("[{}]", a.names()[x])).collect();
    let bsim = tables.pop().unwrap();
    let sim = tables.pop().unwrap();
    let meet = tables.pop().unwrap();
    let q = FiniteAlgebra::new(names, r.class(a.top()), meet, sim, bsim)?;
    let report = check_new_axioms_with(&q, CheckMode::FastFail);
    if let Some(f) = report.failures.first() {
        return Err(Error::violation(
            format!("the quotient satisfies {}", f.axiom),
            &f.witness,
        ));
    }
    Ok(q)
}

/// The quotient by a normal commutative deductive system is an equality algebra.
pub fn quotient_equality_check(a: &FiniteAlgebra, s: SubsetMask) -> Result<bool> {
    if !is_normal(a, s)? || !is_commutative_ds(a, s)? {
        return Err(Error::Contract("the system must be normal and commutative".into()));
    }
    equality_algebra_unchecked(&quotient_unchecked(a, s)?)
}

// ---------------------------------------------------------------------------
// term identities

type PL = Law<dyn PeaView>;
type PP = Part<dyn PeaView>;

fn m_term(v: &dyn PeaView, x: usize, y: usize, z: usize) -> Option<usize> {
    v.meet(v.bsim(v.sim(x, y)?, z)?, v.bsim(v.sim(y, z)?, x)?)
}
fn m_swapped(v: &dyn PeaView, x: usize, y: usize, z: usize) -> Option<usize> {
    v.meet(v.bsim(v.sim(y, x)?, z)?, v.bsim(v.sim(y, z)?, x)?)
}
fn p_term(v: &dyn PeaView, x: usize, y: usize, z: usize) -> Option<usize> {
    let w = |p: usize, q: usize| v.simp(v.imp(p, q)?, q);
    v.meet(v.meet(w(x, y)?, w(y, z)?)?, w(z, x)?)
}

fn s_diagonal(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.sim(t[0], t[0])? == v.top())
}
fn s_unit(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(v.sim(t[0], v.top())? == t[0])
}
fn m_first(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(m_term(v, t[0], t[1], t[1])? == t[0])
}
fn m_second(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(m_term(v, t[1], t[1], t[0])? == t[0])
}
fn ms_first(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(m_swapped(v, t[0], t[1], t[1])? == t[0])
}
fn ms_second(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(m_swapped(v, t[1], t[1], t[0])? == t[0])
}
fn p_first(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(p_term(v, t[0], t[0], t[1])? == t[0])
}
fn p_second(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(p_term(v, t[0], t[1], t[0])? == t[0])
}
fn p_third(v: &dyn PeaView, t: &[usize]) -> Option<bool> {
    Some(p_term(v, t[1], t[0], t[0])? == t[0])
}

macro_rules! term_law {
    ($id:expr, $arity:expr, $f:ident) => {
        PL {
            id: $id,
            arity: $arity,
            parts: &[PP { holds: $f }],
        }
    };
}

pub(crate) static VARIETY_TERMS: [PL; 7] = [
    term_law!("S(x,x)=1", 1, s_diagonal),
    term_law!("S(x,1)=x", 1, s_unit),
    term_law!("M(x,y,y)=x", 2, m_first),
    term_law!("M(y,y,x)=x", 2, m_second),
    term_law!("P(x,x,y)=x", 2, p_first),
    term_law!("P(x,y,x)=x", 2, p_second),
    term_law!("P(y,x,x)=x", 2, p_third),
];

pub(crate) static SWAPPED_MALCEV: [PL; 2] = [
    term_law!("M'(x,y,y)=x", 2, ms_first),
    term_law!("M'(y,y,x)=x", 2, ms_second),
];

/// Subtractive term `S(x, y) = x ∼ y` with constant `1`, the Mal'cev term
/// `M(x, y, z) = ((x ∼ y) ⌣∼ z) ∧ ((y ∼ z) ⌣∼ x)` and the majority term
/// `P(x, y, z) = ((x → y) ⇝ y) ∧ ((y → z) ⇝ z) ∧ ((z → x) ⇝ x)`.
pub fn check_variety_terms(a: &FiniteAlgebra) -> AxiomReport {
    let mut failures = Vec::new();
    laws::run(
        a as &dyn PeaView,
        a.size(),
        &VARIETY_TERMS,
        CheckMode::Full,
        &mut failures,
    );
    AxiomReport::from_failures(failures)
}

/// `M'(x, y, z) = ((y ∼ x) ⌣∼ z) ∧ ((y ∼ z) ⌣∼ x)`, which differs from `M` only in the
/// order of the first equivalence.
pub fn check_swapped_malcev(a: &FiniteAlgebra) -> AxiomReport {
    let mut failures = Vec::new();
    laws::run(
        a as &dyn PeaView,
        a.size(),
        &SWAPPED_MALCEV,
        CheckMode::Full,
        &mut failures,
    );
    AxiomReport::from_failures(failures)
}

pub fn replay_term_law(a: &FiniteAlgebra, law: &str, witness: &[usize]) -> bool {
    laws::violates(a as &dyn PeaView, &VARIETY_TERMS, law, witness)
        || laws::violates(a as &dyn PeaView, &SWAPPED_MALCEV, law, witness)
}
