//! Deductive systems: upsets containing the top that are closed under
//! `a, b ∼ a ∈ F ⟹ b ∈ F`.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{check_new_axioms_with, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::report::{AxiomReport, CheckMode, Failure};
use crate::table::env_bound;

pub const DEFAULT_MAX_DS_N: usize = 20;
pub const MAX_DS_ENV: &str = "PEQA_MAX_DS_N";

/// A subset of a carrier of at most 64 elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        SubsetMask(1 << x)
    }

    pub fn from_elements(xs: impl IntoIterator<Item = usize>) -> Self {
        SubsetMask(xs.into_iter().fold(0, |m, x| m | (1 << x)))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1 << x;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&x| self.contains(x))
    }

    /// `{a, b, 1}` style rendering with the given labels.
    pub fn render(self, names: &[String]) -> String {
        let parts: Vec<&str> = self.elements().map(|x| names[x].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct DsFlags {
    pub closed: bool,
    pub normal: bool,
    pub commutative: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeductiveSystem {
    pub members: SubsetMask,
    pub flags: DsFlags,
}

impl DeductiveSystem {
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DsFilter {
    #[default]
    All,
    Closed,
    Normal,
    NormalClosed,
    Commutative,
}

impl DsFilter {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => DsFilter::All,
            "closed" => DsFilter::Closed,
            "normal" => DsFilter::Normal,
            "normal_closed" => DsFilter::NormalClosed,
            "commutative" => DsFilter::Commutative,
            _ => return None,
        })
    }

    fn accepts(self, f: DsFlags) -> bool {
        match self {
            DsFilter::All => true,
            DsFilter::Closed => f.closed,
            DsFilter::Normal => f.normal,
            DsFilter::NormalClosed => f.normal && f.closed,
            DsFilter::Commutative => f.commutative,
        }
    }
}

/// Why a subset is not a deductive system (or not a normal one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DsDiagnosis {
    Ok,
    MissingTop,
    /// `x ∈ S`, `x ≤ y`, `y ∉ S`
    NotUpset {
        x: usize,
        y: usize,
    },
    /// `a ∈ S`, `b ∼ a ∈ S`, `b ∉ S`
    NotMpClosed {
        a: usize,
        b: usize,
    },
    /// the pair on which the two membership conditions disagree
    NotNormal {
        x: usize,
        y: usize,
    },
}

impl DsDiagnosis {
    pub fn describe(&self, a: &FiniteAlgebra) -> String {
        let nm = |i: usize| a.names()[i].as_str();
        match *self {
            DsDiagnosis::Ok => "ok".into(),
            DsDiagnosis::MissingTop => format!("not a deductive system: missing {}", nm(a.top())),
            DsDiagnosis::NotUpset { x, y } => {
                format!("not an upset: {} ≤ {} but {} is missing", nm(x), nm(y), nm(y))
            }
            DsDiagnosis::NotMpClosed { a: x, b: y } => format!(
                "not closed under modus ponens: {} and {} ∼ {} = {} are members, {} is not",
                nm(x),
                nm(y),
                nm(x),
                nm(a.sim(y, x)),
                nm(y)
            ),
            DsDiagnosis::NotNormal { x, y } => format!(
                "not normal: {0} ∼ {1}, {1} ∼ {0} against {1} ⌣∼ {0}, {0} ⌣∼ {1} at ({0}, {1})",
                nm(x),
                nm(y)
            ),
        }
    }
}

impl fmt::Display for DsDiagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn check_width(a: &FiniteAlgebra) -> Result<()> {
    if a.size() > 64 {
        return Err(Error::Capacity {
            what: "subset carrier",
            size: a.size(),
            bound: 64,
        });
    }
    Ok(())
}

pub fn upset_violation(a: &FiniteAlgebra, s: SubsetMask) -> Option<(usize, usize)> {
    let n = a.size();
    for x in s.elements().take_while(|&x| x < n) {
        for y in 0..n {
            if a.le(x, y) && !s.contains(y) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_upset(a: &FiniteAlgebra, s: SubsetMask) -> bool {
    upset_violation(a, s).is_none()
}

fn rule_violation(n: usize, s: SubsetMask, op: impl Fn(usize, usize) -> usize) -> Option<(usize, usize)> {
    for x in s.elements().take_while(|&x| x < n) {
        for y in 0..n {
            if !s.contains(y) && s.contains(op(x, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

/// First `(a, b)` with `a ∈ S`, `b ∼ a ∈ S`, `b ∉ S`.
fn sim_rule_violation(a: &FiniteAlgebra, s: SubsetMask) -> Option<(usize, usize)> {
    rule_violation(a.size(), s, |x, y| a.sim(y, x))
}

pub fn diagnose(a: &FiniteAlgebra, s: SubsetMask) -> DsDiagnosis {
    if !s.contains(a.top()) {
        return DsDiagnosis::MissingTop;
    }
    if let Some((x, y)) = upset_violation(a, s) {
        return DsDiagnosis::NotUpset { x, y };
    }
    if let Some((x, y)) = sim_rule_violation(a, s) {
        return DsDiagnosis::NotMpClosed { a: x, b: y };
    }
    DsDiagnosis::Ok
}

/// Upset containing the top, closed under `a, b ∼ a ∈ S ⟹ b ∈ S`.
pub fn is_sim_ds(a: &FiniteAlgebra, s: SubsetMask) -> bool {
    diagnose(a, s) == DsDiagnosis::Ok
}

/// Upset containing the top, closed under `a, a ⌣∼ b ∈ S ⟹ b ∈ S`.
pub fn is_bsim_ds(a: &FiniteAlgebra, s: SubsetMask) -> bool {
    s.contains(a.top()) && is_upset(a, s) && rule_violation(a.size(), s, |x, y| a.bsim(x, y)).is_none()
}

fn mp_closed(n: usize, top: usize, s: SubsetMask, op: impl Fn(usize, usize) -> usize) -> bool {
    s.contains(top) && rule_violation(n, s, op).is_none()
}

/// Contains the top and closed under `a, a → b ∈ S ⟹ b ∈ S`. Closure under the `⇝`
/// rule is equivalent; the two are compared on every call.
pub fn is_imp_ds(a: &FiniteAlgebra, s: SubsetMask) -> Result<bool> {
    let d = a.derived();
    let n = a.size();
    let by_imp = mp_closed(n, a.top(), s, |x, y| d.imp.get(x, y));
    let by_simp = mp_closed(n, a.top(), s, |x, y| d.simp.get(x, y));
    if by_imp != by_simp {
        let w: Vec<usize> = s.elements().collect();
        return Err(Error::violation("modus ponens for → and for ⇝ agree", &w));
    }
    Ok(by_imp)
}

fn require_ds(a: &FiniteAlgebra, s: SubsetMask) -> Result<()> {
    match diagnose(a, s) {
        DsDiagnosis::Ok => Ok(()),
        d => Err(Error::Contract(d.describe(a))),
    }
}

fn closed_unchecked(a: &FiniteAlgebra, s: SubsetMask) -> Result<bool> {
    let n = a.size();
    let members: Vec<usize> = s.elements().take_while(|&x| x < n).collect();
    let full = members.iter().all(|&x| {
        members
            .iter()
            .all(|&y| s.contains(a.sim(x, y)) && s.contains(a.bsim(x, y)))
    });
    let top = a.top();
    let criterion = members
        .iter()
        .all(|&x| s.contains(a.sim(top, x)) && s.contains(a.bsim(x, top)));
    if full != criterion {
        return Err(Error::violation("closedness agrees with its unit criterion", &members));
    }
    Ok(full)
}

/// `x ∼ y, x ⌣∼ y ∈ S` for all `x, y ∈ S`. The criterion `1 ∼ x, x ⌣∼ 1 ∈ S` for all
/// `x ∈ S` is evaluated alongside and must agree.
pub fn is_closed(a: &FiniteAlgebra, s: SubsetMask) -> Result<bool> {
    require_ds(a, s)?;
    closed_unchecked(a, s)
}

pub fn normality_violation(a: &FiniteAlgebra, s: SubsetMask) -> Option<(usize, usize)> {
    let n = a.size();
    for x in 0..n {
        for y in 0..n {
            let l = s.contains(a.sim(x, y)) && s.contains(a.sim(y, x));
            let r = s.contains(a.bsim(y, x)) && s.contains(a.bsim(x, y));
            if l != r {
                return Some((x, y));
            }
        }
    }
    None
}

/// `x ∼ y, y ∼ x ∈ S ⟺ y ⌣∼ x, x ⌣∼ y ∈ S` for all `x, y`.
pub fn is_normal(a: &FiniteAlgebra, s: SubsetMask) -> Result<bool> {
    require_ds(a, s)?;
    Ok(normality_violation(a, s).is_none())
}

fn commutative_unchecked(a: &FiniteAlgebra, s: SubsetMask) -> bool {
    let n = a.size();
    (0..n).all(|x| (0..n).all(|y| s.contains(a.sim(a.sim(x, y), a.sim(y, x)))))
}

/// `(a ∼ b) ∼ (b ∼ a) ∈ S` for all `a, b`.
pub fn is_commutative_ds(a: &FiniteAlgebra, s: SubsetMask) -> Result<bool> {
    require_ds(a, s)?;
    Ok(commutative_unchecked(a, s))
}

/// Closure of a deductive system under `→`, `⇝` and `∧` on its members.
pub fn check_ds_closure_props(a: &FiniteAlgebra, s: SubsetMask) -> Result<AxiomReport> {
    require_ds(a, s)?;
    let d = a.derived();
    let n = a.size();
    let members: Vec<usize> = s.elements().take_while(|&x| x < n).collect();
    let mut failures = Vec::new();
    type Op<'a> = &'a dyn Fn(usize, usize) -> usize;
    let ops: [(&str, Op); 3] = [
        ("imp-closed", &|x, y| d.imp.get(x, y)),
        ("simp-closed", &|x, y| d.simp.get(x, y)),
        ("meet-closed", &|x, y| a.meet(x, y)),
    ];
    for (id, op) in ops {
        for &x in &members {
            for &y in &members {
                if !s.contains(op(x, y)) {
                    failures.push(Failure {
                        axiom: id.to_string(),
                        witness: vec![x, y],
                    });
                }
            }
        }
    }
    Ok(AxiomReport::from_failures(failures))
}

fn classify(a: &FiniteAlgebra, s: SubsetMask) -> Result<DeductiveSystem> {
    Ok(DeductiveSystem {
        members: s,
        flags: DsFlags {
            closed: closed_unchecked(a, s)?,
            normal: normality_violation(a, s).is_none(),
            commutative: commutative_unchecked(a, s),
        },
    })
}

/// Classifies a subset that is already known to be a deductive system.
pub fn deductive_system(a: &FiniteAlgebra, s: SubsetMask) -> Result<DeductiveSystem> {
    require_ds(a, s)?;
    classify(a, s)
}

/// Every deductive system passing the filter, in ascending bit-set order.
pub fn enumerate_ds(a: &FiniteAlgebra, filter: DsFilter) -> Result<Vec<DeductiveSystem>> {
    let n = a.size();
    let bound = env_bound(MAX_DS_ENV, DEFAULT_MAX_DS_N).min(63);
    if n > bound {
        return Err(Error::Capacity {
            what: "deductive system scan",
            size: n,
            bound,
        });
    }
    check_width(a)?;
    let r = check_new_axioms_with(a, CheckMode::FastFail);
    if !r.verdict {
        return Err(Error::Contract(
            "deductive systems need a pseudo equality algebra".into(),
        ));
    }
    enumerate_ds_unchecked(a, filter)
}

pub(crate) fn enumerate_ds_unchecked(a: &FiniteAlgebra, filter: DsFilter) -> Result<Vec<DeductiveSystem>> {
    let n = a.size();
    let top = a.top();
    // every deductive system contains the top, so only the other n − 1 bits vary
    let others: Vec<usize> = (0..n).filter(|&x| x != top).collect();
    let spread = |k: u64| {
        let mut m = SubsetMask::singleton(top);
        for (i, &x) in others.iter().enumerate() {
            if k >> i & 1 == 1 {
                m.insert(x);
            }
        }
        m
    };
    let total = 1u64 << others.len();
    let shard_bits = others.len().min(8);
    let shard = total >> shard_bits;
    let shards: Vec<Result<Vec<DeductiveSystem>>> = (0..1u64 << shard_bits)
        .into_par_iter()
        .map(|hi| {
            let mut out = Vec::new();
            for k in hi * shard..(hi + 1) * shard {
                let s = spread(k);
                if !is_upset(a, s) || sim_rule_violation(a, s).is_some() {
                    continue;
                }
                let ds = classify(a, s)?;
                if filter.accepts(ds.flags) {
                    out.push(ds);
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for s in shards {
        all.extend(s?);
    }
    all.sort_by_key(|d| d.members);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn brute_force_count(a: &FiniteAlgebra) -> usize {
        let n = a.size();
        (0..1u64 << n)
            .filter(|&m| {
                let s = SubsetMask(m);
                let upset = (0..n).all(|x| (0..n).all(|y| !(s.contains(x) && a.meet(x, y) == x) || s.contains(y)));
                let imp = a.derived();
                let mp =
                    (0..n).all(|x| (0..n).all(|y| !(s.contains(x) && s.contains(imp.imp.get(x, y))) || s.contains(y)));
                s.contains(a.top()) && upset && mp
            })
            .count()
    }

    #[test]
    fn two_chain_systems() {
        let a = builtin::two_chain();
        let all = enumerate_ds(&a, DsFilter::All).unwrap();
        let members: Vec<SubsetMask> = all.iter().map(|d| d.members).collect();
        assert_eq!(members, vec![SubsetMask(0b10), SubsetMask(0b11)]);
        assert!(all
            .iter()
            .all(|d| d.flags.closed && d.flags.normal && d.flags.commutative));
        assert!(!is_sim_ds(&a, SubsetMask(0b01)));
        assert_eq!(diagnose(&a, SubsetMask(0b01)), DsDiagnosis::MissingTop);
    }

    #[test]
    fn lukasiewicz_count_matches_brute_force() {
        let a = builtin::three_chain_lukasiewicz_pea();
        let all = enumerate_ds(&a, DsFilter::All).unwrap();
        assert_eq!(all.len(), brute_force_count(&a));
        for m in 0..8 {
            let s = SubsetMask(m);
            assert_eq!(is_sim_ds(&a, s), is_imp_ds(&a, s).unwrap());
            assert_eq!(is_sim_ds(&a, s), is_bsim_ds(&a, s));
        }
    }

    #[test]
    fn hoop_chain_top_is_not_commutative() {
        let a = builtin::two_chain_hoop();
        let top = SubsetMask::singleton(a.top());
        // (0 ∼ 1) ∼ (1 ∼ 0) = 0 ∼ 1 = 0
        assert!(!is_commutative_ds(&a, top).unwrap());
        assert!(is_normal(&a, top).unwrap());
        assert!(is_closed(&a, top).unwrap());
    }

    #[test]
    fn diagnostics() {
        let a = builtin::three_chain_lukasiewicz_pea();
        // {a, 1} on 0 < a < 1: upset, but a and 0 ∼ a = a are members while 0 is not
        let s = SubsetMask::from_elements([1, 2]);
        assert_eq!(diagnose(&a, s), DsDiagnosis::NotMpClosed { a: 1, b: 0 });
        let s = SubsetMask::from_elements([0, 2]);
        assert_eq!(diagnose(&a, s), DsDiagnosis::NotUpset { x: 0, y: 1 });
        assert!(matches!(is_closed(&a, s), Err(Error::Contract(_))));
    }

    #[test]
    fn filters_are_monotone() {
        let a = builtin::three_chain_lukasiewicz_pea();
        let all = enumerate_ds(&a, DsFilter::All).unwrap();
        for f in [
            DsFilter::Closed,
            DsFilter::Normal,
            DsFilter::NormalClosed,
            DsFilter::Commutative,
        ] {
            for d in enumerate_ds(&a, f).unwrap() {
                assert!(all.contains(&d));
            }
        }
    }
}
