//! Finite pseudo hoops `(X; ⊙, →, ⇝, 1)` and the pseudo equality algebras they induce.
//!
//! Residuation convention: `a ⊙ b ≤ c ⟺ a ≤ b → c ⟺ b ≤ a ⇝ c`. The meet is the
//! derived `a ∧ b = a ⊙ (a ⇝ b)`.

use crate::algebra::{check_new_axioms_with, FiniteAlgebra, MeetView};
use crate::error::{Error, Result};
use crate::laws::{self, Law, Part};
use crate::report::{AxiomReport, CheckMode};
use crate::table::{default_names, validate_names, Table};

#[derive(Clone, Debug)]
pub struct PseudoHoop {
    names: Vec<String>,
    unit: usize,
    prod: Table,
    imp: Table,
    simp: Table,
    meet: Table,
}

impl PartialEq for PseudoHoop {
    fn eq(&self, other: &Self) -> bool {
        self.unit == other.unit && self.prod == other.prod && self.imp == other.imp && self.simp == other.simp
    }
}

impl Eq for PseudoHoop {}

impl PseudoHoop {
    pub fn new(names: Vec<String>, unit: usize, prod: Table, imp: Table, simp: Table) -> Result<Self> {
        let n = prod.size();
        if imp.size() != n || simp.size() != n {
            return Err(Error::Input("tables of different sizes".into()));
        }
        if unit >= n {
            return Err(Error::Input(format!("unit index {unit} out of range")));
        }
        validate_names(&names, n)?;
        let meet = Table::from_fn(n, |a, b| prod.get(a, simp.get(a, b)));
        Ok(PseudoHoop {
            names,
            unit,
            prod,
            imp,
            simp,
            meet,
        })
    }

    pub fn from_tables(unit: usize, prod: Table, imp: Table, simp: Table) -> Result<Self> {
        Self::new(default_names(prod.size(), unit), unit, prod, imp, simp)
    }

    pub fn size(&self) -> usize {
        self.prod.size()
    }
    pub fn unit(&self) -> usize {
        self.unit
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn prod_table(&self) -> &Table {
        &self.prod
    }
    pub fn imp_table(&self) -> &Table {
        &self.imp
    }
    pub fn simp_table(&self) -> &Table {
        &self.simp
    }
    /// `a ⊙ (a ⇝ b)`
    pub fn meet_table(&self) -> &Table {
        &self.meet
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        validate_names(&names, self.size())?;
        self.names = names;
        Ok(self)
    }

    pub fn permute(&self, perm: &[usize]) -> PseudoHoop {
        let mut names = vec![String::new(); self.size()];
        for (i, name) in self.names.iter().enumerate() {
            names[perm[i]] = name.clone();
        }
        PseudoHoop {
            names,
            unit: perm[self.unit],
            prod: self.prod.permute(perm),
            imp: self.imp.permute(perm),
            simp: self.simp.permute(perm),
            meet: self.meet.permute(perm),
        }
    }
}

/// A hoop whose meet may come from elsewhere (the search fixes it in advance).
pub(crate) trait HoopView: MeetView {
    fn prod(&self, a: usize, b: usize) -> Option<usize>;
    fn imp(&self, a: usize, b: usize) -> Option<usize>;
    fn simp(&self, a: usize, b: usize) -> Option<usize>;
}

impl MeetView for PseudoHoop {
    fn size(&self) -> usize {
        self.prod.size()
    }
    fn top(&self) -> usize {
        self.unit
    }
    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.meet.get(a, b))
    }
}

impl HoopView for PseudoHoop {
    fn prod(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.prod.get(a, b))
    }
    fn imp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.imp.get(a, b))
    }
    fn simp(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.simp.get(a, b))
    }
}

type HL = Law<dyn HoopView>;
type HP = Part<dyn HoopView>;

fn unit_right(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    Some(v.prod(t[0], v.top())? == t[0])
}
fn unit_left(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    Some(v.prod(v.top(), t[0])? == t[0])
}
fn self_imp(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    Some(v.imp(t[0], t[0])? == v.top())
}
fn self_simp(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    Some(v.simp(t[0], t[0])? == v.top())
}
fn imp_product(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(v.imp(v.prod(a, b)?, c)? == v.imp(a, v.imp(b, c)?)?)
}
fn simp_product(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b, c) = (t[0], t[1], t[2]);
    Some(v.simp(v.prod(a, b)?, c)? == v.simp(b, v.simp(a, c)?)?)
}
fn divisible_imp(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.prod(v.imp(a, b)?, a)? == v.prod(v.imp(b, a)?, b)?)
}
fn divisible_simp(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.prod(a, v.simp(a, b)?)? == v.prod(b, v.simp(b, a)?)?)
}
fn divisible_mixed(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.prod(v.imp(a, b)?, a)? == v.prod(a, v.simp(a, b)?)?)
}

pub(crate) static HOOP_AXIOMS: [HL; 5] = [
    HL {
        id: "unit",
        arity: 1,
        parts: &[HP { holds: unit_right }, HP { holds: unit_left }],
    },
    HL {
        id: "self-residuum",
        arity: 1,
        parts: &[HP { holds: self_imp }, HP { holds: self_simp }],
    },
    HL {
        id: "imp-product",
        arity: 3,
        parts: &[HP { holds: imp_product }],
    },
    HL {
        id: "simp-product",
        arity: 3,
        parts: &[HP { holds: simp_product }],
    },
    HL {
        id: "divisibility",
        arity: 2,
        parts: &[
            HP { holds: divisible_imp },
            HP { holds: divisible_simp },
            HP { holds: divisible_mixed },
        ],
    },
];

fn derived_meet(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    Some(v.prod(a, v.simp(a, b)?)? == v.meet(a, b)?)
}
fn order_imp(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    Some(v.le(t[0], t[1])? == (v.imp(t[0], t[1])? == v.top()))
}
fn order_simp(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    Some(v.le(t[0], t[1])? == (v.simp(t[0], t[1])? == v.top()))
}
fn prod_below(v: &dyn HoopView, t: &[usize]) -> Option<bool> {
    let (a, b) = (t[0], t[1]);
    let p = v.prod(a, b)?;
    Some(v.le(p, a)? && v.le(p, b)?)
}

/// Consequences of the axioms used only to prune the search once the meet is fixed.
pub(crate) static HOOP_SEARCH_LAWS: [HL; 3] = [
    HL {
        id: "derived-meet",
        arity: 2,
        parts: &[HP { holds: derived_meet }],
    },
    HL {
        id: "order",
        arity: 2,
        parts: &[HP { holds: order_imp }, HP { holds: order_simp }],
    },
    HL {
        id: "product-below",
        arity: 2,
        parts: &[HP { holds: prod_below }],
    },
];

/// Checks unit, `a → a = 1 = a ⇝ a`, `(a ⊙ b) → c = a → (b → c)`,
/// `(a ⊙ b) ⇝ c = b ⇝ (a ⇝ c)` and divisibility
/// `(a → b) ⊙ a = (b → a) ⊙ b = a ⊙ (a ⇝ b) = b ⊙ (b ⇝ a)`.
pub fn check_pseudo_hoop(h: &PseudoHoop) -> AxiomReport {
    check_pseudo_hoop_with(h, CheckMode::Full)
}

pub fn check_pseudo_hoop_with(h: &PseudoHoop, mode: CheckMode) -> AxiomReport {
    let mut failures = Vec::new();
    laws::run(h as &dyn HoopView, h.size(), &HOOP_AXIOMS, mode, &mut failures);
    AxiomReport::from_failures(failures)
}

pub fn replay_hoop_axiom(h: &PseudoHoop, axiom: &str, witness: &[usize]) -> bool {
    laws::violates(h as &dyn HoopView, &HOOP_AXIOMS, axiom, witness)
}

pub(crate) fn to_pea_unchecked(h: &PseudoHoop) -> FiniteAlgebra {
    FiniteAlgebra::new(
        h.names.clone(),
        h.unit,
        h.meet.clone(),
        h.imp.transpose(),
        h.simp.clone(),
    )
    .expect("tables already validated")
}

/// `a ∼ b = b → a`, `a ⌣∼ b = a ⇝ b`, `a ∧ b = a ⊙ (a ⇝ b)`.
pub fn hoop_to_pea(h: &PseudoHoop) -> Result<FiniteAlgebra> {
    let r = check_pseudo_hoop_with(h, CheckMode::FastFail);
    if let Some(f) = r.failures.first() {
        return Err(Error::Contract(format!(
            "not a pseudo hoop: {} fails at {:?}",
            f.axiom, f.witness
        )));
    }
    let a = to_pea_unchecked(h);
    let r = check_new_axioms_with(&a, CheckMode::FastFail);
    if let Some(f) = r.failures.first() {
        return Err(Error::violation(
            format!("hoop-induced algebra satisfies {}", f.axiom),
            &f.witness,
        ));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_new_axioms;
    use crate::bck::is_invariant;
    use crate::builtin;

    #[test]
    fn boolean_hoop() {
        let h = builtin::boolean_hoop();
        assert!(check_pseudo_hoop(&h).verdict);
        let a = hoop_to_pea(&h).unwrap();
        assert!(check_new_axioms(&a).verdict);
        assert!(is_invariant(&a).unwrap());
        assert_eq!(a, builtin::two_chain_hoop());
    }

    #[test]
    fn lukasiewicz_chain() {
        let h = builtin::lukasiewicz_hoop(3);
        assert!(check_pseudo_hoop(&h).verdict);
        // meet is the chain minimum
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(h.meet_table().get(a, b), a.min(b));
            }
        }
        let a = hoop_to_pea(&h).unwrap();
        assert!(is_invariant(&a).unwrap());
        // commutative hoop: ∼ is the transpose of ⌣∼
        assert_eq!(a.sim_table(), &a.bsim_table().transpose());
    }

    #[test]
    fn unit_failure() {
        let h = builtin::boolean_hoop();
        let mut prod = h.prod_table().clone();
        prod.set(1, 1, 0);
        let bad = PseudoHoop::new(
            h.names().to_vec(),
            1,
            prod,
            h.imp_table().clone(),
            h.simp_table().clone(),
        )
        .unwrap();
        let r = check_pseudo_hoop(&bad);
        assert_eq!(r.failures[0].axiom, "unit");
        assert_eq!(r.failures[0].witness, vec![1]);
        assert!(matches!(hoop_to_pea(&bad), Err(Error::Contract(_))));
    }

    #[test]
    fn printed_divisibility_variant_fails_on_boolean_hoop() {
        // (a → b) ⊙ a = (b → a) ⊙ a would force 0 = 1 at a = 1, b = 0
        let h = builtin::boolean_hoop();
        let lhs = h.prod_table().get(h.imp_table().get(1, 0), 1);
        let rhs = h.prod_table().get(h.imp_table().get(0, 1), 1);
        assert_ne!(lhs, rhs);
    }
}
