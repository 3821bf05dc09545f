//! Named predicates and the search for their first model.

use super::{census, check_bound, Signature};
use crate::bck::{check_meet_compatibility_with, is_invariant_unchecked};
use crate::deduction::{enumerate_ds_unchecked, DsFilter};
use crate::error::{Error, Result};
use crate::format::Model;
use crate::report::CheckMode;

pub struct Predicate {
    pub name: &'static str,
    pub signature: Signature,
    /// The predicate contradicts a theorem, so no model should satisfy it.
    pub expect_none: bool,
    pub description: &'static str,
    /// `Some(detail)` when the model satisfies the predicate.
    pub(crate) test: fn(&Model) -> Result<Option<String>>,
}

fn pea(m: &Model) -> &crate::FiniteAlgebra {
    match m {
        Model::Pea(a) => a,
        _ => unreachable!("predicate applied to the wrong kind"),
    }
}

fn non_invariant(m: &Model) -> Result<Option<String>> {
    let a = pea(m);
    Ok((!is_invariant_unchecked(a)).then(|| "G(F(A)) differs from A".to_string()))
}

fn first_ds(m: &Model, want: impl Fn(&crate::DeductiveSystem) -> bool) -> Result<Option<String>> {
    let a = pea(m);
    let all = enumerate_ds_unchecked(a, DsFilter::All)?;
    Ok(all.iter().find(|d| want(d)).map(|d| d.members.render(a.names())))
}

fn ds_not_closed(m: &Model) -> Result<Option<String>> {
    first_ds(m, |d| !d.flags.closed)
}

fn invariant_ds_not_closed(m: &Model) -> Result<Option<String>> {
    if !is_invariant_unchecked(pea(m)) {
        return Ok(None);
    }
    first_ds(m, |d| !d.flags.closed)
}

fn ds_not_normal(m: &Model) -> Result<Option<String>> {
    first_ds(m, |d| !d.flags.normal)
}

fn sim_neq_bsim(m: &Model) -> Result<Option<String>> {
    let a = pea(m);
    Ok(a.sim_table().first_difference(a.bsim_table()).map(|(x, y)| {
        let nm = |i: usize| a.names()[i].as_str();
        format!(
            "{0} ∼ {1} = {2}, {0} ⌣∼ {1} = {3}",
            nm(x),
            nm(y),
            nm(a.sim(x, y)),
            nm(a.bsim(x, y))
        )
    }))
}

fn pbck_without_xii(m: &Model) -> Result<Option<String>> {
    let b = match m {
        Model::Pbck(b) => b,
        _ => unreachable!("predicate applied to the wrong kind"),
    };
    let r = check_meet_compatibility_with(b, CheckMode::FastFail);
    Ok(r.failures.first().map(|f| {
        let w: Vec<&str> = f.witness.iter().map(|&i| b.names()[i].as_str()).collect();
        format!("meet compatibility fails at ({})", w.join(", "))
    }))
}

pub static PREDICATES: [Predicate; 7] = [
    Predicate {
        name: "non_invariant_pea",
        signature: Signature::Pea,
        expect_none: false,
        description: "not fixed by the two translations composed",
        test: non_invariant,
    },
    Predicate {
        name: "ds_not_closed",
        signature: Signature::Pea,
        expect_none: false,
        description: "has a deductive system not closed under ∼ and ⌣∼",
        test: ds_not_closed,
    },
    Predicate {
        name: "invariant_ds_not_closed",
        signature: Signature::Pea,
        expect_none: true,
        description: "invariant, with a deductive system that is not closed",
        test: invariant_ds_not_closed,
    },
    Predicate {
        name: "ds_not_normal",
        signature: Signature::Pea,
        expect_none: false,
        description: "has a deductive system that is not normal",
        test: ds_not_normal,
    },
    Predicate {
        name: "sim_neq_bsim",
        signature: Signature::Pea,
        expect_none: false,
        description: "∼ and ⌣∼ differ",
        test: sim_neq_bsim,
    },
    Predicate {
        name: "jk_with_sim_neq_bsim",
        signature: Signature::Jk,
        expect_none: true,
        description: "satisfies the original axioms with ∼ and ⌣∼ different",
        test: sim_neq_bsim,
    },
    Predicate {
        name: "pbck_without_xii",
        signature: Signature::Pbck,
        expect_none: false,
        description: "pseudo BCK-meet-semilattice without meet compatibility",
        test: pbck_without_xii,
    },
];

pub fn predicate(name: &str) -> Result<&'static Predicate> {
    PREDICATES.iter().find(|p| p.name == name).ok_or_else(|| {
        let known: Vec<&str> = PREDICATES.iter().map(|p| p.name).collect();
        Error::Input(format!("unknown predicate {name:?}; known: {}", known.join(", ")))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub predicate: &'static str,
    pub size: usize,
    pub model: Model,
    pub detail: String,
}

/// The first model, by size and then canonical order, satisfying the predicate.
pub fn find_counterexample(name: &str, n_max: usize) -> Result<Option<Counterexample>> {
    let p = predicate(name)?;
    check_bound(n_max.max(1))?;
    for n in 1..=n_max {
        let c = census(p.signature, n)?;
        if let Some(hit) = c.predicate_hits.get(p.name).and_then(|h| h.first()) {
            return Ok(Some(Counterexample {
                predicate: p.name,
                size: n,
                model: c.exemplars[hit.model].clone(),
                detail: hit.detail.clone(),
            }));
        }
    }
    Ok(None)
}
