//! Structural theorems checked over whole censuses, one size beyond the acceptance runs
//! where that stays cheap.

use peqa::algebra::{collapse_witness, is_equality_algebra};
use peqa::bck::{is_invariant, pbck_to_pea, pea_to_pbck, roundtrip_pea};
use peqa::builtin;
use peqa::congruence::{is_congruence, EquivRelation};
use peqa::deduction::normality_violation;
use peqa::deduction::{enumerate_ds, DsFilter};
use peqa::format::Model;
use peqa::search::{canonical_key, census, find_counterexample, Signature};

fn peas(n: usize) -> Vec<peqa::FiniteAlgebra> {
    census(Signature::Pea, n)
        .unwrap()
        .exemplars
        .iter()
        .map(|m| match m {
            Model::Pea(a) => a.clone(),
            _ => unreachable!(),
        })
        .collect()
}

#[test]
fn original_axioms_collapse_at_five() {
    let c = census(Signature::Jk, 5).unwrap();
    assert_eq!(c.count(), 29);
    for m in &c.exemplars {
        let Model::Pea(a) = m else { unreachable!() };
        assert_eq!(collapse_witness(a).unwrap(), None);
        assert!(is_equality_algebra(a).unwrap());
    }
    assert!(c.predicate_hits["jk_with_sim_neq_bsim"].is_empty());
}

#[test]
fn first_counterexample_sizes() {
    let first = |p: &str| find_counterexample(p, 4).unwrap().map(|c| c.size);
    assert_eq!(first("non_invariant_pea"), Some(2));
    assert_eq!(first("sim_neq_bsim"), Some(2));
    assert_eq!(first("ds_not_closed"), Some(3));
    assert_eq!(first("ds_not_normal"), Some(4));
    assert_eq!(first("pbck_without_xii"), Some(4));
    assert_eq!(first("invariant_ds_not_closed"), None);
    assert_eq!(first("jk_with_sim_neq_bsim"), None);
}

#[test]
fn non_closed_systems_live_on_non_invariant_models() {
    for n in 1..=4 {
        for a in peas(n) {
            let all = enumerate_ds(&a, DsFilter::All).unwrap();
            if is_invariant(&a).unwrap() {
                assert!(all.iter().all(|d| d.flags.closed), "{a:?}");
            }
            // the whole carrier and the top alone are always systems
            assert!(all.len() > usize::from(n > 1));
        }
    }
}

#[test]
fn translations_at_five() {
    for a in peas(5) {
        assert!(roundtrip_pea(&a).unwrap());
        let fa = pea_to_pbck(&a).unwrap();
        let g = pbck_to_pea(&fa).unwrap();
        assert!(is_invariant(&g).unwrap());
        assert_eq!(is_invariant(&a).unwrap(), g == a);
    }
}

#[test]
fn ciungu5_is_in_the_pbck_census() {
    let c = census(Signature::Pbck, 5).unwrap();
    let key = canonical_key(&Model::Pbck(builtin::ciungu5()));
    let i = c
        .exemplars
        .iter()
        .position(|m| canonical_key(m) == key)
        .expect("ciungu5 enumerated");
    assert!(c.predicate_hits["pbck_without_xii"].iter().any(|h| h.model == i));
    let xii = census(Signature::PbckXii, 5).unwrap();
    assert!(xii.exemplars.iter().all(|m| canonical_key(m) != key));
}

#[test]
fn meet_compatible_pbck_are_the_translated_peas() {
    for n in 1..=4 {
        let from_peas: std::collections::BTreeSet<_> = peas(n)
            .iter()
            .map(|a| canonical_key(&Model::Pbck(pea_to_pbck(a).unwrap())))
            .collect();
        let xii: std::collections::BTreeSet<_> = census(Signature::PbckXii, n)
            .unwrap()
            .exemplars
            .iter()
            .map(canonical_key)
            .collect();
        assert_eq!(from_peas, xii, "n = {n}");
    }
}

/// On a system that is not normal, the two simplified relations are still equivalences
/// but neither they nor the four-condition relation are congruences.
#[test]
fn non_normal_systems_give_no_congruence() {
    let mut seen = 0;
    for n in 1..=5 {
        for a in peas(n) {
            for d in enumerate_ds(&a, DsFilter::All).unwrap() {
                let s = d.members;
                if normality_violation(&a, s).is_none() {
                    continue;
                }
                seen += 1;
                let by = |op: &dyn Fn(usize, usize) -> usize| {
                    EquivRelation::from_relation(n, |x, y| s.contains(op(x, y)) && s.contains(op(y, x)))
                        .expect("an equivalence")
                };
                let rs = by(&|x, y| a.sim(x, y));
                let rb = by(&|x, y| a.bsim(x, y));
                let r4 = EquivRelation::from_relation(n, |x, y| rs.related(x, y) && rb.related(x, y)).unwrap();
                assert!(!is_congruence(&a, &rs) && !is_congruence(&a, &rb) && !is_congruence(&a, &r4));
            }
        }
    }
    assert_eq!(seen, 10 + 266);
}
