use proptest::prelude::*;

use peqa::algebra::{check_new_axioms, check_new_axioms_with, replay_new_axiom};
use peqa::bck::{check_pbck, replay_pbck_law, BckAlgebra};
use peqa::congruence::{check_variety_terms, is_congruence, replay_term_law, EquivRelation};
use peqa::deduction::{diagnose, is_sim_ds, is_upset, DsDiagnosis, SubsetMask};
use peqa::derived::{check_implication_laws, check_implication_monotonicity, derive, replay_derived_law};
use peqa::format::{emit_model, parse_model, Kind, Model, ModelDocument};
use peqa::hoop::{check_pseudo_hoop, replay_hoop_axiom};
use peqa::search::{canonical_key, canonicalize, census, Signature};
use peqa::{CheckMode, FiniteAlgebra, PseudoHoop, Table};

fn table(n: usize) -> impl Strategy<Value = Table> {
    prop::collection::vec(0..n, n * n).prop_map(move |c| Table::from_fn(n, |a, b| c[a * n + b]))
}

/// Three arbitrary tables and a top on 1..=4 elements.
fn raw_tables() -> impl Strategy<Value = (usize, Table, Table, Table)> {
    (1usize..=4).prop_flat_map(|n| (0..n, table(n), table(n), table(n)))
}

/// Arbitrary tables over a lattice meet, so the operation axioms get exercised.
fn over_chain() -> impl Strategy<Value = FiniteAlgebra> {
    (2usize..=4).prop_flat_map(|n| (table(n), table(n))).prop_map(|(s, b)| {
        let n = s.size();
        let meet = Table::from_fn(n, |a, b| a.min(b));
        FiniteAlgebra::from_tables(n - 1, meet, s, b).unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn pea_exemplar(m: &Model) -> FiniteAlgebra {
    match m {
        Model::Pea(a) => a.clone(),
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn axiom_failures_replay((top, m, s, b) in raw_tables()) {
        let a = FiniteAlgebra::from_tables(top, m, s, b).unwrap();
        let r = check_new_axioms(&a);
        prop_assert_eq!(r.verdict, r.failures.is_empty());
        for f in &r.failures {
            prop_assert!(replay_new_axiom(&a, &f.axiom, &f.witness), "{} {:?}", f.axiom, f.witness);
        }
        let fast = check_new_axioms_with(&a, CheckMode::FastFail);
        prop_assert_eq!(fast.verdict, r.verdict);
        prop_assert_eq!(fast.failures.first(), r.failures.first());
    }

    #[test]
    fn operation_failures_replay(a in over_chain()) {
        let r = check_new_axioms(&a);
        for f in &r.failures {
            prop_assert!(replay_new_axiom(&a, &f.axiom, &f.witness));
        }
        let d = derive(&a);
        let laws = check_implication_monotonicity(&a, &d).merge(check_implication_laws(&a, &d));
        for f in &laws.failures {
            prop_assert!(replay_derived_law(&a, &d, &f.axiom, &f.witness), "{} {:?}", f.axiom, f.witness);
        }
        for f in &check_variety_terms(&a).failures {
            prop_assert!(replay_term_law(&a, &f.axiom, &f.witness));
        }
    }

    #[test]
    fn pbck_and_hoop_failures_replay((top, m, i, s) in raw_tables()) {
        let b = BckAlgebra::from_tables(top, m.clone(), i.clone(), s.clone()).unwrap();
        for f in &check_pbck(&b).failures {
            prop_assert!(replay_pbck_law(&b, &f.axiom, &f.witness), "{} {:?}", f.axiom, f.witness);
        }
        let h = PseudoHoop::from_tables(top, m, i, s).unwrap();
        for f in &check_pseudo_hoop(&h).failures {
            prop_assert!(replay_hoop_axiom(&h, &f.axiom, &f.witness), "{} {:?}", f.axiom, f.witness);
        }
    }

    #[test]
    fn canonical_form_ignores_labelling(i in 0usize..72, perm in permutation(4)) {
        let c = census(Signature::Pea, 4).unwrap();
        let a = pea_exemplar(&c.exemplars[i]);
        let p = Model::Pea(a.permute(&perm));
        prop_assert_eq!(canonical_key(&p), canonical_key(&c.exemplars[i]));
        let once = canonicalize(&p);
        prop_assert_eq!(&once, &c.exemplars[i]);
        prop_assert_eq!(canonicalize(&once), once);
    }

    #[test]
    fn relabelled_models_keep_their_verdicts(i in 0usize..72, perm in permutation(4)) {
        let a = pea_exemplar(&census(Signature::Pea, 4).unwrap().exemplars[i]);
        let p = a.permute(&perm);
        prop_assert!(check_new_axioms(&p).verdict);
        let (r, rp) = (check_variety_terms(&a), check_variety_terms(&p));
        prop_assert_eq!(r.failed_axioms(), rp.failed_axioms());
    }

    #[test]
    fn documents_round_trip(
        (top, m, s, b) in raw_tables(),
        kind in prop::sample::select(vec![Kind::Pea, Kind::Pbck, Kind::Hoop]),
        shift in 0usize..5,
    ) {
        let n = m.size();
        let pool = ["0", "a", "b", "c", "1", "x_2", "top1", "u'"];
        let names: Vec<String> = (0..n).map(|i| pool[(i + shift) % pool.len()].to_string()).collect();
        let doc = ModelDocument { kind, names, top, tables: vec![m, s, b] };
        let text = emit_model(&doc);
        prop_assert_eq!(parse_model(&text).unwrap(), doc.clone());
        prop_assert_eq!(emit_model(&parse_model(&text).unwrap()), text);
    }

    #[test]
    fn congruence_test_matches_definition(i in 0usize..72, labels in prop::collection::vec(0usize..4, 4)) {
        let a = pea_exemplar(&census(Signature::Pea, 4).unwrap().exemplars[i]);
        let r = EquivRelation::from_labels(&labels);
        let ops = [a.meet_table(), a.sim_table(), a.bsim_table()];
        let mut expected = true;
        for (x, y, u, v) in quads(4) {
            if r.related(x, y) && r.related(u, v) {
                for t in ops {
                    expected &= r.related(t.get(x, u), t.get(y, v));
                }
            }
        }
        prop_assert_eq!(is_congruence(&a, &r), expected);
    }

    #[test]
    fn deductive_system_test_matches_definition(i in 0usize..72, bits in 0u64..16) {
        let a = pea_exemplar(&census(Signature::Pea, 4).unwrap().exemplars[i]);
        let s = SubsetMask(bits);
        let n = a.size();
        let closed = (0..n).all(|x| (0..n).all(|y| !(s.contains(x) && s.contains(a.sim(y, x))) || s.contains(y)));
        let up = (0..n).all(|x| (0..n).all(|y| !(s.contains(x) && a.le(x, y)) || s.contains(y)));
        prop_assert_eq!(is_upset(&a, s), up);
        prop_assert_eq!(is_sim_ds(&a, s), s.contains(a.top()) && up && closed);
        prop_assert_eq!(diagnose(&a, s) == DsDiagnosis::Ok, is_sim_ds(&a, s));
    }
}

fn quads(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).flat_map(move |u| (0..n).map(move |v| (x, y, u, v)))))
}

#[test]
fn format_keywords_are_not_element_names() {
    let a = peqa::builtin::two_chain();
    for bad in ["top", "table", "unit"] {
        assert!(a.clone().with_names(vec![bad.into(), "1".into()]).is_err(), "{bad}");
    }
}
