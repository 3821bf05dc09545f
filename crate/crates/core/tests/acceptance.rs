//! End-to-end acceptance checks over the exhaustive small-model censuses. Runs without
//! the libtest harness so that every criterion prints one PASS or FAIL line.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use peqa::algebra::{check_jk_axioms, check_new_axioms, collapse_witness};
use peqa::bck::{
    check_meet_compatibility, check_pbck, is_invariant, pbck_to_pea, pea_to_pbck, roundtrip_pbck, roundtrip_pea,
};
use peqa::builtin;
use peqa::congruence::{
    bijection_report, check_swapped_malcev, check_variety_terms, quotient, quotient_equality_check,
};
use peqa::deduction::{check_ds_closure_props, enumerate_ds, is_bsim_ds, is_imp_ds, is_sim_ds, DsFilter, SubsetMask};
use peqa::derived::{check_implication_laws, check_implication_monotonicity};
use peqa::format::{emit_model, parse_model, read_model, write_model, Model};
use peqa::hoop::hoop_to_pea;
use peqa::search::{census, find_counterexample, Signature};
use peqa::{AxiomReport, Error, FiniteAlgebra};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn peas(n_max: usize) -> Vec<FiniteAlgebra> {
    (1..=n_max)
        .flat_map(|n| census(Signature::Pea, n).unwrap().exemplars.clone())
        .map(|m| match m {
            Model::Pea(a) => a,
            _ => unreachable!(),
        })
        .collect()
}

/// Failure counts per law and the first offending model for each.
#[derive(Default)]
struct Tally {
    laws: BTreeMap<String, (usize, String)>,
}

impl Tally {
    fn add(&mut self, what: &str, r: &AxiomReport, names: &[String]) {
        for law in r.failed_axioms() {
            let e = self.laws.entry(law.to_string()).or_insert_with(|| {
                let f = r.first(law).unwrap();
                let w: Vec<&str> = f.witness.iter().map(|&i| names[i].as_str()).collect();
                (0, format!("{what} at ({})", w.join(", ")))
            });
            e.0 += 1;
        }
    }
    fn note(&mut self, law: &str, what: String) {
        self.laws.entry(law.to_string()).or_insert((0, what)).0 += 1;
    }
    fn outcome(self, ok: String) -> Outcome {
        if self.laws.is_empty() {
            return Ok(ok);
        }
        let parts: Vec<String> = self
            .laws
            .into_iter()
            .map(|(law, (k, first))| format!("{law} fails on {k} models, first {first}"))
            .collect();
        Err(parts.join("; "))
    }
}

fn describe(a: &FiniteAlgebra, i: usize) -> String {
    format!("model #{i} (n = {})", a.size())
}

fn collapse() -> Outcome {
    let mut total = 0;
    for n in 1..=4 {
        for m in &census(Signature::Jk, n).map_err(|e| e.to_string())?.exemplars {
            let Model::Pea(a) = m else { unreachable!() };
            if !check_jk_axioms(a).verdict {
                return Err(format!("census member fails the original axioms: {}", write_model(m)));
            }
            if let Some((x, y)) = collapse_witness(a).map_err(|e| e.to_string())? {
                return Err(format!("sim and bsim differ at ({x}, {y}) in {}", write_model(m)));
            }
            total += 1;
        }
    }
    match find_counterexample("jk_with_sim_neq_bsim", 4).map_err(|e| e.to_string())? {
        Some(c) => Err(format!("counterexample at size {}: {}", c.size, c.detail)),
        None => Ok(format!("{total} models up to n = 4, all with sim = bsim")),
    }
}

fn meet_compatibility_counterexample() -> Outcome {
    let b = builtin::ciungu5();
    let ix = |s: &str| b.index_of(s).unwrap();
    let (zero, a, bb, c) = (ix("0"), ix("a"), ix("b"), ix("c"));
    if !check_pbck(&b).verdict {
        return Err("the model fails the pseudo BCK-meet-semilattice axioms".into());
    }
    let xii = check_meet_compatibility(&b);
    if xii.verdict || !xii.contains("meet-compatibility", &[bb, c, a]) {
        return Err(format!(
            "meet compatibility verdict {} without the witness (b, c, a)",
            xii.verdict
        ));
    }
    if b.imp(c, bb) != bb || b.imp(b.meet(c, a), b.meet(bb, a)) != zero || b.le(bb, zero) {
        return Err("witness chain c→b = b, (c∧a)→(b∧a) = 0, b ≰ 0 does not hold".into());
    }
    match pbck_to_pea(&b) {
        Err(Error::Rejected {
            law: "meet-compatibility",
            ..
        }) => Ok("passes the axioms, fails meet compatibility at (b, c, a), rejected by G".into()),
        other => Err(format!("G did not reject the model: {other:?}")),
    }
}

fn theorem_suite() -> Outcome {
    let all = peas(4);
    let mut t = Tally::default();
    let mut swapped = 0;
    for (i, a) in all.iter().enumerate() {
        let what = describe(a, i);
        swapped += usize::from(!check_swapped_malcev(a).verdict);
        let d = a.derived();
        t.add(&what, &check_implication_monotonicity(a, d), a.names());
        t.add(&what, &check_implication_laws(a, d), a.names());
        t.add(&what, &check_variety_terms(a), a.names());
        match roundtrip_pea(a) {
            Ok(true) => {}
            Ok(false) => t.note("FGF", what),
            Err(e) => t.note("FGF", format!("{what}: {e}")),
        }
    }
    t.outcome(format!("{} models up to n = 4", all.len()))
        .map_err(|e| format!("{e} (the term with the first factor's arguments swapped fails on {swapped})"))
}

fn bridge() -> Outcome {
    let all = peas(4);
    let mut t = Tally::default();
    for (i, a) in all.iter().enumerate() {
        let what = describe(a, i);
        match pea_to_pbck(a) {
            Ok(b) => {
                t.add(&what, &check_pbck(&b), b.names());
                t.add(&what, &check_meet_compatibility(&b), b.names());
                match pbck_to_pea(&b).and_then(|g| pea_to_pbck(&g)) {
                    Ok(fgf) if fgf == b => {}
                    Ok(_) => t.note("FGF", what),
                    Err(e) => t.note("FGF", format!("{what}: {e}")),
                }
            }
            Err(e) => t.note("F", format!("{what}: {e}")),
        }
    }
    let mut pbcks = 0;
    for n in 1..=3 {
        for m in &census(Signature::PbckXii, n).map_err(|e| e.to_string())?.exemplars {
            let Model::Pbck(b) = m else { unreachable!() };
            pbcks += 1;
            match roundtrip_pbck(b) {
                Ok(true) => {}
                Ok(false) => t.note("FG", format!("pbck model #{pbcks}")),
                Err(e) => t.note("FG", format!("pbck model #{pbcks}: {e}")),
            }
        }
    }
    t.outcome(format!(
        "{} pea models up to n = 4, {pbcks} meet-compatible pbck models up to n = 3",
        all.len()
    ))
}

fn bijection() -> Outcome {
    let all = peas(4);
    let mut t = Tally::default();
    let mut pairs = 0;
    for (i, a) in all.iter().enumerate() {
        match bijection_report(a) {
            Ok(r) if r.holds() => pairs += r.congruences.len(),
            Ok(r) => t.note(
                "correspondence",
                format!(
                    "{}: {} congruences, {} systems, {} + {} bad round trips",
                    describe(a, i),
                    r.congruences.len(),
                    r.systems.len(),
                    r.bad_congruences.len(),
                    r.bad_systems.len()
                ),
            ),
            Err(e) => t.note("correspondence", format!("{}: {e}", describe(a, i))),
        }
    }
    t.outcome(format!("{} models, {pairs} congruence/system pairs", all.len()))
}

fn quotients() -> Outcome {
    let all = peas(4);
    let mut t = Tally::default();
    let (mut normal, mut commutative) = (0, 0);
    for (i, a) in all.iter().enumerate() {
        for d in enumerate_ds(a, DsFilter::Normal).map_err(|e| e.to_string())? {
            normal += 1;
            let what = format!("{} by {}", describe(a, i), d.members.render(a.names()));
            match quotient(a, d.members) {
                Ok(q) => t.add(&what, &check_new_axioms(&q), q.names()),
                Err(e) => t.note("quotient", format!("{what}: {e}")),
            }
            if d.flags.commutative {
                commutative += 1;
                match quotient_equality_check(a, d.members) {
                    Ok(true) => {}
                    Ok(false) => t.note("equality quotient", what),
                    Err(e) => t.note("equality quotient", format!("{what}: {e}")),
                }
            }
        }
    }
    t.outcome(format!("{normal} normal systems, {commutative} of them commutative"))
}

fn ds_characterizations() -> Outcome {
    let all = peas(4);
    let mut t = Tally::default();
    let (mut subsets, mut systems) = (0, 0);
    for (i, a) in all.iter().enumerate() {
        for bits in 0..1u64 << a.size() {
            subsets += 1;
            let s = SubsetMask(bits);
            let what = format!("{} on {}", describe(a, i), s.render(a.names()));
            let by_sim = is_sim_ds(a, s);
            let by_bsim = is_bsim_ds(a, s);
            let by_imp = match is_imp_ds(a, s) {
                Ok(v) => v,
                Err(e) => {
                    t.note("imp rules", format!("{what}: {e}"));
                    continue;
                }
            };
            if by_sim != by_bsim || by_sim != by_imp {
                t.note(
                    "characterizations",
                    format!("{what}: sim {by_sim}, bsim {by_bsim}, imp {by_imp}"),
                );
            }
            if by_sim {
                systems += 1;
                match check_ds_closure_props(a, s) {
                    Ok(r) => t.add(&what, &r, a.names()),
                    Err(e) => t.note("closure", format!("{what}: {e}")),
                }
            }
        }
    }
    t.outcome(format!("{subsets} subsets, {systems} deductive systems"))
}

fn hoops() -> Outcome {
    let mut t = Tally::default();
    let mut count = 0;
    for n in 1..=3 {
        for m in &census(Signature::Hoop, n).map_err(|e| e.to_string())?.exemplars {
            let Model::Hoop(h) = m else { unreachable!() };
            count += 1;
            let what = format!("hoop #{count} (n = {n})");
            match hoop_to_pea(h) {
                Ok(a) => {
                    t.add(&what, &check_new_axioms(&a), a.names());
                    match is_invariant(&a) {
                        Ok(true) => {}
                        Ok(false) => t.note("invariant", what),
                        Err(e) => t.note("invariant", format!("{what}: {e}")),
                    }
                }
                Err(e) => t.note("hoop_to_pea", format!("{what}: {e}")),
            }
        }
    }
    t.outcome(format!("{count} hoops up to n = 3"))
}

fn cli_report(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_peqa"))
        .args(args)
        .output()
        .expect("run peqa");
    let mut bytes = out.stdout;
    bytes.extend(out.stderr);
    bytes.extend(format!("exit {:?}", out.status.code()).into_bytes());
    bytes
}

fn parser_round_trip() -> Outcome {
    let mut corpus: Vec<(String, String)> = vec![
        ("ciungu5 source".into(), builtin::CIUNGU5_TEXT.to_string()),
        ("ciungu5".into(), write_model(&Model::Pbck(builtin::ciungu5()))),
        ("degenerate".into(), write_model(&Model::Pea(builtin::degenerate()))),
    ];
    for sig in Signature::ALL {
        for n in 1..=4 {
            let c = census(sig, n).map_err(|e| e.to_string())?;
            for (i, m) in c.exemplars.iter().enumerate() {
                corpus.push((format!("{sig} n = {n} #{i}"), write_model(m)));
            }
        }
    }
    let exemplars = corpus.len() - 3;
    for (what, text) in &corpus {
        let doc = parse_model(text).map_err(|e| format!("{what}: {e}"))?;
        let again = parse_model(&emit_model(&doc)).map_err(|e| format!("{what}: {e}"))?;
        if again != doc {
            return Err(format!("{what}: parse after emit changes the document"));
        }
        let model = read_model(text).map_err(|e| format!("{what}: {e}"))?;
        if write_model(&model) != emit_model(&doc) {
            return Err(format!("{what}: model emission differs from document emission"));
        }
    }
    let ciungu = corpus[1].1.clone();
    let dir = std::env::temp_dir().join(format!("peqa-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("ciungu5.pbck");
    std::fs::write(&path, &ciungu).map_err(|e| e.to_string())?;
    let p = path.to_string_lossy().into_owned();
    let commands: [&[&str]; 5] = [
        &["check", "--xii", &p],
        &["props", &p],
        &["bridge", &p, "--to", "pea"],
        &["con", "--bijection", "builtin:lukasiewicz3"],
        &["search", "--kind", "pbck", "--n", "4"],
    ];
    for args in commands {
        if cli_report(args) != cli_report(args) {
            return Err(format!("reports differ between runs of {}", args.join(" ")));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "{exemplars} census exemplars plus ciungu5 and the degenerate model; {} reports stable",
        commands.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("collapse of the original axioms", collapse),
        ("meet compatibility counterexample", meet_compatibility_counterexample),
        ("theorem suite", theorem_suite),
        ("bridge round trips", bridge),
        ("congruence correspondence", bijection),
        ("quotients", quotients),
        ("deductive system characterizations", ds_characterizations),
        ("hoop route", hoops),
        ("parser round trip", parser_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match r {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
