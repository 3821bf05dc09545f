use std::path::PathBuf;
use std::process::Command;

use peqa::cli::{run, CliOutcome};

fn peqa(args: &[&str]) -> CliOutcome {
    run(std::iter::once("peqa").chain(args.iter().copied()))
}

fn model_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "models", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_pea_and_pbck() {
    let r = peqa(&["check", "builtin:two_chain_hoop"]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r.out.starts_with("pseudo equality algebra axioms: pass"));

    let r = peqa(&["check", &model_file("ciungu5.pbck")]);
    assert_eq!(r.code, 0, "{r:?}");

    let r = peqa(&["check", &model_file("ciungu5.pbck"), "--xii"]);
    assert_eq!(r.code, 1);
    assert!(r.out.contains("meet compatibility: FAIL"), "{}", r.out);
    assert!(r.out.contains("(b, c, a)"), "{}", r.out);
}

#[test]
fn check_original_axioms_reports_collapse() {
    let r = peqa(&["check", "--jk", "builtin:two_chain"]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r.out.ends_with("collapse: sim = bsim\n"));
    let r = peqa(&["check", "--jk", "builtin:two_chain_hoop"]);
    assert_eq!(r.code, 1);
}

#[test]
fn bridge_translations() {
    let r = peqa(&["bridge", "builtin:ciungu5", "--to", "pea"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.out, "rejected: meet-compatibility fails at (a, b, b)\n");

    let r = peqa(&["bridge", &model_file("two_chain_hoop.pea"), "--roundtrip"]);
    assert_eq!(
        (r.code, r.out.as_str()),
        (0, "F(G(F(A))) = F(A): true\ninvariant: true\n")
    );

    let r = peqa(&["bridge", &model_file("two_chain.pea"), "--roundtrip"]);
    assert_eq!(
        (r.code, r.out.as_str()),
        (0, "F(G(F(A))) = F(A): true\ninvariant: false\n")
    );

    let r = peqa(&["bridge", "builtin:two_chain_pbck", "--roundtrip"]);
    assert_eq!((r.code, r.out.as_str()), (0, "F(G(B)) = B: true\n"));

    let r = peqa(&["bridge", "builtin:lukasiewicz3", "--to", "pbck"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("kind pbck\n"));
    let back = peqa::format::read_model(&r.out).unwrap();
    assert_eq!(back.kind(), peqa::format::Kind::Pbck);
}

#[test]
fn deductive_systems_and_congruences() {
    let r = peqa(&["ds", "builtin:lukasiewicz3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 2);
    let r = peqa(&["ds", "builtin:lukasiewicz3", "--filter", "bogus"]);
    assert_eq!(r.code, 2);

    let r = peqa(&["con", "builtin:two_chain_hoop", "--bijection"]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r.out.ends_with("correspondence: holds\n"));
}

#[test]
fn quotient_diagnostics() {
    let r = peqa(&["quotient", "builtin:two_chain_hoop", "--ds", "1"]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r.out.starts_with("kind pea\nelements [0] [1]\n"), "{}", r.out);

    let r = peqa(&["quotient", "builtin:two_chain_hoop", "--ds", "0"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("missing 1"), "{}", r.err);

    let r = peqa(&["quotient", "builtin:two_chain_hoop", "--ds", "zz"]);
    assert_eq!(r.code, 2);
}

#[test]
fn hoop_command() {
    let r = peqa(&["hoop", &model_file("lukasiewicz3_hoop.hoop")]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r.out.contains("invariant: true\nkind pea\n"));
    let r = peqa(&["hoop", "builtin:two_chain"]);
    assert_eq!(r.code, 2);
}

#[test]
fn search_and_census_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hoop3");
    let o = out.to_string_lossy().into_owned();
    let r = peqa(&["search", "--kind", "hoop", "--n", "3", "--out", &o]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r
        .out
        .starts_with("signature hoop, size 3: 2 models up to isomorphism\n"));
    let r = peqa(&["census", &o]);
    assert_eq!(r.code, 0, "{r:?}");
    assert!(r.out.ends_with("census: ok\n"));

    let first = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|x| x == "hoop"))
        .unwrap();
    let text = std::fs::read_to_string(&first).unwrap();
    std::fs::write(&first, text.replacen("table imp\n1", "table imp\n0", 1)).unwrap();
    let r = peqa(&["census", &o]);
    assert_eq!(r.code, 1, "{r:?}");
}

#[test]
fn predicate_search_exit_codes() {
    let r = peqa(&["search", "--predicate", "jk_with_sim_neq_bsim", "--n", "3"]);
    assert_eq!(
        (r.code, r.out.as_str()),
        (0, "jk_with_sim_neq_bsim: none up to size 3\n")
    );
    let r = peqa(&["search", "--predicate", "non_invariant_pea", "--n", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("non_invariant_pea: found at size 2"));
    let r = peqa(&["search", "--predicate", "nonsense", "--n", "3"]);
    assert_eq!(r.code, 2);
    let r = peqa(&["search", "--kind", "pea", "--n", "99"]);
    assert_eq!(r.code, 3, "{r:?}");
}

#[test]
fn input_errors() {
    assert_eq!(peqa(&["check", "builtin:nope"]).code, 2);
    assert_eq!(peqa(&["check", "/nonexistent/model.pea"]).code, 2);
    assert_eq!(peqa(&["frobnicate"]).code, 2);
    let r = peqa(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("search"));
}

#[test]
fn binary_reports_identically_across_runs() {
    let exe = env!("CARGO_BIN_EXE_peqa");
    let go = || {
        Command::new(exe)
            .args(["check", "--xii", &model_file("ciungu5.pbck")])
            .output()
            .unwrap()
    };
    let (a, b) = (go(), go());
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        String::from_utf8_lossy(&a.stdout),
        peqa(&["check", "--xii", &model_file("ciungu5.pbck")]).out
    );
}
