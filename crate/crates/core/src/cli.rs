//! The `peqa` command line.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false (or a counterexample to a
//! theorem), 2 input error, 3 capacity exceeded.

use std::fmt::Write;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{check_jk_axioms, check_new_axioms, collapse_witness, FiniteAlgebra};
use crate::bck::{
    check_meet_absorption, check_meet_compatibility, check_pbck, check_pbck_consequences, is_invariant, pbck_to_pea,
    pea_to_pbck, roundtrip_pbck, roundtrip_pea,
};
use crate::builtin;
use crate::congruence::{bijection_report, enumerate_congruences, quotient};
use crate::deduction::{diagnose, enumerate_ds, normality_violation, DsDiagnosis, DsFilter, SubsetMask};
use crate::derived::{check_implication_laws, check_implication_monotonicity};
use crate::error::{Error, Result};
use crate::format::{read_model, write_model, Model, ModelDocument};
use crate::hoop::{check_pseudo_hoop, hoop_to_pea};
use crate::search::{self, hunt, save_census, verify_census_dir, Signature};

const LIMIT: usize = 20;

#[derive(Parser, Debug)]
#[command(
    name = "peqa",
    version,
    about = "Finite-model workbench for pseudo equality algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the axioms of the model's kind.
    Check {
        /// Model file, or builtin:NAME
        model: String,
        /// Check the original axioms F1'–F7' and whether ∼ = ⌣∼.
        #[arg(long)]
        jk: bool,
        /// Also check meet compatibility (pbck models).
        #[arg(long)]
        xii: bool,
    },
    /// Derived-operation properties.
    Props { model: String },
    /// Translate between pseudo equality algebras and pseudo BCK-meet-semilattices.
    Bridge {
        model: String,
        #[arg(long, value_enum, conflicts_with = "roundtrip")]
        to: Option<Target>,
        #[arg(long)]
        roundtrip: bool,
    },
    /// List deductive systems.
    Ds {
        model: String,
        #[arg(long, default_value = "all")]
        filter: String,
    },
    /// List congruences.
    Con {
        model: String,
        #[arg(long)]
        bijection: bool,
    },
    /// Quotient by a normal deductive system given as comma-separated names.
    Quotient {
        model: String,
        #[arg(long)]
        ds: String,
    },
    /// Check a pseudo hoop and print the induced pseudo equality algebra.
    Hoop { model: String },
    /// Enumerate models up to isomorphism, or hunt for a named predicate.
    Search {
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        predicate: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a persisted census directory.
    Census { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Pbck,
    Pea,
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub out: String,
    pub err: String,
}

/// Runs the command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutcome {
                    code,
                    out: text,
                    err: String::new(),
                }
            } else {
                CliOutcome {
                    code,
                    out: String::new(),
                    err: text,
                }
            };
        }
    };
    let mut out = String::new();
    match dispatch(cli.command, &mut out) {
        Ok(code) => CliOutcome {
            code,
            out,
            err: String::new(),
        },
        Err(e) => CliOutcome {
            code: e.exit_code(),
            out,
            err: format!("error: {e}\n"),
        },
    }
}

pub fn load_model(source: &str) -> Result<Model> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return builtin::lookup(name).ok_or_else(|| {
            Error::Input(format!(
                "unknown built-in model {name:?}; known: {}",
                builtin::NAMES.join(", ")
            ))
        });
    }
    let text = fs::read_to_string(source).map_err(|e| Error::Input(format!("{source}: {e}")))?;
    read_model(&text)
}

fn expect_pea(m: Model, what: &str) -> Result<FiniteAlgebra> {
    match m {
        Model::Pea(a) => Ok(a),
        Model::Hoop(h) => hoop_to_pea(&h),
        other => Err(Error::Input(format!("{what} needs a pea model, got {}", other.kind()))),
    }
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(cmd: Command, out: &mut String) -> Result<i32> {
    match cmd {
        Command::Check { model, jk, xii } => check(load_model(&model)?, jk, xii, out),
        Command::Props { model } => props(load_model(&model)?, out),
        Command::Bridge { model, to, roundtrip } => bridge(load_model(&model)?, to, roundtrip, out),
        Command::Ds { model, filter } => {
            let f = DsFilter::parse(&filter).ok_or_else(|| {
                Error::Input(format!(
                    "unknown filter {filter:?}; use all, closed, normal, normal_closed or commutative"
                ))
            })?;
            let a = expect_pea(load_model(&model)?, "ds")?;
            for d in enumerate_ds(&a, f)? {
                let yn = |b: bool| if b { "yes" } else { "no" };
                let _ = writeln!(
                    out,
                    "{} closed={} normal={} commutative={}",
                    d.members.render(a.names()),
                    yn(d.flags.closed),
                    yn(d.flags.normal),
                    yn(d.flags.commutative)
                );
            }
            Ok(0)
        }
        Command::Con { model, bijection } => {
            let a = expect_pea(load_model(&model)?, "con")?;
            if !bijection {
                for r in enumerate_congruences(&a)? {
                    let _ = writeln!(out, "{}", r.render(a.names()));
                }
                return Ok(0);
            }
            let rep = bijection_report(&a)?;
            for r in &rep.congruences {
                let f = crate::congruence::top_class(&a, r)?;
                let _ = writeln!(out, "{} <-> {}", r.render(a.names()), f.members.render(a.names()));
            }
            let _ = writeln!(out, "congruences: {}", rep.congruences.len());
            let _ = writeln!(out, "normal closed deductive systems: {}", rep.systems.len());
            let _ = writeln!(out, "correspondence: {}", if rep.holds() { "holds" } else { "FAILS" });
            Ok(code(rep.holds()))
        }
        Command::Quotient { model, ds } => {
            let a = expect_pea(load_model(&model)?, "quotient")?;
            let mut s = SubsetMask::default();
            if a.size() > 64 {
                return Err(Error::Capacity {
                    what: "subset carrier",
                    size: a.size(),
                    bound: 64,
                });
            }
            for name in ds.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                let i = a
                    .index_of(name)
                    .ok_or_else(|| Error::Input(format!("unknown element {name:?}")))?;
                s.insert(i);
            }
            let d = diagnose(&a, s);
            if d != DsDiagnosis::Ok {
                return Err(Error::Contract(d.describe(&a)));
            }
            if let Some((x, y)) = normality_violation(&a, s) {
                return Err(Error::Contract(DsDiagnosis::NotNormal { x, y }.describe(&a)));
            }
            out.push_str(&write_model(&Model::Pea(quotient(&a, s)?)));
            Ok(0)
        }
        Command::Hoop { model } => {
            let h = match load_model(&model)? {
                Model::Hoop(h) => h,
                other => return Err(Error::Input(format!("hoop needs a hoop model, got {}", other.kind()))),
            };
            let r = check_pseudo_hoop(&h);
            out.push_str(&r.render("pseudo hoop axioms", h.names(), LIMIT));
            if !r.verdict {
                return Ok(1);
            }
            let a = hoop_to_pea(&h)?;
            let _ = writeln!(out, "invariant: {}", is_invariant(&a)?);
            out.push_str(&write_model(&Model::Pea(a)));
            Ok(0)
        }
        Command::Search {
            kind,
            n,
            predicate,
            out: dir,
        } => search_cmd(kind, n, predicate, dir, out),
        Command::Census { dir } => {
            let c = verify_census_dir(&dir)?;
            let _ = writeln!(out, "signature {}, size {}, {} models", c.signature, c.size, c.count);
            for (f, p) in &c.problems {
                let _ = writeln!(out, "  {f}: {p}");
            }
            let _ = writeln!(out, "census: {}", if c.ok() { "ok" } else { "FAIL" });
            Ok(code(c.ok()))
        }
    }
}

fn check(m: Model, jk: bool, xii: bool, out: &mut String) -> Result<i32> {
    match m {
        Model::Pea(a) if jk => {
            let r = check_jk_axioms(&a);
            out.push_str(&r.render("original axioms", a.names(), LIMIT));
            if !r.verdict {
                return Ok(1);
            }
            match collapse_witness(&a)? {
                None => {
                    out.push_str("collapse: sim = bsim\n");
                    Ok(0)
                }
                Some((x, y)) => {
                    let _ = writeln!(out, "collapse: tables differ at ({}, {})", a.names()[x], a.names()[y]);
                    Ok(1)
                }
            }
        }
        Model::Pea(a) => {
            let r = check_new_axioms(&a);
            out.push_str(&r.render("pseudo equality algebra axioms", a.names(), LIMIT));
            Ok(code(r.verdict))
        }
        Model::Pbck(b) => {
            let r = check_pbck(&b);
            out.push_str(&r.render("pseudo BCK-meet-semilattice axioms", b.names(), LIMIT));
            let mut ok = r.verdict;
            if xii {
                let x = check_meet_compatibility(&b);
                out.push_str(&x.render("meet compatibility", b.names(), LIMIT));
                ok &= x.verdict;
            }
            Ok(code(ok))
        }
        Model::Hoop(h) => {
            let r = check_pseudo_hoop(&h);
            out.push_str(&r.render("pseudo hoop axioms", h.names(), LIMIT));
            Ok(code(r.verdict))
        }
    }
}

fn props(m: Model, out: &mut String) -> Result<i32> {
    match m {
        Model::Pbck(b) => {
            let p = check_pbck_consequences(&b);
            out.push_str(&p.render("P1-P4", b.names(), LIMIT));
            let compatible = check_meet_compatibility(&b).verdict;
            let r = check_meet_absorption(&b);
            if compatible {
                out.push_str(&r.render("meet absorption", b.names(), LIMIT));
                Ok(code(p.verdict && r.verdict))
            } else {
                out.push_str(&r.render(
                    "meet absorption (no meet compatibility, informational)",
                    b.names(),
                    LIMIT,
                ));
                Ok(code(p.verdict))
            }
        }
        other => {
            let a = expect_pea(other, "props")?;
            let d = a.derived();
            let mut doc = ModelDocument::from_pea(&a);
            doc.tables = vec![a.meet_table().clone(), d.imp.clone(), d.simp.clone()];
            doc.kind = crate::format::Kind::Pbck;
            out.push_str("derived implications\n");
            for line in crate::format::emit_model(&doc).lines().skip(3 + a.size() + 1) {
                let _ = writeln!(out, "  {line}");
            }
            let m = check_implication_monotonicity(&a, d);
            let l = check_implication_laws(&a, d);
            out.push_str(&m.render("monotonicity", a.names(), LIMIT));
            out.push_str(&l.render("implication laws", a.names(), LIMIT));
            Ok(code(m.verdict && l.verdict))
        }
    }
}

fn bridge(m: Model, to: Option<Target>, roundtrip: bool, out: &mut String) -> Result<i32> {
    if roundtrip {
        return match m {
            Model::Pbck(b) => {
                let ok = roundtrip_pbck(&b)?;
                let _ = writeln!(out, "F(G(B)) = B: {ok}");
                Ok(code(ok))
            }
            other => {
                let a = expect_pea(other, "bridge")?;
                let ok = roundtrip_pea(&a)?;
                let _ = writeln!(out, "F(G(F(A))) = F(A): {ok}");
                let _ = writeln!(out, "invariant: {}", is_invariant(&a)?);
                Ok(code(ok))
            }
        };
    }
    match (to, m) {
        (Some(Target::Pbck), other) => {
            let a = expect_pea(other, "bridge --to pbck")?;
            out.push_str(&write_model(&Model::Pbck(pea_to_pbck(&a)?)));
            Ok(0)
        }
        (Some(Target::Pea), Model::Pbck(b)) => match pbck_to_pea(&b) {
            Ok(a) => {
                out.push_str(&write_model(&Model::Pea(a)));
                Ok(0)
            }
            Err(Error::Rejected { law, witness }) => {
                let w: Vec<&str> = witness.iter().map(|&i| b.names()[i].as_str()).collect();
                let _ = writeln!(out, "rejected: {law} fails at ({})", w.join(", "));
                Ok(1)
            }
            Err(e) => Err(e),
        },
        (Some(Target::Pea), Model::Hoop(h)) => {
            out.push_str(&write_model(&Model::Pea(hoop_to_pea(&h)?)));
            Ok(0)
        }
        (Some(Target::Pea), Model::Pea(_)) => Err(Error::Input("the model is already a pea".into())),
        (None, _) => Err(Error::Input("bridge needs --to or --roundtrip".into())),
    }
}

fn search_cmd(
    kind: Option<String>,
    n: usize,
    predicate: Option<String>,
    dir: Option<PathBuf>,
    out: &mut String,
) -> Result<i32> {
    let parse_kind = |k: &str| {
        Signature::parse(k)
            .ok_or_else(|| Error::Input(format!("unknown kind {k:?}; use pea, jk, pbck, pbck_xii or hoop")))
    };
    if let Some(p) = predicate {
        let pred = hunt::predicate(&p)?;
        if let Some(k) = &kind {
            if parse_kind(k)? != pred.signature {
                return Err(Error::Input(format!(
                    "predicate {p} ranges over {} models",
                    pred.signature
                )));
            }
        }
        let found = search::find_counterexample(&p, n)?;
        if let Some(d) = &dir {
            for m in 1..=n {
                save_census(
                    &*search::census(pred.signature, m)?,
                    &d.join(format!("{}-{m}", pred.signature)),
                )?;
            }
        }
        return Ok(match found {
            None => {
                let _ = writeln!(out, "{p}: none up to size {n}");
                0
            }
            Some(c) => {
                let _ = writeln!(out, "{p}: found at size {}: {}", c.size, c.detail);
                out.push_str(&write_model(&c.model));
                code(!pred.expect_none)
            }
        });
    }
    let k = kind.ok_or_else(|| Error::Input("search needs --kind or --predicate".into()))?;
    let sig = parse_kind(&k)?;
    let c = search::census(sig, n)?;
    let _ = writeln!(out, "signature {sig}, size {n}: {} models up to isomorphism", c.count());
    for (p, hits) in &c.predicate_hits {
        let _ = writeln!(out, "  {p}: {}", hits.len());
    }
    if let Some(d) = dir {
        save_census(&c, &d)?;
        let _ = writeln!(out, "saved to {}", d.display());
    }
    Ok(0)
}
