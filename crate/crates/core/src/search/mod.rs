//! Exhaustive enumeration of small models and counterexample search.
//!
//! Models are generated lattice by lattice: the meet (or, for hoops, the derived meet)
//! is fixed first, then the remaining tables are filled cell by cell under the
//! signature's laws. Results are reduced to one exemplar per isomorphism class.

pub mod canon;
pub mod census;
pub(crate) mod engine;
pub mod hunt;
pub mod lattice;

use std::fmt;

use crate::algebra::{check_jk_axioms, check_new_axioms, F1, F1_JK, JK_AXIOMS, NEW_AXIOMS};
use crate::bck::{check_meet_compatibility, check_pbck, MEET_COMPATIBILITY, PBCK_AXIOMS};
use crate::error::{Error, Result};
use crate::format::{Kind, Model};
use crate::hoop::{check_pseudo_hoop, HOOP_AXIOMS, HOOP_SEARCH_LAWS};
use crate::report::AxiomReport;
use crate::table::{default_names, env_bound};

pub use census::{
    canonical_key, canonicalize, census, enumerate_models, save_census, verify_census_dir, Census, CensusCheck, Hit,
};
pub use hunt::{find_counterexample, Counterexample, PREDICATES};

pub const DEFAULT_MAX_SEARCH_N: usize = 5;
pub const MAX_SEARCH_ENV: &str = "PEQA_MAX_SEARCH_N";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Signature {
    /// F1–F7
    Pea,
    /// F1'–F7'
    Jk,
    /// pseudo BCK-meet-semilattices
    Pbck,
    /// pseudo BCK-meet-semilattices with meet compatibility
    PbckXii,
    Hoop,
}

impl Signature {
    pub const ALL: [Signature; 5] = [
        Signature::Pea,
        Signature::Jk,
        Signature::Pbck,
        Signature::PbckXii,
        Signature::Hoop,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Signature::Pea => "pea",
            Signature::Jk => "jk",
            Signature::Pbck => "pbck",
            Signature::PbckXii => "pbck_xii",
            Signature::Hoop => "hoop",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Signature::ALL.into_iter().find(|x| x.as_str() == s)
    }

    pub fn kind(self) -> Kind {
        match self {
            Signature::Pea | Signature::Jk => Kind::Pea,
            Signature::Pbck | Signature::PbckXii => Kind::Pbck,
            Signature::Hoop => Kind::Hoop,
        }
    }

    /// Runs the signature's full checker on a model of the matching kind.
    pub fn check(self, m: &Model) -> Result<AxiomReport> {
        Ok(match (self, m) {
            (Signature::Pea, Model::Pea(a)) => check_new_axioms(a),
            (Signature::Jk, Model::Pea(a)) => check_jk_axioms(a),
            (Signature::Pbck, Model::Pbck(b)) => check_pbck(b),
            (Signature::PbckXii, Model::Pbck(b)) => check_pbck(b).merge(check_meet_compatibility(b)),
            (Signature::Hoop, Model::Hoop(h)) => check_pseudo_hoop(h),
            _ => {
                return Err(Error::Input(format!(
                    "a {} model cannot be checked as {}",
                    m.kind(),
                    self
                )))
            }
        })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn search_bound() -> usize {
    env_bound(MAX_SEARCH_ENV, DEFAULT_MAX_SEARCH_N)
}

pub(crate) fn check_bound(n: usize) -> Result<()> {
    let bound = search_bound();
    if n > bound {
        return Err(Error::Capacity {
            what: "model search",
            size: n,
            bound,
        });
    }
    if n == 0 {
        return Err(Error::Input("model size must be positive".into()));
    }
    Ok(())
}

/// Every model of the signature on `{0, …, n−1}` whose meet is one of the listed
/// lattices (top at `n − 1`). Labelled, not reduced.
pub(crate) fn models_over_lattices(sig: Signature, n: usize) -> Vec<Model> {
    use crate::algebra::FiniteAlgebra;
    use crate::bck::BckAlgebra;
    use crate::hoop::PseudoHoop;
    use engine::*;

    let top = n - 1;
    let mut constraints = Vec::new();
    match sig {
        Signature::Pea => {
            meet_constraints(&F1, n, &mut constraints);
            pea_constraints(&NEW_AXIOMS, n, &mut constraints);
        }
        Signature::Jk => {
            meet_constraints(&F1_JK, n, &mut constraints);
            pea_constraints(&JK_AXIOMS, n, &mut constraints);
        }
        Signature::Pbck | Signature::PbckXii => {
            bck_constraints(&PBCK_AXIOMS, n, &mut constraints);
            if sig == Signature::PbckXii {
                bck_constraints(&MEET_COMPATIBILITY, n, &mut constraints);
            }
        }
        Signature::Hoop => {
            hoop_constraints(&HOOP_SEARCH_LAWS, n, &mut constraints);
            hoop_constraints(&HOOP_AXIOMS, n, &mut constraints);
        }
    }
    let nn = n * n;
    // pair by pair, the three tables interleaved
    let order: Vec<usize> = (0..nn).flat_map(|i| [i, nn + i, 2 * nn + i]).collect();

    let mut out = Vec::new();
    for meet in lattice::lattices(n) {
        let reading = match sig {
            Signature::Pea | Signature::Jk => Reading::Pea,
            Signature::Pbck | Signature::PbckXii => Reading::Bck,
            Signature::Hoop => Reading::Hoop,
        };
        let mut p = Partial::new(meet.clone(), top, reading);
        let le = |a: usize, b: usize| meet.get(a, b) == a;
        // cells forced by the laws
        for a in 0..n {
            match sig {
                Signature::Pea => {
                    p.set(1, a, a, top);
                    p.set(2, a, a, top);
                    p.set(1, a, top, a);
                    p.set(2, top, a, a);
                }
                Signature::Jk => {
                    p.set(1, a, a, top);
                    p.set(2, a, a, top);
                    p.set(1, a, top, a);
                    p.set(2, a, top, a);
                    p.set(1, top, a, a);
                    p.set(2, top, a, a);
                }
                Signature::Pbck | Signature::PbckXii | Signature::Hoop => {
                    for b in 0..n {
                        if le(a, b) {
                            p.set(1, a, b, top);
                            p.set(2, a, b, top);
                        }
                    }
                    p.set(1, top, a, a);
                    p.set(2, top, a, a);
                    if sig == Signature::Hoop {
                        p.set(0, a, top, a);
                        p.set(0, top, a, a);
                    }
                }
            }
        }
        for s in solve(p, &constraints, &order) {
            let names = default_names(n, top);
            let (t0, t1, t2) = (s.table(0), s.table(1), s.table(2));
            let m = match sig {
                Signature::Pea | Signature::Jk => Model::Pea(FiniteAlgebra::new(names, top, t0, t1, t2).unwrap()),
                Signature::Pbck | Signature::PbckXii => Model::Pbck(BckAlgebra::new(names, top, t0, t1, t2).unwrap()),
                Signature::Hoop => Model::Hoop(PseudoHoop::new(names, top, t0, t1, t2).unwrap()),
            };
            out.push(m);
        }
    }
    out
}
