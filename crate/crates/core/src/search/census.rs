//! Models of one signature and size, one per isomorphism class, with persistence.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use super::canon::{canonical_form, CanonicalForm};
use super::hunt::PREDICATES;
use super::{check_bound, models_over_lattices, Signature};
use crate::error::{Error, Result};
use crate::format::{read_model, write_model, Model};
use crate::table::{default_names, Table};

/// A model index into [`Census::exemplars`] with a short description of the witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub model: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub size: usize,
    pub signature: Signature,
    /// Sorted by canonical form.
    pub exemplars: Vec<Model>,
    pub predicate_hits: BTreeMap<String, Vec<Hit>>,
}

impl Census {
    pub fn count(&self) -> usize {
        self.exemplars.len()
    }
}

fn tables_of(m: &Model) -> ([&Table; 3], usize) {
    match m {
        Model::Pea(a) => ([a.meet_table(), a.sim_table(), a.bsim_table()], a.top()),
        Model::Pbck(b) => ([b.meet_table(), b.imp_table(), b.simp_table()], b.top()),
        Model::Hoop(h) => ([h.prod_table(), h.imp_table(), h.simp_table()], h.unit()),
    }
}

pub fn canonical_key(m: &Model) -> CanonicalForm {
    let (t, top) = tables_of(m);
    canonical_form(&t, top).0
}

fn relabel(m: &Model, perm: &[usize]) -> Model {
    let n = perm.len();
    let top = perm[tables_of(m).1];
    let names = default_names(n, top);
    match m {
        Model::Pea(a) => Model::Pea(a.permute(perm).with_names(names).unwrap()),
        Model::Pbck(b) => Model::Pbck(b.permute(perm).with_names(names).unwrap()),
        Model::Hoop(h) => Model::Hoop(h.permute(perm).with_names(names).unwrap()),
    }
}

/// Relabels a model into its canonical form, with default element names.
pub fn canonicalize(m: &Model) -> Model {
    let (t, top) = tables_of(m);
    let (_, perm) = canonical_form(&t, top);
    relabel(m, &perm)
}

fn build(sig: Signature, n: usize) -> Census {
    use rayon::prelude::*;
    let raw = models_over_lattices(sig, n);
    let keyed: Vec<(CanonicalForm, Model)> = raw
        .into_par_iter()
        .filter(|m| sig.check(m).map(|r| r.verdict).unwrap_or(false))
        .map(|m| {
            let c = canonicalize(&m);
            (canonical_key(&c), c)
        })
        .collect();
    let unique: BTreeMap<CanonicalForm, Model> = keyed.into_iter().collect();
    let exemplars: Vec<Model> = unique.into_values().collect();
    let mut predicate_hits = BTreeMap::new();
    for p in PREDICATES.iter().filter(|p| p.signature == sig) {
        let hits: Vec<Hit> = exemplars
            .par_iter()
            .enumerate()
            .filter_map(|(i, m)| match (p.test)(m) {
                Ok(Some(detail)) => Some(Hit { model: i, detail }),
                Ok(None) => None,
                Err(e) => Some(Hit {
                    model: i,
                    detail: format!("error: {e}"),
                }),
            })
            .collect();
        predicate_hits.insert(p.name.to_string(), hits);
    }
    Census {
        size: n,
        signature: sig,
        exemplars,
        predicate_hits,
    }
}

type Slot = Arc<OnceLock<Arc<Census>>>;

fn cache() -> &'static Mutex<HashMap<(Signature, usize), Slot>> {
    static CACHE: OnceLock<Mutex<HashMap<(Signature, usize), Slot>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Cached census up to isomorphism; each signature and size is enumerated once per
/// process.
pub fn census(sig: Signature, n: usize) -> Result<Arc<Census>> {
    check_bound(n)?;
    let slot = cache().lock().unwrap().entry((sig, n)).or_default().clone();
    Ok(slot.get_or_init(|| Arc::new(build(sig, n))).clone())
}

/// All models of the signature on `n` elements. With `upto_iso` one exemplar per class
/// (canonically labelled); otherwise every labelling of every class.
pub fn enumerate_models(sig: Signature, n: usize, upto_iso: bool) -> Result<Census> {
    let c = census(sig, n)?;
    if upto_iso {
        return Ok((*c).clone());
    }
    let mut seen = BTreeMap::new();
    for m in &c.exemplars {
        for perm in (0..n).permutations(n) {
            let l = relabel(m, &perm);
            let (t, top) = tables_of(&l);
            let key = CanonicalForm {
                top: top as u8,
                cells: t.iter().flat_map(|x| x.cells().iter().copied()).collect(),
            };
            seen.entry(key).or_insert(l);
        }
    }
    Ok(Census {
        size: n,
        signature: sig,
        exemplars: seen.into_values().collect(),
        predicate_hits: BTreeMap::new(),
    })
}

fn file_name(c: &Census, i: usize) -> String {
    format!("{}-{}-{:03}.{}", c.signature, c.size, i, c.signature.kind())
}

/// Writes one file per exemplar and an `index.txt` listing them.
pub fn save_census(c: &Census, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut index = format!("signature {}\nsize {}\ncount {}\n", c.signature, c.size, c.count());
    for (i, m) in c.exemplars.iter().enumerate() {
        let name = file_name(c, i);
        fs::write(dir.join(&name), write_model(m))?;
        index.push_str(&format!("model {name}\n"));
    }
    for (p, hits) in &c.predicate_hits {
        for h in hits {
            index.push_str(&format!("hit {p} {} {}\n", h.model, h.detail));
        }
    }
    fs::write(dir.join("index.txt"), index)?;
    Ok(())
}

/// Result of re-verifying a persisted census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusCheck {
    pub signature: Signature,
    pub size: usize,
    pub count: usize,
    /// file name and what is wrong with it
    pub problems: Vec<(String, String)>,
}

impl CensusCheck {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

fn index_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Input(format!("index.txt line {line}: {}", msg.into()))
}

/// Re-reads a census directory: every exemplar must parse, pass the signature's
/// checker, have the recorded size, and be non-isomorphic to the others.
pub fn verify_census_dir(dir: &Path) -> Result<CensusCheck> {
    let index = fs::read_to_string(dir.join("index.txt"))?;
    let mut signature = None;
    let mut size = None;
    let mut count = None;
    let mut files = Vec::new();
    for (i, line) in index.lines().enumerate() {
        let mut words = line.split_whitespace();
        match (words.next(), words.next()) {
            (None, _) => {}
            (Some("signature"), Some(s)) => {
                signature =
                    Some(Signature::parse(s).ok_or_else(|| index_error(i + 1, format!("unknown signature {s}")))?)
            }
            (Some("size"), Some(s)) => size = Some(s.parse::<usize>().map_err(|_| index_error(i + 1, "bad size"))?),
            (Some("count"), Some(s)) => count = Some(s.parse::<usize>().map_err(|_| index_error(i + 1, "bad count"))?),
            (Some("model"), Some(f)) => files.push(f.to_string()),
            (Some("hit"), Some(_)) => {}
            _ => return Err(index_error(i + 1, format!("unrecognised line {line:?}"))),
        }
    }
    let signature = signature.ok_or_else(|| index_error(0, "missing signature"))?;
    let size = size.ok_or_else(|| index_error(0, "missing size"))?;
    let count = count.ok_or_else(|| index_error(0, "missing count"))?;
    let mut problems = Vec::new();
    if count != files.len() {
        problems.push((
            "index.txt".to_string(),
            format!("count {count} but {} models listed", files.len()),
        ));
    }
    let mut keys = BTreeSet::new();
    for f in &files {
        let text = match fs::read_to_string(dir.join(f)) {
            Ok(t) => t,
            Err(e) => {
                problems.push((f.clone(), e.to_string()));
                continue;
            }
        };
        let m = match read_model(&text) {
            Ok(m) => m,
            Err(e) => {
                problems.push((f.clone(), e.to_string()));
                continue;
            }
        };
        if m.names().len() != size {
            problems.push((f.clone(), format!("size {} instead of {size}", m.names().len())));
        }
        match signature.check(&m) {
            Ok(r) if r.verdict => {}
            Ok(r) => problems.push((f.clone(), format!("fails {}", r.failed_axioms().join(", ")))),
            Err(e) => problems.push((f.clone(), e.to_string())),
        }
        if !keys.insert(canonical_key(&m)) {
            problems.push((f.clone(), "isomorphic to an earlier exemplar".to_string()));
        }
    }
    Ok(CensusCheck {
        signature,
        size,
        count,
        problems,
    })
}
