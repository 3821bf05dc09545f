//! Laws as data: every checker in the crate is a list of named laws evaluated over all
//! tuples in row-major order. Each law evaluates through a view trait whose lookups return
//! `Option`, so the same definitions serve complete algebras (always `Some`) and the
//! partially filled tables of the model search (`None` = not yet decidable).

use crate::report::{CheckMode, Failure};
use crate::table::tuples;

pub(crate) type Holds<V> = fn(&V, &[usize]) -> Option<bool>;

pub(crate) struct Part<V: ?Sized + 'static> {
    pub holds: Holds<V>,
}

pub(crate) struct Law<V: ?Sized + 'static> {
    pub id: &'static str,
    pub arity: usize,
    pub parts: &'static [Part<V>],
}

impl<V: ?Sized> Law<V> {
    /// `Some(false)` as soon as one part is decided false.
    pub fn eval(&self, view: &V, t: &[usize]) -> Option<bool> {
        let mut undecided = false;
        for p in self.parts {
            match (p.holds)(view, t) {
                Some(false) => return Some(false),
                None => undecided = true,
                Some(true) => {}
            }
        }
        if undecided {
            None
        } else {
            Some(true)
        }
    }
}

/// Runs the laws over all tuples, appending failures. Returns `true` if checking stopped
/// early because of fast-fail mode.
pub(crate) fn run<V: ?Sized>(view: &V, n: usize, laws: &[Law<V>], mode: CheckMode, out: &mut Vec<Failure>) -> bool {
    for law in laws {
        for t in tuples(n, law.arity) {
            if law.eval(view, &t) == Some(false) {
                out.push(Failure {
                    axiom: law.id.to_string(),
                    witness: t,
                });
                if mode == CheckMode::FastFail {
                    return true;
                }
            }
        }
    }
    false
}

/// Replays a witness: `true` iff some law with this id and arity is violated by it.
pub(crate) fn violates<V: ?Sized>(view: &V, laws: &[Law<V>], id: &str, witness: &[usize]) -> bool {
    laws.iter()
        .filter(|l| l.id == id && l.arity == witness.len())
        .any(|l| l.eval(view, witness) == Some(false))
}

/// Material implication on decided booleans.
#[inline]
pub(crate) fn implies(p: bool, q: impl FnOnce() -> Option<bool>) -> Option<bool> {
    if p {
        q()
    } else {
        Some(true)
    }
}
