//! Backtracking over partially filled operation tables.
//!
//! Every law instance (a law part applied to one tuple) is evaluated against the partial
//! tables. An undecided instance waits on the first unknown cell it touched and is
//! re-evaluated when that cell gets a value.

use std::cell::Cell;

use rayon::prelude::*;

use crate::algebra::{ImpView, MeetView, PeaView};
use crate::hoop::HoopView;
use crate::laws::{Holds, Law};
use crate::table::{tuples, Table};

const UNKNOWN: u8 = u8::MAX;

/// How the three tables are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Reading {
    /// `t0 = ∧`, `t1 = ∼`, `t2 = ⌣∼`; the implications are derived
    Pea,
    /// `t0 = ∧`, `t1 = →`, `t2 = ⇝`
    Bck,
    /// `t0 = ⊙`, `t1 = →`, `t2 = ⇝`; the meet is fixed separately
    Hoop,
}

#[derive(Clone, Debug)]
pub(crate) struct Partial {
    reading: Reading,
    n: usize,
    top: usize,
    meet: Table,
    cells: [Vec<u8>; 3],
    blocked: Cell<usize>,
}

impl Partial {
    pub fn new(meet: Table, top: usize, reading: Reading) -> Self {
        let n = meet.size();
        let t0 = if reading != Reading::Hoop {
            meet.cells().to_vec()
        } else {
            vec![UNKNOWN; n * n]
        };
        Partial {
            reading,
            n,
            top,
            meet,
            cells: [t0, vec![UNKNOWN; n * n], vec![UNKNOWN; n * n]],
            blocked: Cell::new(usize::MAX),
        }
    }

    #[inline]
    fn get(&self, t: usize, a: usize, b: usize) -> Option<usize> {
        let i = a * self.n + b;
        let v = self.cells[t][i];
        if v == UNKNOWN {
            self.blocked.set(t * self.n * self.n + i);
            None
        } else {
            Some(v as usize)
        }
    }

    pub fn set(&mut self, t: usize, a: usize, b: usize, v: usize) {
        self.cells[t][a * self.n + b] = v as u8;
    }

    fn assign(&mut self, cell: usize, v: u8) {
        let nn = self.n * self.n;
        self.cells[cell / nn][cell % nn] = v;
    }

    fn is_known(&self, cell: usize) -> bool {
        let nn = self.n * self.n;
        self.cells[cell / nn][cell % nn] != UNKNOWN
    }

    pub fn table(&self, t: usize) -> Table {
        Table::from_cells(self.n, self.cells[t].clone())
    }
}

impl MeetView for Partial {
    fn size(&self) -> usize {
        self.n
    }
    fn top(&self) -> usize {
        self.top
    }
    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        Some(self.meet.get(a, b))
    }
}

impl ImpView for Partial {
    fn imp(&self, a: usize, b: usize) -> Option<usize> {
        match self.reading {
            Reading::Pea => self.get(1, self.meet.get(a, b), a),
            _ => self.get(1, a, b),
        }
    }
    fn simp(&self, a: usize, b: usize) -> Option<usize> {
        match self.reading {
            Reading::Pea => self.get(2, a, self.meet.get(a, b)),
            _ => self.get(2, a, b),
        }
    }
}

impl PeaView for Partial {
    fn sim(&self, a: usize, b: usize) -> Option<usize> {
        self.get(1, a, b)
    }
    fn bsim(&self, a: usize, b: usize) -> Option<usize> {
        self.get(2, a, b)
    }
}

impl HoopView for Partial {
    fn prod(&self, a: usize, b: usize) -> Option<usize> {
        self.get(0, a, b)
    }
    fn imp(&self, a: usize, b: usize) -> Option<usize> {
        self.get(1, a, b)
    }
    fn simp(&self, a: usize, b: usize) -> Option<usize> {
        self.get(2, a, b)
    }
}

/// One law part applied to one tuple.
type Check = Box<dyn Fn(&Partial) -> Option<bool> + Send + Sync>;

pub(crate) struct Constraint {
    check: Check,
}

impl Constraint {
    fn eval(&self, p: &Partial) -> Option<bool> {
        (self.check)(p)
    }
}

fn instances<V: ?Sized + 'static>(
    laws: &'static [Law<V>],
    n: usize,
    call: fn(Holds<V>, &Partial, &[usize]) -> Option<bool>,
    out: &mut Vec<Constraint>,
) {
    for law in laws {
        for part in law.parts {
            let holds = part.holds;
            for t in tuples(n, law.arity) {
                out.push(Constraint {
                    check: Box::new(move |p| call(holds, p, &t)),
                });
            }
        }
    }
}

pub(crate) fn meet_constraints(laws: &'static [Law<dyn MeetView>], n: usize, out: &mut Vec<Constraint>) {
    instances(laws, n, |h, p, t| h(p, t), out);
}

pub(crate) fn pea_constraints(laws: &'static [Law<dyn PeaView>], n: usize, out: &mut Vec<Constraint>) {
    instances(laws, n, |h, p, t| h(p, t), out);
}

pub(crate) fn bck_constraints(laws: &'static [Law<dyn ImpView>], n: usize, out: &mut Vec<Constraint>) {
    instances(laws, n, |h, p, t| h(p, t), out);
}

pub(crate) fn hoop_constraints(laws: &'static [Law<dyn HoopView>], n: usize, out: &mut Vec<Constraint>) {
    instances(laws, n, |h, p, t| h(p, t), out);
}

#[derive(Clone)]
struct State {
    partial: Partial,
    watch: Vec<Vec<u32>>,
    depth: usize,
}

/// All completions of `start` satisfying every constraint. Cells are filled in the
/// order given; cells already known are skipped.
pub(crate) fn solve(start: Partial, constraints: &[Constraint], order: &[usize]) -> Vec<Partial> {
    let n = start.n;
    let order: Vec<usize> = order.iter().copied().filter(|&c| !start.is_known(c)).collect();
    let mut state = State {
        partial: start,
        watch: vec![Vec::new(); 3 * n * n],
        depth: 0,
    };
    for (i, c) in constraints.iter().enumerate() {
        match c.eval(&state.partial) {
            Some(true) => {}
            Some(false) => return Vec::new(),
            None => state.watch[state.partial.blocked.get()].push(i as u32),
        }
    }
    // split the first levels into independent tasks
    let mut tasks = vec![state];
    let mut split = 0;
    while tasks.len() < 256 && split < order.len().min(4) {
        let mut next = Vec::new();
        for s in tasks {
            expand(&s, constraints, &order, n, &mut next);
        }
        tasks = next;
        split += 1;
    }
    tasks
        .into_par_iter()
        .flat_map_iter(|mut s| {
            let mut out = Vec::new();
            let mut trail = Vec::new();
            descend(&mut s, constraints, &order, n, &mut trail, &mut out);
            out
        })
        .collect()
}

fn propagate(s: &mut State, constraints: &[Constraint], cell: usize, trail: &mut Vec<u32>) -> bool {
    let mut k = 0;
    while k < s.watch[cell].len() {
        let ci = s.watch[cell][k] as usize;
        match constraints[ci].eval(&s.partial) {
            Some(true) => {}
            Some(false) => return false,
            None => {
                let b = s.partial.blocked.get();
                s.watch[b].push(ci as u32);
                trail.push(b as u32);
            }
        }
        k += 1;
    }
    true
}

fn expand(s: &State, constraints: &[Constraint], order: &[usize], n: usize, out: &mut Vec<State>) {
    if s.depth == order.len() {
        out.push(s.clone());
        return;
    }
    let cell = order[s.depth];
    for v in 0..n as u8 {
        let mut c = s.clone();
        c.partial.assign(cell, v);
        let mut trail = Vec::new();
        if propagate(&mut c, constraints, cell, &mut trail) {
            c.depth += 1;
            out.push(c);
        }
    }
}

fn descend(
    s: &mut State,
    constraints: &[Constraint],
    order: &[usize],
    n: usize,
    trail: &mut Vec<u32>,
    out: &mut Vec<Partial>,
) {
    if s.depth == order.len() {
        out.push(s.partial.clone());
        return;
    }
    let cell = order[s.depth];
    for v in 0..n as u8 {
        s.partial.assign(cell, v);
        let mark = trail.len();
        if propagate(s, constraints, cell, trail) {
            s.depth += 1;
            descend(s, constraints, order, n, trail, out);
            s.depth -= 1;
        }
        while trail.len() > mark {
            let b = trail.pop().unwrap() as usize;
            s.watch[b].pop();
        }
    }
    s.partial.assign(cell, UNKNOWN);
}
