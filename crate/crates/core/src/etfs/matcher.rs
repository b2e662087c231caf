//! Edit-distance alignment of a string against an automaton.
//!
//! `D[j][s]` is the cheapest way to read `W[..j]` and generate some string
//! while moving from the start state to `s`. Column `j+1` is seeded from
//! column `j` by deleting `W[j]` or by taking a consuming edge; then edges
//! that consume nothing (ε, or an inserted token) are relaxed in two sweeps
//! in state order. Every cycle generates a separator, so an optimal path
//! within a column never completes a cycle and uses at most one loop edge,
//! which the second sweep accounts for.
//!
//! Costs are compared as `(distance, separators)` packed into one integer.

use crate::alphabet::{Sym, SEP};

use super::nfa::{Label, Nfa};

const SEP_UNIT: u64 = 1;
const EDIT_UNIT: u64 = 1 << 32;
const INF: u64 = u64::MAX;

const KIND_START: u8 = 0;
const KIND_DELETE: u8 = 1;
const KIND_CONSUME: u8 = 2;
const KIND_INSERT: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchResult {
    pub t: Vec<Sym>,
    pub distance: usize,
    /// Number of separators in `t`.
    pub separators: usize,
    pub states: usize,
    pub cells: usize,
}

/// Cost of taking edge `label` while consuming `c`.
fn consume_cost(label: Label, c: Sym) -> Option<u64> {
    match label {
        Label::Eps => None,
        Label::Sym(a) => Some(if a == c { 0 } else { EDIT_UNIT }),
        Label::Any => Some(0),
        Label::Sep => Some(EDIT_UNIT + SEP_UNIT),
    }
}

/// Cost of taking edge `label` without consuming.
fn insert_cost(label: Label) -> u64 {
    match label {
        Label::Eps => 0,
        Label::Sym(_) | Label::Any => EDIT_UNIT,
        Label::Sep => EDIT_UNIT + SEP_UNIT,
    }
}

fn add(a: u64, b: u64) -> u64 {
    if a == INF {
        INF
    } else {
        a + b
    }
}

/// Closest string accepted by `nfa` to `w`, with its distance.
pub fn match_nfa(w: &[Sym], nfa: &Nfa) -> MatchResult {
    let states = nfa.state_count();
    assert!(nfa.max_in_degree() < 64, "in-degree exceeds the parent encoding");
    let n = w.len();
    let mut parent = vec![0u8; (n + 1) * states];
    let mut cur = vec![INF; states];
    cur[nfa.start() as usize] = 0;
    parent[nfa.start() as usize] = KIND_START << 6;
    relax_column(nfa, &mut cur, &mut parent[..states]);

    let mut next = vec![INF; states];
    for j in 0..n {
        let c = w[j];
        next.fill(INF);
        let col = &mut parent[(j + 1) * states..(j + 2) * states];
        for s in 0..states {
            let base = cur[s];
            if base == INF {
                continue;
            }
            let del = base + EDIT_UNIT;
            if del < next[s] {
                next[s] = del;
                col[s] = KIND_DELETE << 6;
            }
        }
        for t in 0..states as u32 {
            for (idx, &e) in nfa.in_edges(t).iter().enumerate() {
                let e = nfa.edge(e);
                let base = cur[e.from as usize];
                if base == INF {
                    continue;
                }
                if let Some(cost) = consume_cost(e.label, c) {
                    let v = base + cost;
                    if v < next[t as usize] {
                        next[t as usize] = v;
                        col[t as usize] = (KIND_CONSUME << 6) | idx as u8;
                    }
                }
            }
        }
        relax_column(nfa, &mut next, col);
        std::mem::swap(&mut cur, &mut next);
    }

    let best = cur[nfa.accept() as usize];
    assert_ne!(best, INF, "the automaton accepts some string");
    let t = trace(w, nfa, &parent);
    MatchResult {
        separators: (best & (EDIT_UNIT - 1)) as usize,
        distance: (best >> 32) as usize,
        t,
        states,
        cells: (n + 1) * states,
    }
}

fn relax_column(nfa: &Nfa, d: &mut [u64], col: &mut [u8]) {
    for _ in 0..2 {
        for s in 0..d.len() as u32 {
            let base = d[s as usize];
            if base == INF {
                continue;
            }
            for &e in nfa.out_edges(s) {
                let edge = nfa.edge(e);
                let v = add(base, insert_cost(edge.label));
                let to = edge.to as usize;
                if v < d[to] {
                    d[to] = v;
                    col[to] = (KIND_INSERT << 6) | nfa.in_slot(e);
                }
            }
        }
    }
}

fn trace(w: &[Sym], nfa: &Nfa, parent: &[u8]) -> Vec<Sym> {
    let states = nfa.state_count();
    let mut out = Vec::new();
    let mut j = w.len();
    let mut s = nfa.accept();
    loop {
        let p = parent[j * states + s as usize];
        let kind = p >> 6;
        let idx = (p & 63) as usize;
        match kind {
            KIND_START => {
                debug_assert!(j == 0 && s == nfa.start());
                break;
            }
            KIND_DELETE => j -= 1,
            KIND_CONSUME => {
                let e = nfa.edge(nfa.in_edges(s)[idx]);
                out.push(match e.label {
                    Label::Sym(a) => a,
                    Label::Any => w[j - 1],
                    Label::Sep => SEP,
                    Label::Eps => unreachable!("ε edges consume nothing"),
                });
                j -= 1;
                s = e.from;
            }
            _ => {
                let e = nfa.edge(nfa.in_edges(s)[idx]);
                match e.label {
                    Label::Sym(a) => out.push(a),
                    Label::Any => out.push(0),
                    Label::Sep => out.push(SEP),
                    Label::Eps => {}
                }
                s = e.from;
            }
        }
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etfs::nfa::Gadget;

    #[test]
    fn filler_breaks_long_runs() {
        let nfa = Nfa::filler(2, 4);
        let w = [0, 0, 0, 0, 0, 0, 1];
        let m = match_nfa(&w, &nfa);
        assert_eq!(m.distance, 1);
        assert_eq!(m.t, vec![0, 0, 0, SEP, 0, 0, 1]);
        assert!(nfa.accepts(&m.t));
    }

    #[test]
    fn empty_input_matches_shortest_string() {
        let nfa = Nfa::gadget(Gadget::Inner, 2, 3);
        let m = match_nfa(&[], &nfa);
        assert_eq!((m.distance, m.t.as_slice()), (1, &[SEP][..]));
        assert_eq!(m.separators, 1);
    }
}
