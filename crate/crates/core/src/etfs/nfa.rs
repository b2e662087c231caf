//! ε-automaton for [`SanRegex`]. States are numbered so that every edge goes
//! forward except the loop edges of the gadget stars, which go back to the
//! star head.

use std::collections::VecDeque;

use crate::alphabet::{Sym, SEP};

use super::regex::{RegexSegment, SanRegex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Eps,
    Sym(Sym),
    /// Any letter of the alphabet.
    Any,
    Sep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub label: Label,
}

/// The separator gadgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gadget {
    /// `(Σ^{<k}#)*`
    Lead,
    /// `#(Σ^{<k}#)*`
    Inner,
    /// `(#Σ^{<k})*`
    Trail,
}

#[derive(Debug, Clone)]
pub struct Nfa {
    edges: Vec<Edge>,
    out: Vec<Vec<u32>>,
    incoming: Vec<Vec<u32>>,
    /// Position of each edge in its target's incoming list.
    slot: Vec<u8>,
    start: u32,
    accept: u32,
    sigma: usize,
}

struct Builder {
    edges: Vec<Edge>,
    states: u32,
    k: usize,
}

impl Builder {
    fn state(&mut self) -> u32 {
        self.states += 1;
        self.states - 1
    }

    fn edge(&mut self, from: u32, to: u32, label: Label) {
        self.edges.push(Edge { from, to, label });
    }

    /// `Σ^{<k}` from `at`; returns the end state.
    fn short_run(&mut self, mut at: u32) -> u32 {
        for _ in 0..self.k - 1 {
            let next = self.state();
            self.edge(at, next, Label::Any);
            self.edge(at, next, Label::Eps);
            at = next;
        }
        at
    }

    fn literal(&mut self, mut at: u32, s: &[Sym]) -> u32 {
        for &c in s {
            let next = self.state();
            self.edge(at, next, Label::Sym(c));
            at = next;
        }
        at
    }

    fn gadget(&mut self, at: u32, g: Gadget) -> u32 {
        let head = match g {
            Gadget::Inner => {
                let h = self.state();
                self.edge(at, h, Label::Sep);
                h
            }
            _ => at,
        };
        match g {
            Gadget::Lead | Gadget::Inner => {
                let end = self.short_run(head);
                self.edge(end, head, Label::Sep);
            }
            Gadget::Trail => {
                let first = self.state();
                self.edge(head, first, Label::Sep);
                let end = self.short_run(first);
                self.edge(end, head, Label::Eps);
            }
        }
        let exit = self.state();
        self.edge(head, exit, Label::Eps);
        exit
    }

    fn finish(self, start: u32, accept: u32, sigma: usize) -> Nfa {
        let n = self.states as usize;
        let mut out = vec![Vec::new(); n];
        let mut incoming: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut slot = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            out[e.from as usize].push(i as u32);
            let inc = &mut incoming[e.to as usize];
            slot.push(u8::try_from(inc.len()).expect("in-degree fits a byte"));
            inc.push(i as u32);
        }
        Nfa {
            edges: self.edges,
            out,
            incoming,
            slot,
            start,
            accept,
            sigma,
        }
    }
}

impl Nfa {
    pub fn from_regex(e: &SanRegex) -> Nfa {
        let mut b = Builder {
            edges: Vec::new(),
            states: 0,
            k: e.k,
        };
        let start = b.state();
        let mut at = b.gadget(start, Gadget::Lead);
        at = b.literal(at, &e.first);
        for seg in &e.segments {
            match seg {
                RegexSegment::MergeChoice { append, next } => {
                    let fork = at;
                    let via = b.gadget(fork, Gadget::Inner);
                    let via = b.literal(via, next);
                    let join = b.state();
                    b.edge(fork, join, Label::Sym(*append));
                    b.edge(via, join, Label::Eps);
                    at = join;
                }
                RegexSegment::Interleave(next) => {
                    at = b.gadget(at, Gadget::Inner);
                    at = b.literal(at, next);
                }
            }
        }
        let accept = b.gadget(at, Gadget::Trail);
        b.finish(start, accept, e.sigma)
    }

    /// `Σ^{<k}(#Σ^{<k})*`: every string without `k` consecutive letters.
    pub fn filler(sigma: usize, k: usize) -> Nfa {
        let mut b = Builder {
            edges: Vec::new(),
            states: 0,
            k,
        };
        let start = b.state();
        let at = b.short_run(start);
        let accept = b.gadget(at, Gadget::Trail);
        b.finish(start, accept, sigma)
    }

    /// A single gadget, for inspecting its language.
    pub fn gadget(g: Gadget, sigma: usize, k: usize) -> Nfa {
        let mut b = Builder {
            edges: Vec::new(),
            states: 0,
            k,
        };
        let start = b.state();
        let accept = b.gadget(start, g);
        b.finish(start, accept, sigma)
    }

    pub fn state_count(&self) -> usize {
        self.out.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn accept(&self) -> u32 {
        self.accept
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn edge(&self, id: u32) -> Edge {
        self.edges[id as usize]
    }

    pub fn out_edges(&self, s: u32) -> &[u32] {
        &self.out[s as usize]
    }

    pub fn in_edges(&self, s: u32) -> &[u32] {
        &self.incoming[s as usize]
    }

    /// Position of edge `id` in the incoming list of its target.
    pub fn in_slot(&self, id: u32) -> u8 {
        self.slot[id as usize]
    }

    pub fn max_in_degree(&self) -> usize {
        self.incoming.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn closure(&self, set: &mut [bool]) {
        let mut queue: VecDeque<u32> = (0..set.len() as u32).filter(|&s| set[s as usize]).collect();
        while let Some(s) = queue.pop_front() {
            for &e in self.out_edges(s) {
                let e = self.edge(e);
                if e.label == Label::Eps && !set[e.to as usize] {
                    set[e.to as usize] = true;
                    queue.push_back(e.to);
                }
            }
        }
    }

    /// Whether the automaton accepts `t`, by state-set simulation.
    pub fn accepts(&self, t: &[Sym]) -> bool {
        let mut cur = vec![false; self.state_count()];
        cur[self.start as usize] = true;
        self.closure(&mut cur);
        for &c in t {
            let mut next = vec![false; self.state_count()];
            for s in (0..cur.len()).filter(|&s| cur[s]) {
                for &e in self.out_edges(s as u32) {
                    let e = self.edge(e);
                    let ok = match e.label {
                        Label::Eps => false,
                        Label::Sym(a) => a == c,
                        Label::Any => c != SEP && (c as usize) < self.sigma,
                        Label::Sep => c == SEP,
                    };
                    if ok {
                        next[e.to as usize] = true;
                    }
                }
            }
            self.closure(&mut next);
            cur = next;
        }
        cur[self.accept as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Random accepted string: follow random edges until the accept state is
    /// reached and a coin says stop.
    fn sample(nfa: &Nfa, rng: &mut ChaCha8Rng) -> Vec<Sym> {
        let mut t = Vec::new();
        let mut s = nfa.start();
        for _ in 0..10_000 {
            if s == nfa.accept() && rng.gen_bool(0.3) {
                return t;
            }
            let outs = nfa.out_edges(s);
            if outs.is_empty() {
                return t;
            }
            let e = nfa.edge(outs[rng.gen_range(0..outs.len())]);
            match e.label {
                Label::Eps => {}
                Label::Sym(a) => t.push(a),
                Label::Any => t.push(rng.gen_range(0..nfa.sigma() as Sym)),
                Label::Sep => t.push(SEP),
            }
            s = e.to;
        }
        t
    }

    fn longest_letter_run(t: &[Sym]) -> usize {
        t.split(|&c| c == SEP).map(<[Sym]>::len).max().unwrap_or(0)
    }

    #[test]
    fn gadgets_never_spell_k_letters() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 2..6 {
            for g in [Gadget::Lead, Gadget::Inner, Gadget::Trail] {
                let nfa = Nfa::gadget(g, 3, k);
                for _ in 0..300 {
                    let t = sample(&nfa, &mut rng);
                    assert!(longest_letter_run(&t) < k, "{g:?} k={k} {t:?}");
                    assert!(nfa.accepts(&t));
                    match g {
                        Gadget::Inner => assert_eq!(t.first(), Some(&SEP)),
                        Gadget::Lead => assert!(t.is_empty() || t.last() == Some(&SEP)),
                        Gadget::Trail => assert!(t.is_empty() || t.first() == Some(&SEP)),
                    }
                }
            }
        }
    }

    #[test]
    fn gadget_membership() {
        let lead = Nfa::gadget(Gadget::Lead, 2, 3);
        assert!(lead.accepts(&[]));
        assert!(lead.accepts(&[0, 1, SEP, SEP, 1, SEP]));
        assert!(!lead.accepts(&[0, 1, 0, SEP]));
        assert!(!lead.accepts(&[0]));
        let inner = Nfa::gadget(Gadget::Inner, 2, 3);
        assert!(!inner.accepts(&[]));
        assert!(inner.accepts(&[SEP]));
        assert!(inner.accepts(&[SEP, 1, 1, SEP]));
        let trail = Nfa::gadget(Gadget::Trail, 2, 3);
        assert!(trail.accepts(&[SEP, 0, 0, SEP]));
        assert!(!trail.accepts(&[SEP, 0, 0, 0]));
    }

    #[test]
    fn back_edges_only_reach_star_heads() {
        let nfa = Nfa::filler(2, 4);
        for id in 0..nfa.edge_count() as u32 {
            let e = nfa.edge(id);
            if e.to <= e.from {
                // A star head has an ε exit edge.
                assert!(nfa.out_edges(e.to).iter().any(|&x| nfa.edge(x).label == Label::Eps));
            }
        }
        assert!(nfa.accepts(&[]));
        assert!(nfa.accepts(&[0, 0, 0, SEP, 1, 1, 1]));
        assert!(!nfa.accepts(&[0, 0, 0, 0]));
    }
}
