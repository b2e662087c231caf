//! Brute-force references for small instances. They rely only on the
//! instance model and the property checkers in [`crate::eval`], never on the
//! algorithms they are compared with.

use crate::alphabet::{Sym, SEP};
use crate::error::{Error, Result};
use crate::eval::{edit_distance, verify_all, Level};
use crate::instance::SanitizationInstance;
use crate::kmer::letter_windows;
use crate::mcsr::{MckInstance, Selection};
use crate::pfs::RankPair;

/// Limits on exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_sigma: usize,
    pub max_len: usize,
    pub max_candidates: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 10,
            max_sigma: 2,
            max_len: 24,
            max_candidates: 20_000_000,
        }
    }
}

const REQUIRED: [Level; 3] = [Level::C1, Level::P1, Level::P2];

/// Depth-first enumeration of strings over `Σ ∪ {#}` in length-lex order
/// within each length, pruning prefixes whose completed windows already
/// stray from the non-sensitive windows of `W`.
struct Search<'a> {
    inst: &'a SanitizationInstance,
    expected: Vec<&'a [Sym]>,
    budget: OracleBudget,
    visited: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a SanitizationInstance, budget: OracleBudget) -> Result<Self> {
        if inst.n() > budget.max_n || inst.sigma() > budget.max_sigma {
            return Err(Error::BudgetExceeded("instance too large"));
        }
        let expected = inst
            .nonsensitive_positions()
            .into_iter()
            .map(|i| inst.window(i))
            .collect();
        Ok(Search {
            inst,
            expected,
            budget,
            visited: 0,
        })
    }

    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget.max_candidates {
            Err(Error::BudgetExceeded("candidate limit"))
        } else {
            Ok(())
        }
    }

    /// The last window of `t`, if complete, is the next expected one.
    fn extends(&self, t: &[Sym]) -> bool {
        let k = self.inst.k();
        if t.len() < k || t[t.len() - k..].contains(&SEP) {
            return true;
        }
        let count = letter_windows(t, k).count();
        self.expected.get(count - 1) == Some(&&t[t.len() - k..])
    }

    fn symbols(&self) -> impl Iterator<Item = Sym> {
        (0..self.inst.sigma() as Sym).chain(std::iter::once(SEP))
    }
}

/// Shortest string satisfying C1, P1 and P2, with the first such string in
/// lexicographic order (letters before `#`).
pub fn oracle_min_tfs(inst: &SanitizationInstance, budget: OracleBudget) -> Result<(usize, Vec<Sym>)> {
    let mut s = Search::new(inst, budget)?;
    let windows = inst.n() - inst.k() + 1;
    let bound = windows.div_ceil(2) * inst.k() + windows / 2;
    let mut t = Vec::new();
    for len in 0..=bound.min(budget.max_len) {
        if let Some(found) = exact_len(&mut s, &mut t, len)? {
            return Ok((len, found));
        }
    }
    Err(Error::BudgetExceeded("no witness within the length limit"))
}

fn exact_len(s: &mut Search, t: &mut Vec<Sym>, len: usize) -> Result<Option<Vec<Sym>>> {
    s.tick()?;
    if t.len() == len {
        return Ok(verify_all(t, s.inst, &REQUIRED).is_ok().then(|| t.clone()));
    }
    for c in s.symbols().collect::<Vec<_>>() {
        t.push(c);
        if s.extends(t) {
            if let Some(found) = exact_len(s, t, len)? {
                return Ok(Some(found));
            }
        }
        t.pop();
    }
    Ok(None)
}

/// Smallest edit distance from `W` of a string satisfying C1, P1 and P2.
///
/// Starts from the distance of `N₁#N₂#…#N_m`; a string at distance `d` has
/// length at most `n + d`, and a prefix whose edit row minimum already
/// reaches the best distance is abandoned.
pub fn oracle_min_etfs(inst: &SanitizationInstance, budget: OracleBudget) -> Result<(usize, Vec<Sym>)> {
    let mut s = Search::new(inst, budget)?;
    let w = inst.w();
    let mut seed = Vec::new();
    for (i, win) in s.expected.iter().enumerate() {
        if i > 0 {
            seed.push(SEP);
        }
        seed.extend_from_slice(win);
    }
    debug_assert!(verify_all(&seed, inst, &REQUIRED).is_ok());
    let mut best = (edit_distance(w, &seed), seed);

    let row: Vec<usize> = (0..=w.len()).collect();
    let mut t = Vec::new();
    descend(&mut s, &mut t, &row, &mut best)?;
    Ok(best)
}

fn descend(s: &mut Search, t: &mut Vec<Sym>, row: &[usize], best: &mut (usize, Vec<Sym>)) -> Result<()> {
    s.tick()?;
    let w = s.inst.w();
    let d = row[w.len()];
    if d < best.0 && verify_all(t, s.inst, &REQUIRED).is_ok() {
        *best = (d, t.clone());
    }
    if t.len() + 1 > w.len() + best.0 {
        return Ok(());
    }
    for c in s.symbols().collect::<Vec<_>>() {
        t.push(c);
        if s.extends(t) {
            let mut next = Vec::with_capacity(row.len());
            next.push(row[0] + 1);
            for j in 1..row.len() {
                let v = (row[j - 1] + usize::from(w[j - 1] != c))
                    .min(row[j] + 1)
                    .min(next[j - 1] + 1);
                next.push(v);
            }
            if next.iter().min().copied().unwrap_or(0) < best.0 {
                descend(s, t, &next, best)?;
            }
        }
        t.pop();
    }
    Ok(())
}

/// Exhaustive product enumeration; ties go to smaller weight, then to the
/// first selection in lexicographic index order.
pub fn oracle_mck(inst: &MckInstance, budget: OracleBudget) -> Result<Selection> {
    let mut product: u64 = 1;
    for (i, c) in inst.classes.iter().enumerate() {
        if c.is_empty() {
            return Err(Error::Infeasible { separator: i });
        }
        product = product.saturating_mul(c.len() as u64);
    }
    if product > budget.max_candidates {
        return Err(Error::BudgetExceeded("too many selections"));
    }
    let mut picks = vec![0usize; inst.classes.len()];
    let mut best: Option<Selection> = None;
    loop {
        let (cost, weight) = inst.evaluate(&picks).expect("indices in range");
        if weight <= inst.theta && best.as_ref().is_none_or(|b| (cost, weight) < (b.cost, b.weight)) {
            best = Some(Selection {
                picks: picks.clone(),
                cost,
                weight,
            });
        }
        // odometer
        let mut i = picks.len();
        loop {
            if i == 0 {
                return best.ok_or(Error::OverBudget { theta: inst.theta });
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < inst.classes[i].len() {
                break;
            }
            picks[i] = 0;
        }
    }
}

/// Shortest arrangement of the blocks over all orders: adjacent blocks
/// merge (dropping `overlap` letters) when the left suffix rank equals the
/// right prefix rank, otherwise they are joined by one separator.
pub fn oracle_fo_ssm(pairs: &[RankPair], block_lens: &[usize], overlap: usize, max_blocks: usize) -> Result<usize> {
    if pairs.len() > max_blocks {
        return Err(Error::BudgetExceeded("too many blocks"));
    }
    if pairs.is_empty() {
        return Ok(0);
    }
    let total: usize = pairs.iter().map(|p| block_lens[p.block_id]).sum();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, &mut |perm| {
        let mut len = total;
        for pair in perm.windows(2) {
            if pairs[pair[0]].suffix_rank == pairs[pair[1]].prefix_rank {
                len -= overlap;
            } else {
                len += 1;
            }
        }
        best = best.min(len);
    });
    Ok(best)
}

fn permute(v: &mut Vec<usize>, at: usize, f: &mut dyn FnMut(&[usize])) {
    if at == v.len() {
        f(v);
        return;
    }
    for i in at..v.len() {
        v.swap(at, i);
        permute(v, at + 1, f);
        v.swap(at, i);
    }
}
