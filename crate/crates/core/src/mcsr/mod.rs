//! Separator replacement: turn every `#` of a sanitized string into a letter
//! or delete it, keeping sensitive (and optionally implausible) patterns out
//! of the result while spending little on candidate ghost patterns.
//!
//! Each separator becomes one class of a multiple-choice knapsack whose
//! elements are the possible letters plus deletion. An element's cost is the
//! ghost cost of the candidate ghosts it would create, assuming the worst
//! case that all of them become ghosts. After solving, the choices are
//! committed and the windows around them re-checked: separators closer than
//! `2k-1` tokens interact, and an interaction that creates a forbidden
//! pattern bans the offending choice before solving again.

mod mck;
mod zscore;

use std::collections::{HashMap, HashSet};
use std::fmt;

use log::debug;

pub use mck::{solve_mck, MckElement, MckInstance, Selection};
pub use zscore::{implausible_set, z_score, ImplausibleSet, ZScorer};

use crate::alphabet::{Sym, SEP};
use crate::error::{Error, Result};
use crate::instance::{PatternSet, SanitizationInstance};
use crate::kmer::{kmer_counts, letter_windows};

/// Replacement for one separator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Choice {
    Letter(Sym),
    Delete,
}

impl fmt::Display for Choice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Choice::Letter(a) => write!(f, "{a}"),
            Choice::Delete => f.write_str("ε"),
        }
    }
}

/// Costs of ghost occurrences and weights of replacements.
///
/// `ghost` receives the start of the window in the coordinates of the input
/// string. With `k = 1` it degenerates to a cost per replaced position and letter.
pub trait CostModel {
    fn ghost(&self, position: usize, pattern: &[Sym]) -> u64;
    /// `separator` is 0-based.
    fn sub(&self, separator: usize, choice: Choice) -> u64;
}

/// Unit ghost cost and unit replacement weight.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct UniformCost;

impl CostModel for UniformCost {
    fn ghost(&self, _position: usize, _pattern: &[Sym]) -> u64 {
        1
    }

    fn sub(&self, _separator: usize, _choice: Choice) -> u64 {
        1
    }
}

/// Per-pattern ghost costs and per-letter weights with defaults.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCost {
    pub ghost_default: u64,
    pub ghost: HashMap<Vec<Sym>, u64>,
    pub sub_default: u64,
    pub sub: HashMap<Sym, u64>,
    pub delete: u64,
}

impl Default for TableCost {
    fn default() -> Self {
        TableCost {
            ghost_default: 1,
            ghost: HashMap::new(),
            sub_default: 1,
            sub: HashMap::new(),
            delete: 1,
        }
    }
}

impl CostModel for TableCost {
    fn ghost(&self, _position: usize, pattern: &[Sym]) -> u64 {
        self.ghost.get(pattern).copied().unwrap_or(self.ghost_default)
    }

    fn sub(&self, _separator: usize, choice: Choice) -> u64 {
        match choice {
            Choice::Letter(a) => self.sub.get(&a).copied().unwrap_or(self.sub_default),
            Choice::Delete => self.delete,
        }
    }
}

/// Weight capacity: the number of separators, or a fixed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Theta {
    #[default]
    Auto,
    Fixed(u64),
}

impl Theta {
    pub fn resolve(self, separators: usize) -> u64 {
        match self {
            Theta::Auto => separators as u64,
            Theta::Fixed(t) => t,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McsrParams {
    pub tau: usize,
    pub theta: Theta,
}

impl Default for McsrParams {
    fn default() -> Self {
        McsrParams {
            tau: 1,
            theta: Theta::Auto,
        }
    }
}

pub fn separator_positions(y: &[Sym]) -> Vec<usize> {
    y.iter()
        .enumerate()
        .filter(|(_, &s)| s == SEP)
        .map(|(i, _)| i)
        .collect()
}

/// Left and right contexts of the separator at `pos`: up to `k-1` tokens on
/// each side, stopping at a string end or another separator.
fn flanks(y: &[Sym], pos: usize, k: usize) -> (usize, usize) {
    let mut lo = pos;
    while lo > 0 && pos - lo < k - 1 && y[lo - 1] != SEP {
        lo -= 1;
    }
    let mut hi = pos + 1;
    while hi < y.len() && hi - pos - 1 < k - 1 && y[hi] != SEP {
        hi += 1;
    }
    (lo, hi)
}

/// The string around separator `sep` (0-based) with the separator replaced by `choice`.
pub fn context_string(y: &[Sym], sep: usize, choice: Choice, k: usize) -> Vec<Sym> {
    let pos = *separator_positions(y)
        .get(sep)
        .unwrap_or_else(|| panic!("separator index {sep} out of range"));
    context_at(y, pos, choice, k).1
}

/// Context plus its start position in `y`.
fn context_at(y: &[Sym], pos: usize, choice: Choice, k: usize) -> (usize, Vec<Sym>) {
    let (lo, hi) = flanks(y, pos, k);
    let mut s = Vec::with_capacity(hi - lo);
    s.extend_from_slice(&y[lo..pos]);
    if let Choice::Letter(a) = choice {
        s.push(a);
    }
    s.extend_from_slice(&y[pos + 1..hi]);
    (lo, s)
}

fn choices(sigma: usize) -> impl Iterator<Item = Choice> {
    (0..sigma as Sym)
        .map(Choice::Letter)
        .chain(std::iter::once(Choice::Delete))
}

/// Patterns that could cross the frequency threshold once separators are replaced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GhostCandidateSet {
    /// pattern -> (frequency in Y, largest attainable frequency in Z)
    entries: HashMap<Vec<Sym>, (usize, usize)>,
}

impl GhostCandidateSet {
    pub fn contains(&self, u: &[Sym]) -> bool {
        self.entries.contains_key(u)
    }

    pub fn get(&self, u: &[Sym]) -> Option<(usize, usize)> {
        self.entries.get(u).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Sym], usize, usize)> {
        self.entries.iter().map(|(u, &(f, m))| (u.as_slice(), f, m))
    }
}

/// Candidate ghosts of `y`: frequency below `tau` in `y` but at least `tau`
/// once every separator takes its individually best replacement for that pattern.
pub fn candidate_ghosts(y: &[Sym], k: usize, tau: usize, sigma: usize) -> GhostCandidateSet {
    let freq = kmer_counts(y, k);
    let mut gain: HashMap<Vec<Sym>, usize> = HashMap::new();
    for pos in separator_positions(y) {
        let mut best: HashMap<&[Sym], usize> = HashMap::new();
        let contexts: Vec<Vec<Sym>> = choices(sigma).map(|c| context_at(y, pos, c, k).1).collect();
        for ctx in &contexts {
            let mut here: HashMap<&[Sym], usize> = HashMap::new();
            for (_, u) in letter_windows(ctx, k) {
                *here.entry(u).or_default() += 1;
            }
            for (u, c) in here {
                let b = best.entry(u).or_default();
                *b = (*b).max(c);
            }
        }
        for (u, c) in best {
            *gain.entry(u.to_vec()).or_default() += c;
        }
    }
    let entries = gain
        .into_iter()
        .filter_map(|(u, g)| {
            let f = freq.count(&u);
            (f < tau && f + g >= tau).then_some((u, (f, f + g)))
        })
        .collect();
    GhostCandidateSet { entries }
}

/// Builds the knapsack: one class per separator, one element per letter
/// plus deletion, forbidden elements left out.
#[allow(clippy::too_many_arguments)]
pub fn build_mck(
    y: &[Sym],
    k: usize,
    sigma: usize,
    cands: &GhostCandidateSet,
    cm: &dyn CostModel,
    sensitive: &PatternSet,
    implausible: Option<&ImplausibleSet>,
    theta: u64,
) -> Result<MckInstance> {
    let mut classes = Vec::new();
    for (i, pos) in separator_positions(y).into_iter().enumerate() {
        let mut class = Vec::new();
        for choice in choices(sigma) {
            let (lo, ctx) = context_at(y, pos, choice, k);
            let mut cost = 0;
            let mut forbidden = false;
            for (off, u) in letter_windows(&ctx, k) {
                if sensitive.contains(u) || implausible.is_some_and(|s| s.contains(u)) {
                    forbidden = true;
                    break;
                }
                if cands.contains(u) {
                    cost += cm.ghost(lo + off, u);
                }
            }
            if !forbidden {
                class.push(MckElement {
                    choice,
                    cost,
                    weight: cm.sub(i, choice),
                });
            }
        }
        if class.is_empty() {
            return Err(Error::Infeasible { separator: i });
        }
        classes.push(class);
    }
    Ok(MckInstance::new(classes, theta))
}

/// Where a replacement landed in `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Site {
    pub separator: usize,
    /// Position of the letter, or of the first token after a deletion.
    pub z_pos: usize,
    pub choice: Choice,
}

impl Site {
    /// Window starts in `Z` that contain this site's letter or junction.
    fn window_starts(&self, k: usize, z_len: usize) -> std::ops::Range<usize> {
        let edge = self.choice == Choice::Delete && (self.z_pos == 0 || self.z_pos >= z_len);
        if z_len < k || edge {
            return 0..0;
        }
        let last = match self.choice {
            Choice::Letter(_) => self.z_pos,
            // A window covers the junction if it holds both neighbours.
            Choice::Delete => self.z_pos.saturating_sub(1),
        };
        let first = (self.z_pos + 1).saturating_sub(k);
        first..(last + 1).min(z_len - k + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McsrOutcome {
    pub z: Vec<Sym>,
    pub choices: Vec<Choice>,
    pub estimated_cost: u64,
    pub total_weight: u64,
    pub sites: Vec<Site>,
}

impl McsrOutcome {
    /// Sorted distinct starts of windows of `Z` spanning a replacement site.
    pub fn site_windows(&self, k: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .sites
            .iter()
            .flat_map(|s| s.window_starts(k, self.z.len()))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

fn commit(y: &[Sym], picks: &[Choice]) -> (Vec<Sym>, Vec<Site>) {
    let mut z = Vec::with_capacity(y.len());
    let mut sites = Vec::with_capacity(picks.len());
    let mut sep = 0;
    for &s in y {
        if s != SEP {
            z.push(s);
            continue;
        }
        let choice = picks[sep];
        sites.push(Site {
            separator: sep,
            z_pos: z.len(),
            choice,
        });
        if let Choice::Letter(a) = choice {
            z.push(a);
        }
        sep += 1;
    }
    (z, sites)
}

/// Replaces every separator of `y`. Fails when some separator has no
/// admissible replacement or no selection fits the capacity.
pub fn mcsr_sanitize(
    y: &[Sym],
    inst: &SanitizationInstance,
    cm: &dyn CostModel,
    params: McsrParams,
    implausible: Option<&ImplausibleSet>,
) -> Result<McsrOutcome> {
    if params.tau == 0 {
        return Err(Error::InvalidTau);
    }
    let k = inst.k();
    let sigma = inst.sigma();
    let sensitive = inst.sensitive_patterns();
    let seps = separator_positions(y);
    let theta = params.theta.resolve(seps.len());

    let cands = candidate_ghosts(y, k, params.tau, sigma);
    debug!("{} separators, {} candidate ghosts", seps.len(), cands.len());
    let full = build_mck(y, k, sigma, &cands, cm, sensitive, implausible, theta)?;
    let mut banned: Vec<HashSet<Choice>> = vec![HashSet::new(); seps.len()];

    loop {
        let mut classes = Vec::with_capacity(full.classes.len());
        for (i, class) in full.classes.iter().enumerate() {
            let kept: Vec<MckElement> = class
                .iter()
                .filter(|e| !banned[i].contains(&e.choice))
                .copied()
                .collect();
            if kept.is_empty() {
                return Err(Error::Infeasible { separator: i });
            }
            classes.push(kept);
        }
        let mck = MckInstance::new(classes, theta);
        let sel = solve_mck(&mck)?;
        let picks: Vec<Choice> = sel.picks.iter().zip(&mck.classes).map(|(&j, c)| c[j].choice).collect();
        let (z, sites) = commit(y, &picks);

        // Windows touching a site, mapped to the rightmost site they touch.
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for s in &sites {
            for start in s.window_starts(k, z.len()) {
                owner.insert(start, s.separator);
            }
        }
        let mut newly = 0;
        let mut starts: Vec<usize> = owner.keys().copied().collect();
        starts.sort_unstable();
        for start in starts {
            let u = &z[start..start + k];
            if sensitive.contains(u) || implausible.is_some_and(|s| s.contains(u)) {
                let sep = owner[&start];
                if banned[sep].insert(picks[sep]) {
                    newly += 1;
                }
            }
        }
        if newly == 0 {
            return Ok(McsrOutcome {
                z,
                choices: picks,
                estimated_cost: sel.cost,
                total_weight: sel.weight,
                sites,
            });
        }
        debug!("re-solving after banning {newly} interacting choices");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::contains_sensitive;

    fn example() -> (SanitizationInstance, Vec<Sym>) {
        let inst = SanitizationInstance::from_text("aabaaacbcbbbaabbacaab", 4, &["baaa", "bbaa"]).unwrap();
        let y = inst.encode_text("aaacbcbbba#aabaabbacaab").unwrap();
        (inst, y)
    }

    #[test]
    fn context_slicing() {
        let (inst, y) = example();
        let c = inst.alphabet().code("c").unwrap();
        assert_eq!(inst.render(&context_string(&y, 0, Choice::Letter(c), 4)), "bbacaab");
        assert_eq!(inst.render(&context_string(&y, 0, Choice::Delete, 4)), "bbaaab");

        let y = inst.encode_text("aab#aaab#ab").unwrap();
        assert_eq!(inst.render(&context_string(&y, 0, Choice::Letter(c), 4)), "aabcaaa");
        assert_eq!(inst.render(&context_string(&y, 1, Choice::Letter(c), 4)), "aabcab");
        let y = inst.encode_text("ab#aa#ba").unwrap();
        assert_eq!(inst.render(&context_string(&y, 0, Choice::Delete, 4)), "abaa");
    }

    #[test]
    fn ghost_candidates_by_hand() {
        let y = vec![0, 0, SEP, 0, 0];
        assert!(candidate_ghosts(&y, 2, 2, 1).is_empty());
        let c = candidate_ghosts(&y, 2, 4, 1);
        assert_eq!(c.get(&[0, 0]), Some((2, 4)));
        assert!(candidate_ghosts(&[0, 1, 0], 2, 3, 2).is_empty());

        // With τ = 1 every creatable pattern absent from Y is a candidate:
        // the contexts are 001, 011 and 01, and only 01 is new.
        let c = candidate_ghosts(&[0, 0, SEP, 1, 1], 2, 1, 2);
        let got: Vec<&[Sym]> = c.iter().map(|(u, _, _)| u).collect();
        assert_eq!(got, vec![&[0, 1][..]]);
    }

    #[test]
    fn letter_reinstating_sensitive_pattern_is_dropped() {
        let (inst, y) = example();
        let cands = candidate_ghosts(&y, 4, 1, inst.sigma());
        let mck = build_mck(
            &y,
            4,
            inst.sigma(),
            &cands,
            &UniformCost,
            inst.sensitive_patterns(),
            None,
            1,
        )
        .unwrap();
        let a = inst.alphabet().code("a").unwrap();
        let c = inst.alphabet().code("c").unwrap();
        let class: Vec<Choice> = mck.classes[0].iter().map(|e| e.choice).collect();
        assert!(!class.contains(&Choice::Letter(a)));
        assert!(class.contains(&Choice::Letter(c)));
    }

    #[test]
    fn empty_candidates_cost_nothing() {
        let (inst, y) = example();
        let mck = build_mck(
            &y,
            4,
            inst.sigma(),
            &GhostCandidateSet::default(),
            &UniformCost,
            inst.sensitive_patterns(),
            None,
            1,
        )
        .unwrap();
        assert!(mck.classes.iter().flatten().all(|e| e.cost == 0));
    }

    #[test]
    fn example_replacement() {
        let (inst, y) = example();
        let out = mcsr_sanitize(&y, &inst, &UniformCost, McsrParams::default(), None).unwrap();
        assert!(!out.z.contains(&SEP));
        assert!(!contains_sensitive(&out.z, &inst));
        assert!(out.total_weight <= 1);
        assert_eq!(out.sites.len(), 1);

        // The known replacement is admissible and no better than ours.
        let c = inst.alphabet().code("c").unwrap();
        let cands = candidate_ghosts(&y, 4, 1, inst.sigma());
        let mck = build_mck(
            &y,
            4,
            inst.sigma(),
            &cands,
            &UniformCost,
            inst.sensitive_patterns(),
            None,
            1,
        )
        .unwrap();
        let known = mck.classes[0].iter().find(|e| e.choice == Choice::Letter(c)).unwrap();
        assert!(out.estimated_cost <= known.cost);
        let z = commit(&y, &[Choice::Letter(c)]).0;
        assert_eq!(inst.render(&z), "aaacbcbbbacaabaabbacaab");
        assert!(!contains_sensitive(&z, &inst));
    }

    #[test]
    fn no_separator_is_identity() {
        let (inst, _) = example();
        let y = inst.w().to_vec();
        let out = mcsr_sanitize(&y, &inst, &UniformCost, McsrParams::default(), None).unwrap();
        assert_eq!(out.z, y);
        assert!(out.choices.is_empty());
    }

    #[test]
    fn every_choice_forbidden_is_infeasible() {
        // Over {a}: the only letter and the deletion both recreate `aaa`.
        let inst = SanitizationInstance::from_text("aaaa", 3, &["aaa"]).unwrap();
        let y = vec![0, 0, SEP, 0, 0];
        assert_eq!(
            mcsr_sanitize(&y, &inst, &UniformCost, McsrParams::default(), None),
            Err(Error::Infeasible { separator: 0 })
        );
    }

    #[test]
    fn interacting_separators_are_revalidated() {
        // Two separators one letter apart: each alone may take `b`, together
        // they would spell the sensitive `bab`.
        let inst = SanitizationInstance::from_text("aaabababaaacc", 3, &["bab", "aba"]).unwrap();
        let y = inst.encode_text("aa#a#aac").unwrap();
        let out = mcsr_sanitize(&y, &inst, &UniformCost, McsrParams::default(), None).unwrap();
        assert!(!contains_sensitive(&out.z, &inst));
        assert!(!out.z.contains(&SEP));
    }

    #[test]
    fn site_windows_cover_replacements() {
        let y = vec![0, 1, SEP, 1, 0, SEP, 0];
        let (z, sites) = commit(&y, &[Choice::Letter(2), Choice::Delete]);
        assert_eq!(z, vec![0, 1, 2, 1, 0, 0]);
        let out = McsrOutcome {
            z,
            choices: vec![],
            estimated_cost: 0,
            total_weight: 0,
            sites,
        };
        // letter at 2 -> starts 0..=2; junction between 4 and 5 -> starts 3..=4
        assert_eq!(out.site_windows(3), vec![0, 1, 2, 3]);
        assert_eq!(out.site_windows(2), vec![1, 2, 4]);
    }

    #[test]
    fn table_costs_fall_back_to_defaults() {
        let mut t = TableCost::default();
        t.sub.insert(2, 7);
        t.delete = 9;
        t.ghost.insert(vec![0, 1], 4);
        assert_eq!(t.sub(0, Choice::Letter(2)), 7);
        assert_eq!(t.sub(0, Choice::Letter(1)), 1);
        assert_eq!(t.sub(0, Choice::Delete), 9);
        assert_eq!(t.ghost(0, &[0, 1]), 4);
        assert_eq!(t.ghost(0, &[1, 1]), 1);
    }
}
