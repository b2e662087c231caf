//! Normalized standard scores of length-k patterns and the set of patterns
//! that score below a threshold.

use crate::alphabet::Sym;
use crate::error::{Error, Result};
use crate::instance::PatternSet;
use crate::kmer::{kmer_counts, KmerIndex};

/// Frequency tables for patterns of length `k`, `k-1` and `k-2` of one string.
#[derive(Debug, Clone)]
pub struct ZScorer {
    k: usize,
    full: KmerIndex,
    side: KmerIndex,
    middle: KmerIndex,
}

impl ZScorer {
    pub fn new(w: &[Sym], k: usize) -> Result<Self> {
        if k <= 2 || k > w.len() {
            return Err(Error::BadK { k, n: w.len() });
        }
        Ok(ZScorer {
            k,
            full: kmer_counts(w, k),
            side: kmer_counts(w, k - 1),
            middle: kmer_counts(w, k - 2),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Expected frequency of `u` from its two `k-1` sides and its `k-2` middle.
    pub fn expected(&self, u: &[Sym]) -> f64 {
        let k = u.len();
        let mid = self.middle.count(&u[1..k - 1]);
        if mid == 0 {
            return 0.0;
        }
        let pre = self.side.count(&u[..k - 1]);
        let suf = self.side.count(&u[1..]);
        pre as f64 * suf as f64 / mid as f64
    }

    pub fn z(&self, u: &[Sym]) -> f64 {
        assert_eq!(u.len(), self.k, "pattern length must be k");
        let e = self.expected(u);
        (self.full.count(u) as f64 - e) / e.sqrt().max(1.0)
    }

    /// Distinct `k-1`-grams of the scored string.
    fn sides(&self) -> impl Iterator<Item = &[Sym]> {
        self.side.patterns()
    }
}

/// `z_W(U)` for a single pattern of length at least 3.
pub fn z_score(w: &[Sym], u: &[Sym]) -> f64 {
    ZScorer::new(w, u.len())
        .map(|s| s.z(u))
        .unwrap_or_else(|e| panic!("pattern length {} unusable: {e}", u.len()))
}

/// Patterns of `Σ^k` whose score on `W` is below `rho`.
#[derive(Debug, Clone, Default)]
pub struct ImplausibleSet {
    rho: f64,
    patterns: PatternSet,
}

impl ImplausibleSet {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn contains(&self, u: &[Sym]) -> bool {
        self.patterns.contains(u)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn patterns(&self) -> &PatternSet {
        &self.patterns
    }
}

/// All `U ∈ Σ^k` with `z_W(U) < rho`.
///
/// For `rho <= 0` a member needs a positive expectation, so both of its
/// `k-1` sides occur in `W`; it suffices to extend every `k-1`-gram of `W`
/// by every letter.
pub fn implausible_set(w: &[Sym], sigma: usize, k: usize, rho: f64) -> Result<ImplausibleSet> {
    if rho.is_nan() || rho > 0.0 {
        return Err(Error::InvalidRho(rho));
    }
    let scorer = ZScorer::new(w, k)?;
    let mut patterns = PatternSet::new();
    let mut u = Vec::with_capacity(k);
    for side in scorer.sides() {
        for a in 0..sigma as Sym {
            u.clear();
            u.extend_from_slice(side);
            u.push(a);
            if scorer.z(&u) < rho {
                patterns.insert(&u);
            }
        }
    }
    Ok(ImplausibleSet { rho, patterns })
}
