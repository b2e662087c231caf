//! Length-k window enumeration and frequency counting.

use std::collections::HashMap;

use crate::alphabet::{Sym, SEP};

/// Iterates over the `(position, window)` pairs of `t` whose window has
/// length `k` and contains no separator.
pub fn letter_windows(t: &[Sym], k: usize) -> impl Iterator<Item = (usize, &[Sym])> + '_ {
    // `clean` counts how many tokens ending at the current index are letters.
    let mut clean = 0usize;
    t.iter().enumerate().filter_map(move |(i, &s)| {
        if s == SEP {
            clean = 0;
            return None;
        }
        clean += 1;
        if k > 0 && clean >= k {
            let start = i + 1 - k;
            Some((start, &t[start..=i]))
        } else {
            None
        }
    })
}

/// Frequencies of the separator-free length-k windows of a string.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KmerIndex {
    k: usize,
    counts: HashMap<Vec<Sym>, usize>,
}

impl KmerIndex {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self, pattern: &[Sym]) -> usize {
        self.counts.get(pattern).copied().unwrap_or(0)
    }

    /// Number of distinct patterns.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of counted windows (sum over all patterns).
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Sym], usize)> {
        self.counts.iter().map(|(p, &c)| (p.as_slice(), c))
    }

    pub fn patterns(&self) -> impl Iterator<Item = &[Sym]> {
        self.counts.keys().map(Vec::as_slice)
    }
}

/// Counts every separator-free length-`k` window of `t`.
pub fn kmer_counts(t: &[Sym], k: usize) -> KmerIndex {
    let mut counts: HashMap<Vec<Sym>, usize> = HashMap::new();
    for (_, w) in letter_windows(t, k) {
        if let Some(c) = counts.get_mut(w) {
            *c += 1;
        } else {
            counts.insert(w.to_vec(), 1);
        }
    }
    KmerIndex { k, counts }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{tokenize, Alphabet, TokenMode};

    fn enc(s: &str) -> (Alphabet, Vec<Sym>) {
        let toks = tokenize(s, TokenMode::Char);
        let a = Alphabet::new(toks.iter().filter(|t| **t != "#")).unwrap();
        let v = a.encode(&toks).unwrap();
        (a, v)
    }

    #[test]
    fn overlapping_windows_are_counted() {
        let (a, t) = enc("aaaa");
        let idx = kmer_counts(&t, 2);
        assert_eq!(idx.len(), 1);
        assert_eq!(idx.count(&a.encode(&["a", "a"]).unwrap()), 3);
    }

    #[test]
    fn separator_windows_are_skipped() {
        let (a, t) = enc("ab#ab");
        let idx = kmer_counts(&t, 2);
        assert_eq!(idx.len(), 1);
        assert_eq!(idx.count(&a.encode(&["a", "b"]).unwrap()), 2);
    }

    #[test]
    fn counts_on_sanitized_example() {
        let (a, t) = enc("aabaa#aaacbcbbba#baabbacaab");
        let idx = kmer_counts(&t, 4);
        let pat = |s: &str| a.encode(&tokenize(s, TokenMode::Char)).unwrap();
        assert_eq!(idx.count(&pat("aaba")), 1);
        assert_eq!(idx.count(&pat("caab")), 1);
        assert_eq!(idx.count(&pat("baaa")), 0);
    }

    proptest::proptest! {
        #[test]
        fn matches_naive_scan(t in proptest::collection::vec(proptest::prop_oneof![0u32..3, proptest::strategy::Just(SEP)], 0..40), k in 1usize..5) {
            let idx = kmer_counts(&t, k);
            let mut windows = 0;
            for p in 0..t.len().saturating_sub(k - 1) {
                let w = &t[p..p + k];
                if !w.contains(&SEP) {
                    windows += 1;
                    let naive = (0..=t.len() - k).filter(|&q| &t[q..q + k] == w).count();
                    proptest::prop_assert_eq!(idx.count(w), naive);
                }
            }
            proptest::prop_assert_eq!(idx.total(), windows);
        }
    }
}
