//! The sanitization instance: the string, the pattern length, and the closed
//! set of sensitive occurrences.

use std::collections::HashSet;

use log::warn;

use crate::alphabet::{tokenize, Alphabet, Sym, TokenMode, SEP};
use crate::error::{Error, Result};
use crate::kmer::letter_windows;

/// Set of length-k patterns with slice lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternSet {
    patterns: HashSet<Vec<Sym>>,
}

impl PatternSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, pattern: &[Sym]) -> bool {
        if self.patterns.contains(pattern) {
            false
        } else {
            self.patterns.insert(pattern.to_vec())
        }
    }

    pub fn contains(&self, pattern: &[Sym]) -> bool {
        self.patterns.contains(pattern)
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Sym]> {
        self.patterns.iter().map(Vec::as_slice)
    }

    /// Patterns in lexicographic order.
    pub fn sorted(&self) -> Vec<&[Sym]> {
        let mut v: Vec<&[Sym]> = self.iter().collect();
        v.sort_unstable();
        v
    }
}

impl FromIterator<Vec<Sym>> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Vec<Sym>>>(iter: I) -> Self {
        PatternSet {
            patterns: iter.into_iter().collect(),
        }
    }
}

/// How the caller marks what is sensitive. Both forms are closed over
/// equal occurrences when the instance is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SensitiveSpec {
    Patterns(Vec<Vec<Sym>>),
    Positions(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SanitizationInstance {
    alphabet: Alphabet,
    w: Vec<Sym>,
    k: usize,
    /// `sensitive[i]` for every window start `0..=n-k`.
    sensitive: Vec<bool>,
    /// Length-n occurrence array with the tail copied from position `n-k`.
    c: Vec<bool>,
    patterns: PatternSet,
}

impl SanitizationInstance {
    /// Builds an instance, closing the sensitive set so that every occurrence
    /// of a sensitive pattern is sensitive.
    pub fn new(alphabet: Alphabet, w: Vec<Sym>, k: usize, spec: SensitiveSpec) -> Result<Self> {
        let n = w.len();
        if w.contains(&SEP) {
            return Err(Error::SeparatorInInput);
        }
        if k == 0 || k >= n {
            return Err(Error::BadK { k, n });
        }
        if let Some(&bad) = w.iter().find(|&&s| s as usize >= alphabet.len()) {
            return Err(Error::UnknownToken(format!("code {bad}")));
        }

        let mut patterns = PatternSet::new();
        match spec {
            SensitiveSpec::Patterns(list) => {
                for p in list {
                    if p.len() != k {
                        return Err(Error::BadPatternLength { len: p.len(), k });
                    }
                    if p.contains(&SEP) {
                        return Err(Error::SeparatorInInput);
                    }
                    patterns.insert(&p);
                }
            }
            SensitiveSpec::Positions(list) => {
                for pos in list {
                    if pos > n - k {
                        return Err(Error::BadPosition { pos, max: n - k });
                    }
                    patterns.insert(&w[pos..pos + k]);
                }
            }
        }

        let mut sensitive = vec![false; n - k + 1];
        let mut seen = PatternSet::new();
        for (i, win) in letter_windows(&w, k) {
            if patterns.contains(win) {
                sensitive[i] = true;
                seen.insert(win);
            }
        }
        for p in patterns.iter().filter(|p| !seen.contains(p)) {
            warn!(
                "sensitive pattern `{}` does not occur in the input",
                alphabet.render(p, TokenMode::Token)
            );
        }

        let mut c = Vec::with_capacity(n);
        c.extend_from_slice(&sensitive);
        let tail = sensitive[n - k];
        c.resize(n, tail);

        Ok(SanitizationInstance {
            alphabet,
            w,
            k,
            sensitive,
            c,
            patterns,
        })
    }

    /// Char-mode convenience constructor: the alphabet is the set of letters of `w`.
    pub fn from_text(w: &str, k: usize, patterns: &[&str]) -> Result<Self> {
        Self::from_text_mode(w, k, patterns, TokenMode::Char)
    }

    pub fn from_text_mode(w: &str, k: usize, patterns: &[&str], mode: TokenMode) -> Result<Self> {
        let tokens = tokenize(w, mode);
        let alphabet = Alphabet::new(&tokens)?;
        let codes = alphabet.encode(&tokens)?;
        let mut list = Vec::new();
        for p in patterns {
            let toks = tokenize(p, mode);
            if toks.len() != k {
                return Err(Error::BadPatternLength { len: toks.len(), k });
            }
            match alphabet.encode(&toks) {
                Ok(code) => list.push(code),
                // A letter outside the alphabet cannot occur in W.
                Err(Error::UnknownToken(_)) => {
                    warn!("sensitive pattern `{p}` uses letters absent from the input; ignored")
                }
                Err(e) => return Err(e),
            }
        }
        Self::new(alphabet, codes, k, SensitiveSpec::Patterns(list))
    }

    pub fn from_text_positions(w: &str, k: usize, positions: &[usize]) -> Result<Self> {
        let tokens = tokenize(w, TokenMode::Char);
        let alphabet = Alphabet::new(&tokens)?;
        let codes = alphabet.encode(&tokens)?;
        Self::new(alphabet, codes, k, SensitiveSpec::Positions(positions.to_vec()))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.len()
    }

    pub fn w(&self) -> &[Sym] {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Occurrence array: `c()[i]` is true iff window `i` is sensitive, with the
    /// last `k-1` entries equal to entry `n-k`.
    pub fn c(&self) -> &[bool] {
        &self.c
    }

    pub fn is_sensitive(&self, pos: usize) -> bool {
        self.sensitive[pos]
    }

    /// Sorted sensitive window starts.
    pub fn sensitive_positions(&self) -> Vec<usize> {
        (0..self.sensitive.len()).filter(|&i| self.sensitive[i]).collect()
    }

    /// Sorted non-sensitive window starts.
    pub fn nonsensitive_positions(&self) -> Vec<usize> {
        (0..self.sensitive.len()).filter(|&i| !self.sensitive[i]).collect()
    }

    pub fn sensitive_patterns(&self) -> &PatternSet {
        &self.patterns
    }

    pub fn window(&self, pos: usize) -> &[Sym] {
        &self.w[pos..pos + self.k]
    }

    /// Renders a sequence with this instance's alphabet.
    pub fn render(&self, seq: &[Sym]) -> String {
        let mode = if self.alphabet.is_char_alphabet() {
            TokenMode::Char
        } else {
            TokenMode::Token
        };
        self.alphabet.render(seq, mode)
    }

    /// Encodes a char-mode string (which may contain `#`) with this instance's alphabet.
    pub fn encode_text(&self, s: &str) -> Result<Vec<Sym>> {
        self.alphabet.encode(&tokenize(s, TokenMode::Char))
    }
}

/// Position of the first separator-free window of `t` that is a sensitive pattern.
pub fn first_sensitive(t: &[Sym], inst: &SanitizationInstance) -> Option<usize> {
    let patterns = inst.sensitive_patterns();
    if patterns.is_empty() {
        return None;
    }
    letter_windows(t, inst.k())
        .find(|(_, w)| patterns.contains(w))
        .map(|(i, _)| i)
}

/// True iff some separator-free window of `t` is a sensitive pattern.
pub fn contains_sensitive(t: &[Sym], inst: &SanitizationInstance) -> bool {
    first_sensitive(t, inst).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_input_marks_every_occurrence() {
        let inst = SanitizationInstance::from_text("aabaaacbcbbbaabbacaab", 4, &["baaa", "bbaa"]).unwrap();
        // baaa at 2, bbaa at 10
        assert_eq!(inst.sensitive_positions(), vec![2, 10]);
        let w = "aabaaacbcbbbaabbacaab".as_bytes();
        for p in inst.sensitive_positions() {
            let s = std::str::from_utf8(&w[p..p + 4]).unwrap();
            assert!(s == "baaa" || s == "bbaa");
        }
    }

    #[test]
    fn empty_sensitive_set_copies_tail() {
        let inst = SanitizationInstance::from_text("abcabc", 3, &[]).unwrap();
        assert!(inst.sensitive_positions().is_empty());
        assert_eq!(inst.c(), &[false; 6]);
    }

    #[test]
    fn tail_rule_copies_last_window_flag() {
        let inst = SanitizationInstance::from_text("abcabd", 3, &["abd"]).unwrap();
        assert_eq!(inst.c(), &[false, false, false, true, true, true]);
    }

    #[test]
    fn position_input_is_closed() {
        let inst = SanitizationInstance::from_text_positions("baaabbbaba", 4, &[1, 3, 5]).unwrap();
        assert_eq!(inst.sensitive_positions(), vec![1, 3, 5]);

        let inst = SanitizationInstance::from_text_positions("abab", 2, &[0]).unwrap();
        assert_eq!(inst.sensitive_positions(), vec![0, 2]);
    }

    #[test]
    fn closure_is_idempotent() {
        let inst = SanitizationInstance::from_text("abaababbab", 3, &["aba"]).unwrap();
        let again = SanitizationInstance::new(
            inst.alphabet().clone(),
            inst.w().to_vec(),
            3,
            SensitiveSpec::Positions(inst.sensitive_positions()),
        )
        .unwrap();
        assert_eq!(inst.sensitive_positions(), again.sensitive_positions());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            SanitizationInstance::from_text("ab#ab", 2, &[]),
            Err(Error::SeparatorInInput)
        );
        assert_eq!(
            SanitizationInstance::from_text("abc", 3, &[]),
            Err(Error::BadK { k: 3, n: 3 })
        );
        assert_eq!(
            SanitizationInstance::from_text("abc", 0, &[]),
            Err(Error::BadK { k: 0, n: 3 })
        );
        assert_eq!(
            SanitizationInstance::from_text_positions("abcd", 2, &[3]),
            Err(Error::BadPosition { pos: 3, max: 2 })
        );
    }

    #[test]
    fn absent_pattern_is_accepted() {
        let inst = SanitizationInstance::from_text("abab", 2, &["bb", "zz"]).unwrap();
        assert!(inst.sensitive_positions().is_empty());
        assert_eq!(inst.sensitive_patterns().len(), 1);
    }

    #[test]
    fn sensitive_containment() {
        let inst = SanitizationInstance::from_text("aabaaacbcbbbaabbacaab", 4, &["baaa", "bbaa"]).unwrap();
        let x = inst.encode_text("aabaa#aaacbcbbba#baabbacaab").unwrap();
        assert!(!contains_sensitive(&x, &inst));
        assert!(contains_sensitive(inst.w(), &inst));

        let inst = SanitizationInstance::from_text("baaab", 4, &["baaa"]).unwrap();
        let t = inst.encode_text("ba#aa").unwrap();
        assert!(!contains_sensitive(&t, &inst));
    }
}
