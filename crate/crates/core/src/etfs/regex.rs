use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Sym};
use crate::error::{Error, Result};
use crate::instance::SanitizationInstance;

/// What may stand between two consecutive non-sensitive windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexSegment {
    /// Either the single letter `append` (the windows overlap by `k-1`) or a
    /// separator gadget followed by the whole window.
    MergeChoice { append: Sym, next: Vec<Sym> },
    /// A separator gadget followed by the whole window.
    Interleave(Vec<Sym>),
}

impl RegexSegment {
    pub fn window(&self) -> &[Sym] {
        match self {
            RegexSegment::MergeChoice { next, .. } => next,
            RegexSegment::Interleave(next) => next,
        }
    }
}

/// `⊖ N₁ seg₂ … seg_m ⊗`, where `⊖ = (Σ^{<k}#)*`, `⊕ = #(Σ^{<k}#)*`,
/// `⊗ = (#Σ^{<k})*` and `Σ^{<k}` is up to `k-1` arbitrary letters. Gadgets
/// are kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SanRegex {
    pub first: Vec<Sym>,
    pub segments: Vec<RegexSegment>,
    pub sigma: usize,
    pub k: usize,
}

impl SanRegex {
    /// Length of the written-out expression, each `Σ^{<k}` counted as
    /// `k-1` groups of `σ+1` alternatives.
    pub fn flattened_len(&self) -> usize {
        let slots = (self.k - 1) * (self.sigma + 1);
        let star = slots + 1;
        let lits: usize = self.k
            + self
                .segments
                .iter()
                .map(|s| match s {
                    RegexSegment::MergeChoice { .. } => 1 + self.k + 1 + star,
                    RegexSegment::Interleave(_) => self.k + 1 + star,
                })
                .sum::<usize>();
        lits + 2 * star
    }

    /// Human-readable form with the gadget glyphs.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        let lit = |s: &[Sym]| s.iter().map(|&c| alphabet.token(c)).collect::<String>();
        let mut out = String::from("⊖");
        out.push_str(&lit(&self.first));
        for seg in &self.segments {
            match seg {
                RegexSegment::MergeChoice { append, next } => {
                    let _ = write!(out, "({}|⊕{})", alphabet.token(*append), lit(next));
                }
                RegexSegment::Interleave(next) => {
                    let _ = write!(out, "⊕{}", lit(next));
                }
            }
        }
        out.push('⊗');
        out
    }
}

/// Expression whose language is exactly the strings holding the
/// non-sensitive windows of `W` in order and no other letter-only window.
pub fn build_regex(inst: &SanitizationInstance) -> Result<SanRegex> {
    let k = inst.k();
    let positions = inst.nonsensitive_positions();
    let (&head, rest) = positions.split_first().ok_or(Error::NoNonSensitive)?;
    let mut prev = inst.window(head);
    let mut segments = Vec::with_capacity(rest.len());
    for &i in rest {
        let cur = inst.window(i);
        let seg = if prev[1..] == cur[..k - 1] {
            RegexSegment::MergeChoice {
                append: cur[k - 1],
                next: cur.to_vec(),
            }
        } else {
            RegexSegment::Interleave(cur.to_vec())
        };
        segments.push(seg);
        prev = cur;
    }
    Ok(SanRegex {
        first: inst.window(head).to_vec(),
        segments,
        sigma: inst.sigma(),
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_expression() {
        let inst =
            SanitizationInstance::from_text("aaabbaabaccbbb", 4, &["aabb", "abba", "bbaa", "baab", "ccbb"]).unwrap();
        let e = build_regex(&inst).unwrap();
        assert_eq!(
            e.render(inst.alphabet()),
            "⊖aaab(a|⊕aaba)(c|⊕abac)(c|⊕bacc)(b|⊕accb)⊕cbbb⊗"
        );
        assert_eq!(e.segments.len(), inst.nonsensitive_positions().len() - 1);
    }

    #[test]
    fn single_window() {
        let inst = SanitizationInstance::from_text("aaab", 3, &["aab"]).unwrap();
        let e = build_regex(&inst).unwrap();
        assert_eq!(e.render(inst.alphabet()), "⊖aaa⊗");
    }

    #[test]
    fn no_window_left() {
        let inst = SanitizationInstance::from_text("aaaaaab", 4, &["aaaa", "aaab"]).unwrap();
        assert_eq!(build_regex(&inst), Err(Error::NoNonSensitive));
    }

    #[test]
    fn flattened_size_is_linear_in_windows() {
        let inst = SanitizationInstance::from_text("abcabcabcabc", 3, &["bca"]).unwrap();
        let e = build_regex(&inst).unwrap();
        let per = (3 - 1) * (3 + 1) + 1;
        assert!(e.flattened_len() <= (inst.n() + 2) * (3 + 2 + per));
    }
}
