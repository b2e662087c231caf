//! Sanitization at minimal edit distance. The strings that keep the
//! non-sensitive windows in order and add no other letter-only window form a
//! regular language; the output is the member closest to `W`.

mod matcher;
mod nfa;
mod regex;

pub use matcher::{match_nfa, MatchResult};
pub use nfa::{Edge, Gadget, Label, Nfa};
pub use regex::{build_regex, RegexSegment, SanRegex};

use crate::alphabet::Sym;
use crate::error::Error;
use crate::instance::SanitizationInstance;

/// Closest string to `w` matched by `e`.
pub fn approx_regex_match(w: &[Sym], e: &SanRegex) -> MatchResult {
    match_nfa(w, &Nfa::from_regex(e))
}

/// Edit-distance-optimal sanitization. When every window is sensitive the
/// target language is all strings without `k` consecutive letters.
pub fn etfs_sanitize(inst: &SanitizationInstance) -> MatchResult {
    match build_regex(inst) {
        Ok(e) => approx_regex_match(inst.w(), &e),
        Err(Error::NoNonSensitive) => match_nfa(inst.w(), &Nfa::filler(inst.sigma(), inst.k())),
        Err(e) => unreachable!("regex construction failed: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{edit_distance, verify_all, Level};
    use crate::tfs::tfs_sanitize;

    fn check(inst: &SanitizationInstance, m: &MatchResult) {
        assert_eq!(edit_distance(inst.w(), &m.t), m.distance);
        assert_eq!(verify_all(&m.t, inst, &[Level::C1, Level::P1, Level::P2]), Ok(()));
        let x = tfs_sanitize(inst);
        assert!(m.distance <= edit_distance(inst.w(), x.tokens()));
    }

    #[test]
    fn example_with_merges_and_interleaves() {
        let inst =
            SanitizationInstance::from_text("aaabbaabaccbbb", 4, &["aabb", "abba", "bbaa", "baab", "ccbb"]).unwrap();
        let m = etfs_sanitize(&inst);
        assert_eq!(m.distance, 4);
        check(&inst, &m);
        let e = build_regex(&inst).unwrap();
        let known = inst.encode_text("aaab#aabaccb#cbbb").unwrap();
        assert!(Nfa::from_regex(&e).accepts(&known));
        assert!(Nfa::from_regex(&e).accepts(&m.t));
    }

    #[test]
    fn all_sensitive_uses_filler() {
        let inst = SanitizationInstance::from_text("aaaaaab", 4, &["aaaa", "aaab"]).unwrap();
        let m = etfs_sanitize(&inst);
        assert_eq!(inst.render(&m.t), "aaa#aab");
        assert_eq!(m.distance, 1);
        check(&inst, &m);
    }

    #[test]
    fn nothing_sensitive_is_identity() {
        let inst = SanitizationInstance::from_text("abcabcab", 3, &[]).unwrap();
        let m = etfs_sanitize(&inst);
        assert_eq!(m.t, inst.w());
        assert_eq!(m.distance, 0);
    }

    #[test]
    fn state_count_is_linear() {
        let inst = SanitizationInstance::from_text("abcabcabbacabcbacbabcab", 3, &["bca"]).unwrap();
        let e = build_regex(&inst).unwrap();
        let nfa = Nfa::from_regex(&e);
        assert!(nfa.state_count() <= e.flattened_len());
        let m = approx_regex_match(inst.w(), &e);
        assert_eq!(m.cells, (inst.n() + 1) * nfa.state_count());
        check(&inst, &m);
    }
}
