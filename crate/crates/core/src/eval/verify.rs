//! Property checkers for sanitized strings.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::{Sym, SEP};
use crate::instance::{first_sensitive, SanitizationInstance};
use crate::kmer::{kmer_counts, letter_windows};
use crate::tfs::{length_bound, separator_bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// No sensitive pattern.
    C1,
    /// The letter-only windows, read left to right, are exactly the
    /// non-sensitive windows of `W` in order.
    P1,
    /// Every maximal chain of `k-1`-overlapping consecutive non-sensitive
    /// windows of `W` is spelled somewhere in the output.
    Pi1,
    /// Non-sensitive patterns of `W` keep their frequencies.
    P2,
    /// Separator count and spacing.
    P3,
    /// Length bound.
    P4,
}

impl Level {
    pub const ALL: [Level; 6] = [Level::C1, Level::P1, Level::Pi1, Level::P2, Level::P3, Level::P4];
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::C1 => "C1",
            Level::P1 => "P1",
            Level::Pi1 => "Pi1",
            Level::P2 => "P2",
            Level::P3 => "P3",
            Level::P4 => "P4",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Level::ALL
            .into_iter()
            .find(|l| l.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub level: Level,
    pub position: Option<usize>,
    pub pattern: Option<Vec<Sym>>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated: {}", self.level, self.detail)?;
        if let Some(p) = self.position {
            write!(f, " at position {p}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Violation {}

fn fail(level: Level, position: Option<usize>, pattern: Option<&[Sym]>, detail: impl Into<String>) -> Violation {
    Violation {
        level,
        position,
        pattern: pattern.map(<[Sym]>::to_vec),
        detail: detail.into(),
    }
}

/// Checks one property of `t` against `inst`.
pub fn verify(t: &[Sym], inst: &SanitizationInstance, level: Level) -> Result<(), Violation> {
    let k = inst.k();
    let n = inst.n();
    match level {
        Level::C1 => match first_sensitive(t, inst) {
            Some(p) => Err(fail(level, Some(p), Some(&t[p..p + k]), "sensitive pattern occurs")),
            None => Ok(()),
        },
        Level::P1 => {
            let mut expected = inst.nonsensitive_positions().into_iter();
            for (p, u) in letter_windows(t, k) {
                match expected.next() {
                    Some(i) if inst.window(i) == u => {}
                    Some(i) => {
                        return Err(fail(
                            level,
                            Some(p),
                            Some(u),
                            format!("window differs from the non-sensitive window at {i} of the input"),
                        ))
                    }
                    None => return Err(fail(level, Some(p), Some(u), "extra window")),
                }
            }
            match expected.next() {
                Some(i) => Err(fail(
                    level,
                    None,
                    Some(inst.window(i)),
                    format!("input window {i} missing"),
                )),
                None => Ok(()),
            }
        }
        Level::Pi1 => {
            let mut need: HashMap<Vec<Sym>, usize> = HashMap::new();
            for chain in p_chains(inst) {
                *need.entry(chain).or_default() += 1;
            }
            let mut chains: Vec<_> = need.into_iter().collect();
            chains.sort();
            for (chain, count) in chains {
                let found = occurrences(t, &chain);
                if found < count {
                    return Err(fail(
                        level,
                        None,
                        Some(&chain),
                        format!("chain spelled {count} times in the input, {found} in the output"),
                    ));
                }
            }
            Ok(())
        }
        Level::P2 => {
            let tc = kmer_counts(t, k);
            let wc = kmer_counts(inst.w(), k);
            let sens = inst.sensitive_patterns();
            let mut pats: Vec<&[Sym]> = wc.patterns().filter(|u| !sens.contains(u)).collect();
            pats.sort_unstable();
            for u in pats {
                if tc.count(u) != wc.count(u) {
                    return Err(fail(
                        level,
                        None,
                        Some(u),
                        format!("frequency {} in the input, {} in the output", wc.count(u), tc.count(u)),
                    ));
                }
            }
            Ok(())
        }
        Level::P3 => {
            let seps: Vec<usize> = (0..t.len()).filter(|&i| t[i] == SEP).collect();
            if seps.len() > separator_bound(n, k) {
                return Err(fail(level, None, None, format!("{} separators", seps.len())));
            }
            if let (Some(&first), Some(&last)) = (seps.first(), seps.last()) {
                if first == 0 || last + 1 == t.len() {
                    return Err(fail(level, Some(first.min(last)), None, "separator at a string end"));
                }
            }
            for pair in seps.windows(2) {
                if pair[1] - pair[0] < k + 1 {
                    return Err(fail(level, Some(pair[1]), None, "separators closer than k+1"));
                }
            }
            Ok(())
        }
        Level::P4 => {
            let bound = length_bound(n, k);
            if t.len() > bound {
                Err(fail(level, None, None, format!("length {} exceeds {bound}", t.len())))
            } else {
                Ok(())
            }
        }
    }
}

/// Checks several properties, stopping at the first violation.
pub fn verify_all(t: &[Sym], inst: &SanitizationInstance, levels: &[Level]) -> Result<(), Violation> {
    levels.iter().try_for_each(|&l| verify(t, inst, l))
}

/// Spelled strings of the maximal chains of consecutive non-sensitive windows
/// of `W` where each window's `k-1`-suffix is the next one's `k-1`-prefix.
pub fn p_chains(inst: &SanitizationInstance) -> Vec<Vec<Sym>> {
    let k = inst.k();
    let w = inst.w();
    let mut chains: Vec<Vec<Sym>> = Vec::new();
    let mut prev: Option<usize> = None;
    for i in inst.nonsensitive_positions() {
        match (prev, chains.last_mut()) {
            (Some(p), Some(chain)) if w[p + 1..p + k] == w[i..i + k - 1] => chain.push(w[i + k - 1]),
            _ => chains.push(inst.window(i).to_vec()),
        }
        prev = Some(i);
    }
    chains
}

fn occurrences(t: &[Sym], pat: &[Sym]) -> usize {
    if pat.len() > t.len() {
        return 0;
    }
    t.windows(pat.len()).filter(|w| *w == pat).count()
}
