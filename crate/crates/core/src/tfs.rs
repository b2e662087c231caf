//! Total-order sanitization: the shortest string over `Σ ∪ {#}` that hides
//! every sensitive pattern while keeping the non-sensitive length-k
//! substrings in their original order and with their original frequencies.
//!
//! The string is built in one left-to-right scan of the occurrence array.
//! When a non-sensitive window follows a run of sensitive ones, either the
//! two neighbouring non-sensitive windows overlap by `k-1` letters and a
//! single letter is appended, or `#` and the whole window are appended.
//!
//! Two routes share the scan: [`tfs_sanitize`] compares the `k-1`-letter
//! overlaps directly and materializes the string, while [`tfs_compact`]
//! answers overlaps from precomputed gram ranks and emits intervals of `W`.

use crate::alphabet::{Sym, SEP};
use crate::error::{Error, Result};
use crate::grams::gram_ranks;
use crate::instance::SanitizationInstance;

/// A string over `Σ ∪ {#}` of the shape `X₁#X₂#…#X_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SanitizedString {
    tokens: Vec<Sym>,
}

impl SanitizedString {
    /// Wraps `tokens`, checking the block shape: no leading, trailing, or
    /// doubled separator and every block at least `k` letters long.
    pub fn new(tokens: Vec<Sym>, k: usize) -> Result<Self> {
        if tokens.first() == Some(&SEP) || tokens.last() == Some(&SEP) {
            return Err(Error::MalformedSanitized("separator at a string boundary"));
        }
        if !tokens.is_empty() && tokens.split(|&s| s == SEP).any(|b| b.len() < k) {
            return Err(Error::MalformedSanitized("block shorter than k"));
        }
        Ok(SanitizedString { tokens })
    }

    pub(crate) fn from_raw(tokens: Vec<Sym>) -> Self {
        SanitizedString { tokens }
    }

    pub fn tokens(&self) -> &[Sym] {
        &self.tokens
    }

    pub fn into_tokens(self) -> Vec<Sym> {
        self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn separator_count(&self) -> usize {
        self.tokens.iter().filter(|&&s| s == SEP).count()
    }

    /// `X₁, …, X_N`; empty for the empty string.
    pub fn blocks(&self) -> Vec<&[Sym]> {
        if self.tokens.is_empty() {
            Vec::new()
        } else {
            self.tokens.split(|&s| s == SEP).collect()
        }
    }
}

/// One piece of the compact form: a closed interval of `W` or a separator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Segment {
    Interval(usize, usize),
    Separator,
}

/// `O(n)`-sized representation of the total-order output as intervals of `W`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompactTfs {
    segments: Vec<Segment>,
}

impl CompactTfs {
    pub fn new(segments: Vec<Segment>) -> Self {
        CompactTfs { segments }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Length of the expanded string.
    pub fn expanded_len(&self) -> usize {
        self.segments
            .iter()
            .map(|s| match *s {
                Segment::Interval(i, j) => j - i + 1,
                Segment::Separator => 1,
            })
            .sum()
    }

    /// Segment runs between separators.
    pub fn blocks(&self) -> Vec<&[Segment]> {
        if self.segments.is_empty() {
            Vec::new()
        } else {
            self.segments.split(|s| *s == Segment::Separator).collect()
        }
    }
}

/// Concatenates the referenced substrings of `w` and the separators.
pub fn expand(c: &CompactTfs, w: &[Sym]) -> Result<SanitizedString> {
    let mut out = Vec::with_capacity(c.expanded_len());
    for seg in c.segments() {
        match *seg {
            Segment::Interval(i, j) => {
                if i > j || j >= w.len() {
                    return Err(Error::OutOfBounds {
                        start: i,
                        end: j,
                        len: w.len(),
                    });
                }
                out.extend_from_slice(&w[i..=j]);
            }
            Segment::Separator => out.push(SEP),
        }
    }
    Ok(SanitizedString::from_raw(out))
}

trait Emit {
    fn range(&mut self, i: usize, j: usize);
    fn separator(&mut self);
}

struct Tokens<'a> {
    w: &'a [Sym],
    out: Vec<Sym>,
}

impl Emit for Tokens<'_> {
    fn range(&mut self, i: usize, j: usize) {
        self.out.extend_from_slice(&self.w[i..=j]);
    }

    fn separator(&mut self) {
        self.out.push(SEP);
    }
}

impl Emit for Vec<Segment> {
    fn range(&mut self, i: usize, j: usize) {
        if let Some(Segment::Interval(_, end)) = self.last_mut() {
            if *end + 1 == i {
                *end = j;
                return;
            }
        }
        self.push(Segment::Interval(i, j));
    }

    fn separator(&mut self) {
        self.push(Segment::Separator);
    }
}

/// The scan itself. `same_overlap(a, b)` must report whether the `k-1`
/// letters starting at `a` and at `b` are equal.
fn scan<E: Emit>(inst: &SanitizationInstance, same_overlap: impl Fn(usize, usize) -> bool, out: &mut E) {
    let n = inst.n();
    let k = inst.k();
    let c = inst.c();

    let Some(first) = c.iter().position(|&s| !s) else {
        return;
    };
    // The tail copies C[n-k], so the first zero is always a full window.
    debug_assert!(first + k <= n);
    out.range(first, first + k - 1);
    let mut j = first + k;
    // Start of the (k-1)-suffix of the last non-sensitive window before a sensitive run.
    let mut f = 0usize;

    while j < n {
        let p = j - k;
        let cur = p + 1;
        match (c[p], c[cur]) {
            (false, false) => out.range(j, j),
            (false, true) => f = cur,
            (true, true) => {}
            (true, false) => {
                if same_overlap(cur, f) {
                    out.range(j, j);
                } else {
                    out.separator();
                    out.range(j + 1 - k, j);
                }
            }
        }
        j += 1;
    }
}

/// Total-order sanitization, materialized. Runs in `O(kn)`.
pub fn tfs_sanitize(inst: &SanitizationInstance) -> SanitizedString {
    let w = inst.w();
    let overlap = inst.k() - 1;
    let mut out = Tokens { w, out: Vec::new() };
    scan(inst, |a, b| w[a..a + overlap] == w[b..b + overlap], &mut out);
    assert_ne!(out.out.first(), Some(&SEP), "output starts with a separator");
    SanitizedString::from_raw(out.out)
}

/// Total-order sanitization as intervals of `W`, without materializing the
/// output. Overlap checks are constant-time rank comparisons.
pub fn tfs_compact(inst: &SanitizationInstance) -> CompactTfs {
    let ranks = gram_ranks(inst.w(), inst.k() - 1);
    let mut segments = Vec::new();
    scan(inst, |a, b| ranks[a] == ranks[b], &mut segments);
    assert_ne!(
        segments.first(),
        Some(&Segment::Separator),
        "output starts with a separator"
    );
    CompactTfs { segments }
}

/// [`tfs_compact`] with overlaps compared letter by letter. Comparisons only
/// happen where a sensitive run ends, so this is cheaper whenever the output
/// gets materialized anyway.
pub(crate) fn tfs_segments(inst: &SanitizationInstance) -> CompactTfs {
    let w = inst.w();
    let overlap = inst.k() - 1;
    let mut segments = Vec::new();
    scan(inst, |a, b| w[a..a + overlap] == w[b..b + overlap], &mut segments);
    CompactTfs { segments }
}

/// Upper bound on the output length: `⌈(n-k+1)/2⌉·k + ⌊(n-k+1)/2⌋`.
pub fn length_bound(n: usize, k: usize) -> usize {
    let windows = n - k + 1;
    windows.div_ceil(2) * k + windows / 2
}

/// Upper bound on the number of separators: `⌊(n-k+1)/2⌋`.
pub fn separator_bound(n: usize, k: usize) -> usize {
    let windows = n - k + 1;
    windows / 2
}
