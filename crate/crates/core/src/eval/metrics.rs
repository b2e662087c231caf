use std::collections::HashSet;

use crate::alphabet::Sym;
use crate::instance::PatternSet;
use crate::kmer::kmer_counts;
use crate::mcsr::ImplausibleSet;

/// Sum of squared frequency differences over the non-sensitive length-k
/// patterns occurring in `w` or `z`.
pub fn distortion(w: &[Sym], z: &[Sym], k: usize, sensitive: &PatternSet) -> u64 {
    let wc = kmer_counts(w, k);
    let zc = kmer_counts(z, k);
    let pats: HashSet<&[Sym]> = wc.patterns().chain(zc.patterns()).collect();
    pats.into_iter()
        .filter(|u| !sensitive.contains(u))
        .map(|u| {
            let d = wc.count(u).abs_diff(zc.count(u)) as u64;
            d * d
        })
        .sum()
}

/// Patterns that drop below `tau` (lost) or rise to it (ghost) between `w`
/// and `z`, skipping those in `exclude`. Both lists are sorted.
pub fn lost_ghost(w: &[Sym], z: &[Sym], k: usize, tau: usize, exclude: &PatternSet) -> (Vec<Vec<Sym>>, Vec<Vec<Sym>>) {
    let wc = kmer_counts(w, k);
    let zc = kmer_counts(z, k);
    let mut lost: Vec<Vec<Sym>> = wc
        .iter()
        .filter(|&(u, c)| c >= tau && zc.count(u) < tau && !exclude.contains(u))
        .map(|(u, _)| u.to_vec())
        .collect();
    let mut ghost: Vec<Vec<Sym>> = zc
        .iter()
        .filter(|&(u, c)| c >= tau && wc.count(u) < tau && !exclude.contains(u))
        .map(|(u, _)| u.to_vec())
        .collect();
    lost.sort_unstable();
    ghost.sort_unstable();
    (lost, ghost)
}

/// Percentage of the given windows of `z` that are implausible.
pub fn implausible_pct(z: &[Sym], k: usize, windows: &[usize], set: &ImplausibleSet) -> f64 {
    if windows.is_empty() {
        return 0.0;
    }
    let bad = windows.iter().filter(|&&p| set.contains(&z[p..p + k])).count();
    100.0 * bad as f64 / windows.len() as f64
}
