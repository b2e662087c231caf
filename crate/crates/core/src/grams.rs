//! Exact lexicographic ranks of all length-ℓ substrings of a string, by
//! prefix doubling. Two positions get the same rank iff the substrings
//! starting there are equal, which answers "do these two ℓ-grams match" in
//! constant time after `O(n log ℓ)` preprocessing.

use crate::alphabet::Sym;

/// Dense 0-based ranks of `w[i..i+len]` for every `i` in `0..=w.len()-len`.
/// For `len == 0` every position (including `w.len()`) has rank 0.
pub(crate) fn gram_ranks(w: &[Sym], len: usize) -> Vec<u32> {
    let n = w.len();
    if len == 0 {
        return vec![0; n + 1];
    }
    if len > n {
        return Vec::new();
    }

    let mut rank = dense_rank(w.iter().map(|&s| s as u64).collect());
    let mut cur = 1usize;
    while cur * 2 <= len {
        rank = combine(&rank, cur, n - 2 * cur + 1);
        cur *= 2;
    }
    if cur < len {
        let shift = len - cur;
        rank = combine(&rank, shift, n - len + 1);
    }
    rank.truncate(n - len + 1);
    rank
}

fn combine(rank: &[u32], shift: usize, count: usize) -> Vec<u32> {
    let keys = (0..count)
        .map(|i| ((rank[i] as u64) << 32) | rank[i + shift] as u64)
        .collect();
    dense_rank(keys)
}

fn dense_rank(keys: Vec<u64>) -> Vec<u32> {
    // Sorting the pairs themselves keeps the comparisons cache friendly.
    let mut pairs: Vec<(u64, u32)> = keys.into_iter().zip(0u32..).collect();
    pairs.sort_unstable();
    let mut out = vec![0u32; pairs.len()];
    let mut r = 0u32;
    for (idx, &(key, i)) in pairs.iter().enumerate() {
        if idx > 0 && key != pairs[idx - 1].0 {
            r += 1;
        }
        out[i as usize] = r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn ranks_agree_with_slice_order(w in proptest::collection::vec(0u32..3, 1..60), len in 0usize..9) {
            prop_assume!(len <= w.len());
            let r = gram_ranks(&w, len);
            let m = w.len() - len + 1;
            prop_assert!(r.len() >= m);
            for i in 0..m {
                for j in 0..m {
                    let a = &w[i..i + len];
                    let b = &w[j..j + len];
                    prop_assert_eq!(a.cmp(b), r[i].cmp(&r[j]));
                }
            }
        }
    }
}
