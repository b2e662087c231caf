use crate::alphabet::{Sym, SEP};
use crate::instance::SanitizationInstance;

/// Greedy baseline. Walks the sensitive occurrences left to right; in each
/// one, the letter with the highest frequency (leftmost on ties) is replaced
/// by the least frequent letter absent from the occurrence that creates no
/// sensitive pattern (smallest on ties), or by `#` if there is none.
pub fn ba_sanitize(inst: &SanitizationInstance) -> Vec<Sym> {
    let k = inst.k();
    let sens = inst.sensitive_patterns();
    let mut z = inst.w().to_vec();
    let n = z.len();
    let mut freq = vec![0usize; inst.sigma()];
    for &s in &z {
        freq[s as usize] += 1;
    }

    let is_sensitive = |z: &[Sym], p: usize| {
        let u = &z[p..p + k];
        !u.contains(&SEP) && sens.contains(u)
    };

    for p in 0..=n - k {
        if !is_sensitive(&z, p) {
            continue;
        }
        let q = (p..p + k)
            .max_by_key(|&i| (freq[z[i] as usize], std::cmp::Reverse(i)))
            .expect("window is non-empty");
        let old = z[q];
        let r = &z[p..p + k];
        let mut options: Vec<Sym> = (0..inst.sigma() as Sym).filter(|a| !r.contains(a)).collect();
        options.sort_by_key(|&a| (freq[a as usize], a));

        let touching = q.saturating_sub(k - 1)..=q.min(n - k);
        let mut chosen = SEP;
        for a in options {
            z[q] = a;
            if !touching.clone().any(|t| is_sensitive(&z, t)) {
                chosen = a;
                break;
            }
        }
        z[q] = chosen;
        freq[old as usize] -= 1;
        if chosen != SEP {
            freq[chosen as usize] += 1;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::contains_sensitive;

    #[test]
    fn nothing_sensitive_is_identity() {
        let inst = SanitizationInstance::from_text("abcabc", 3, &[]).unwrap();
        assert_eq!(ba_sanitize(&inst), inst.w());
    }

    #[test]
    fn replaces_leftmost_frequent_letter() {
        let inst = SanitizationInstance::from_text("aab", 2, &["aa"]).unwrap();
        assert_eq!(inst.render(&ba_sanitize(&inst)), "bab");
    }

    #[test]
    fn unary_alphabet_falls_back_to_separator() {
        let inst = SanitizationInstance::from_text("aaaa", 2, &["aa"]).unwrap();
        let z = ba_sanitize(&inst);
        assert!(z.contains(&SEP));
        assert!(!contains_sensitive(&z, &inst));
    }

    #[test]
    fn example_output_is_safe() {
        let inst = SanitizationInstance::from_text("aabaaacbcbbbaabbacaab", 4, &["baaa", "bbaa"]).unwrap();
        let z = ba_sanitize(&inst);
        assert_eq!(z.len(), inst.n());
        assert!(!contains_sensitive(&z, &inst));
    }
}
