//! Seeded random instances shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use seqsan::{Alphabet, SanitizationInstance, SensitiveSpec, Sym};

pub fn random_string<R: Rng>(rng: &mut R, n: usize, sigma: usize) -> Vec<Sym> {
    (0..n).map(|_| rng.gen_range(0..sigma as Sym)).collect()
}

/// Instance on a uniform random string whose sensitive set is the patterns
/// at `count` random positions (fewer if positions repeat a pattern).
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, sigma: usize, k: usize, count: usize) -> SanitizationInstance {
    let w = random_string(rng, n, sigma);
    instance_with_positions(rng, w, sigma, k, count)
}

pub fn instance_with_positions<R: Rng>(
    rng: &mut R,
    w: Vec<Sym>,
    sigma: usize,
    k: usize,
    count: usize,
) -> SanitizationInstance {
    let mut starts: Vec<usize> = (0..=w.len() - k).collect();
    starts.shuffle(rng);
    starts.truncate(count);
    SanitizationInstance::new(Alphabet::synthetic(sigma), w, k, SensitiveSpec::Positions(starts)).unwrap()
}

/// `count` distinct patterns drawn from the windows of `w`.
pub fn sample_patterns<R: Rng>(rng: &mut R, w: &[Sym], k: usize, count: usize) -> Vec<Vec<Sym>> {
    let mut out: Vec<Vec<Sym>> = Vec::new();
    for _ in 0..1000 * count {
        if out.len() == count {
            break;
        }
        let i = rng.gen_range(0..=w.len() - k);
        let p = w[i..i + k].to_vec();
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub fn text(s: &str) -> Vec<Sym> {
    s.bytes().map(|b| (b - b'a') as Sym).collect()
}
