use crate::error::{Error, Result};

/// Levenshtein distance with unit costs, two rows.
pub fn edit_distance<T: PartialEq>(u: &[T], v: &[T]) -> usize {
    let (u, v) = if u.len() < v.len() { (v, u) } else { (u, v) };
    let mut prev: Vec<usize> = (0..=v.len()).collect();
    let mut cur = vec![0; v.len() + 1];
    for (i, a) in u.iter().enumerate() {
        cur[0] = i + 1;
        for (j, b) in v.iter().enumerate() {
            let sub = prev[j] + usize::from(a != b);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[v.len()]
}

/// Relative excess of `d_tfs` over the optimum `d_opt`.
pub fn edre_from(d_tfs: usize, d_opt: usize) -> Result<f64> {
    if d_opt == 0 {
        return if d_tfs == 0 {
            Ok(0.0)
        } else {
            Err(Error::UndefinedWhenZero)
        };
    }
    Ok((d_tfs as f64 - d_opt as f64) / d_opt as f64)
}

/// `(d(W,X) - d(W,X_ED)) / d(W,X_ED)`.
pub fn edre<T: PartialEq>(w: &[T], x: &[T], x_ed: &[T]) -> Result<f64> {
    edre_from(edit_distance(w, x), edit_distance(w, x_ed))
}
