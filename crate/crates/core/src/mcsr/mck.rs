//! Multiple-choice knapsack: pick one element from every class, minimizing
//! total cost under a total weight capacity.

use crate::error::{Error, Result};

use super::Choice;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MckElement {
    pub choice: Choice,
    pub cost: u64,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MckInstance {
    pub classes: Vec<Vec<MckElement>>,
    pub theta: u64,
}

/// One element index per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub picks: Vec<usize>,
    pub cost: u64,
    pub weight: u64,
}

impl MckInstance {
    pub fn new(classes: Vec<Vec<MckElement>>, theta: u64) -> Self {
        MckInstance { classes, theta }
    }

    /// Cost and weight of a selection, `None` if an index is out of range.
    pub fn evaluate(&self, picks: &[usize]) -> Option<(u64, u64)> {
        if picks.len() != self.classes.len() {
            return None;
        }
        let mut cost = 0;
        let mut weight = 0;
        for (class, &p) in self.classes.iter().zip(picks) {
            let e = class.get(p)?;
            cost += e.cost;
            weight += e.weight;
        }
        Some((cost, weight))
    }
}

/// Dynamic program over classes and exact total weight, `O(δ·σ·θ)`.
///
/// Among optimal selections the one with the smallest weight is returned;
/// remaining ties go to the earlier element of each class.
pub fn solve_mck(inst: &MckInstance) -> Result<Selection> {
    if let Some(i) = inst.classes.iter().position(Vec::is_empty) {
        return Err(Error::Infeasible { separator: i });
    }
    let min_weight: u64 = inst
        .classes
        .iter()
        .map(|c| c.iter().map(|e| e.weight).min().unwrap_or(0))
        .sum();
    if min_weight > inst.theta {
        return Err(Error::OverBudget { theta: inst.theta });
    }
    let max_weight: u64 = inst
        .classes
        .iter()
        .map(|c| c.iter().map(|e| e.weight).max().unwrap_or(0))
        .sum();

    // Every selection fits: take the per-class best.
    if max_weight <= inst.theta {
        let picks: Vec<usize> = inst
            .classes
            .iter()
            .map(|c| {
                (0..c.len())
                    .min_by_key(|&j| (c[j].cost, c[j].weight, j))
                    .expect("class is non-empty")
            })
            .collect();
        let (cost, weight) = inst.evaluate(&picks).expect("picks are in range");
        return Ok(Selection { picks, cost, weight });
    }

    let cap = inst.theta.min(max_weight) as usize;
    const INF: u64 = u64::MAX;
    let mut dp = vec![INF; cap + 1];
    dp[0] = 0;
    let mut table: Vec<Vec<u32>> = Vec::with_capacity(inst.classes.len());
    for class in &inst.classes {
        let mut next = vec![INF; cap + 1];
        let mut pick = vec![u32::MAX; cap + 1];
        for (w, &base) in dp.iter().enumerate() {
            if base == INF {
                continue;
            }
            for (j, e) in class.iter().enumerate() {
                let nw = w as u64 + e.weight;
                if nw > cap as u64 {
                    continue;
                }
                let nc = base + e.cost;
                let slot = nw as usize;
                if nc < next[slot] {
                    next[slot] = nc;
                    pick[slot] = j as u32;
                }
            }
        }
        dp = next;
        table.push(pick);
    }

    let (best_w, best_c) = dp
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != INF)
        .min_by_key(|&(w, &c)| (c, w))
        .ok_or(Error::OverBudget { theta: inst.theta })?;
    let mut picks = vec![0; inst.classes.len()];
    let mut w = best_w;
    for i in (0..inst.classes.len()).rev() {
        let j = table[i][w] as usize;
        picks[i] = j;
        w -= inst.classes[i][j].weight as usize;
    }
    Ok(Selection {
        picks,
        cost: *best_c,
        weight: best_w as u64,
    })
}
