//! Greedy baseline, utility metrics and property verifiers.

mod baseline;
mod edit;
mod metrics;
mod verify;

use std::fmt::Write as _;

pub use baseline::ba_sanitize;
pub use edit::{edit_distance, edre, edre_from};
pub use metrics::{distortion, implausible_pct, lost_ghost};
pub use verify::{p_chains, verify, verify_all, Level, Violation};

/// Utility figures of one sanitization run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricsReport {
    pub pipeline: String,
    pub k: usize,
    pub tau: usize,
    pub len_w: usize,
    pub len_x: Option<usize>,
    pub len_y: Option<usize>,
    pub len_z: Option<usize>,
    pub separators: usize,
    pub distortion: u64,
    pub lost: Vec<String>,
    pub ghost: Vec<String>,
    /// Edit distance from the input, when computed.
    pub edit_distance: Option<usize>,
    pub edre: Option<f64>,
    pub implausible_pct: Option<f64>,
    pub estimated_cost: Option<u64>,
    pub total_weight: Option<u64>,
    /// Per-stage wall time in milliseconds.
    pub runtimes: Vec<(String, f64)>,
}

impl MetricsReport {
    /// Flat `key=value` lines followed by the lost and ghost patterns, one
    /// per line. Absent values are omitted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |key: &str, value: &dyn std::fmt::Display| {
            let _ = writeln!(s, "{key}={value}");
        };
        kv("pipeline", &self.pipeline);
        kv("k", &self.k);
        kv("tau", &self.tau);
        kv("len_w", &self.len_w);
        if let Some(v) = self.len_x {
            kv("len_x", &v);
        }
        if let Some(v) = self.len_y {
            kv("len_y", &v);
        }
        if let Some(v) = self.len_z {
            kv("len_z", &v);
        }
        kv("separators", &self.separators);
        kv("distortion", &self.distortion);
        kv("lost_count", &self.lost.len());
        kv("ghost_count", &self.ghost.len());
        if let Some(v) = self.edit_distance {
            kv("edit_distance", &v);
        }
        if let Some(v) = self.edre {
            kv("edre", &format!("{v:.6}"));
        }
        if let Some(v) = self.implausible_pct {
            kv("implausible_pct", &format!("{v:.4}"));
        }
        if let Some(v) = self.estimated_cost {
            kv("estimated_cost", &v);
        }
        if let Some(v) = self.total_weight {
            kv("total_weight", &v);
        }
        for (stage, ms) in &self.runtimes {
            kv(&format!("runtime_ms.{stage}"), &format!("{ms:.3}"));
        }
        for p in &self.lost {
            let _ = writeln!(s, "lost {p}");
        }
        for p in &self.ghost {
            let _ = writeln!(s, "ghost {p}");
        }
        s
    }
}
