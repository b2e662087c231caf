//! End-to-end runs of the sanitizers with their utility report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::alphabet::{Sym, SEP};
use crate::error::{Error, Result};
use crate::etfs::{etfs_sanitize, MatchResult};
use crate::eval::{ba_sanitize, distortion, edit_distance, edre_from, implausible_pct, lost_ghost, MetricsReport};
use crate::instance::SanitizationInstance;
use crate::mcsr::{
    implausible_set, mcsr_sanitize, Choice, CostModel, McsrOutcome, McsrParams, TableCost, Theta, UniformCost,
};
use crate::pfs::pfs_sanitize;
use crate::tfs::{tfs_sanitize, SanitizedString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pipeline {
    Tfs,
    Pfs,
    /// tfs, pfs, then separator replacement.
    Tpm,
    /// tfs, then separator replacement.
    Tm,
    /// tfs, then separator replacement avoiding implausible patterns.
    Tmi,
    Etfs,
    Ba,
}

impl Pipeline {
    pub const ALL: [Pipeline; 7] = [
        Pipeline::Tfs,
        Pipeline::Pfs,
        Pipeline::Tpm,
        Pipeline::Tm,
        Pipeline::Tmi,
        Pipeline::Etfs,
        Pipeline::Ba,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Tfs => "tfs",
            Pipeline::Pfs => "pfs",
            Pipeline::Tpm => "tpm",
            Pipeline::Tm => "tm",
            Pipeline::Tmi => "tmi",
            Pipeline::Etfs => "etfs",
            Pipeline::Ba => "ba",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown pipeline `{s}`"))
    }
}

/// Cost model choice for separator replacement.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CostSpec {
    #[default]
    Uniform,
    Table(TableCost),
}

impl CostModel for CostSpec {
    fn ghost(&self, position: usize, pattern: &[Sym]) -> u64 {
        match self {
            CostSpec::Uniform => UniformCost.ghost(position, pattern),
            CostSpec::Table(t) => t.ghost(position, pattern),
        }
    }

    fn sub(&self, separator: usize, choice: Choice) -> u64 {
        match self {
            CostSpec::Uniform => UniformCost.sub(separator, choice),
            CostSpec::Table(t) => t.sub(separator, choice),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub tau: usize,
    pub theta: Theta,
    pub rho: Option<f64>,
    pub cost: CostSpec,
    /// Record per-stage wall times in the report.
    pub timings: bool,
    /// Edit distances are reported only when `(|W|+1)·(|out|+1)` is at most this.
    pub edit_cell_limit: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            tau: 1,
            theta: Theta::Auto,
            rho: None,
            cost: CostSpec::Uniform,
            timings: false,
            edit_cell_limit: 50_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    /// Final string, over `Σ ∪ {#}`.
    pub output: Vec<Sym>,
    pub report: MetricsReport,
    pub x: Option<SanitizedString>,
    pub y: Option<SanitizedString>,
    pub replacement: Option<McsrOutcome>,
    pub matched: Option<MatchResult>,
}

struct Clock {
    enabled: bool,
    runtimes: Vec<(String, f64)>,
}

impl Clock {
    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.runtimes
                .push((name.to_string(), start.elapsed().as_secs_f64() * 1e3));
        }
        out
    }
}

pub fn run_pipeline(inst: &SanitizationInstance, pipeline: Pipeline, opts: &PipelineOptions) -> Result<PipelineOutput> {
    if opts.tau == 0 {
        return Err(Error::InvalidTau);
    }
    if pipeline == Pipeline::Tmi && opts.rho.is_none() {
        return Err(Error::InvalidRho(f64::NAN));
    }
    let k = inst.k();
    let w = inst.w();
    let mut clock = Clock {
        enabled: opts.timings,
        runtimes: Vec::new(),
    };
    let mut report = MetricsReport {
        pipeline: pipeline.to_string(),
        k,
        tau: opts.tau,
        len_w: inst.n(),
        ..Default::default()
    };
    let mut out = PipelineOutput {
        output: Vec::new(),
        report: MetricsReport::default(),
        x: None,
        y: None,
        replacement: None,
        matched: None,
    };

    let needs_x = !matches!(pipeline, Pipeline::Ba);
    if needs_x {
        let x = clock.stage("tfs", || tfs_sanitize(inst));
        report.len_x = Some(x.len());
        out.x = Some(x);
    }
    let params = McsrParams {
        tau: opts.tau,
        theta: opts.theta,
    };

    let output = match pipeline {
        Pipeline::Tfs => out.x.as_ref().map(|x| x.tokens().to_vec()).unwrap_or_default(),
        Pipeline::Pfs | Pipeline::Tpm => {
            let y = clock.stage("pfs", || pfs_sanitize(inst));
            report.len_y = Some(y.len());
            let tokens = y.tokens().to_vec();
            out.y = Some(y);
            if pipeline == Pipeline::Pfs {
                tokens
            } else {
                let r = clock.stage("mcsr", || mcsr_sanitize(&tokens, inst, &opts.cost, params, None))?;
                finish_replacement(&mut report, &mut out, r, None, k)
            }
        }
        Pipeline::Tm | Pipeline::Tmi => {
            let x = out.x.as_ref().expect("tfs ran").tokens().to_vec();
            let set = match opts.rho {
                Some(rho) => Some(clock.stage("implausible", || implausible_set(w, inst.sigma(), k, rho))?),
                None => None,
            };
            let forbid = if pipeline == Pipeline::Tmi { set.as_ref() } else { None };
            let r = clock.stage("mcsr", || mcsr_sanitize(&x, inst, &opts.cost, params, forbid))?;
            finish_replacement(&mut report, &mut out, r, set.as_ref(), k)
        }
        Pipeline::Etfs => {
            let m = clock.stage("etfs", || etfs_sanitize(inst));
            let x = out.x.as_ref().expect("tfs ran");
            report.edit_distance = Some(m.distance);
            report.edre = edre_from(edit_distance(w, x.tokens()), m.distance).ok();
            let t = m.t.clone();
            out.matched = Some(m);
            t
        }
        Pipeline::Ba => clock.stage("ba", || ba_sanitize(inst)),
    };

    report.separators = output.iter().filter(|&&s| s == SEP).count();
    report.distortion = distortion(w, &output, k, inst.sensitive_patterns());
    let (lost, ghost) = lost_ghost(w, &output, k, opts.tau, inst.sensitive_patterns());
    report.lost = lost.iter().map(|u| inst.render(u)).collect();
    report.ghost = ghost.iter().map(|u| inst.render(u)).collect();
    if report.edit_distance.is_none() && (w.len() + 1).saturating_mul(output.len() + 1) <= opts.edit_cell_limit {
        report.edit_distance = Some(edit_distance(w, &output));
    }
    report.runtimes = clock.runtimes;
    out.output = output;
    out.report = report;
    Ok(out)
}

fn finish_replacement(
    report: &mut MetricsReport,
    out: &mut PipelineOutput,
    r: McsrOutcome,
    implausible: Option<&crate::mcsr::ImplausibleSet>,
    k: usize,
) -> Vec<Sym> {
    report.len_z = Some(r.z.len());
    report.estimated_cost = Some(r.estimated_cost);
    report.total_weight = Some(r.total_weight);
    if let Some(set) = implausible {
        report.implausible_pct = Some(implausible_pct(&r.z, k, &r.site_windows(k), set));
    }
    let z = r.z.clone();
    out.replacement = Some(r);
    z
}
