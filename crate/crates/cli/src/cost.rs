//! Cost-model files.
//!
//! ```toml
//! ghost_default = 1
//! sub_default = 1
//! delete = 2
//!
//! [ghost]
//! "abca" = 5
//!
//! [sub]
//! a = 3
//! ```
//!
//! Ghost keys are patterns written in the input mode. All weights are
//! non-negative integers; anything else is rejected.

use std::collections::BTreeMap;
use std::path::Path;

use seqsan::mcsr::TableCost;
use seqsan::{tokenize, Alphabet, CostSpec, TokenMode};
use serde::Deserialize;

use crate::input::read_file;
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CostFile {
    ghost_default: Option<u64>,
    sub_default: Option<u64>,
    delete: Option<u64>,
    #[serde(default)]
    ghost: BTreeMap<String, u64>,
    #[serde(default)]
    sub: BTreeMap<String, u64>,
}

/// `uniform`, or the path of a TOML table.
pub fn load_cost(spec: &str, alphabet: &Alphabet, k: usize, mode: TokenMode) -> Result<CostSpec, CliError> {
    if spec == "uniform" {
        return Ok(CostSpec::Uniform);
    }
    let text = read_file(Path::new(spec))?;
    parse_cost(spec, &text, alphabet, k, mode)
}

pub fn parse_cost(
    name: &str,
    text: &str,
    alphabet: &Alphabet,
    k: usize,
    mode: TokenMode,
) -> Result<CostSpec, CliError> {
    let file: CostFile = toml::from_str(text).map_err(|e| CliError::Input(format!("{name}: {}", e.message())))?;
    let bad = |msg: String| CliError::Input(format!("{name}: {msg}"));
    let mut table = TableCost::default();
    if let Some(v) = file.ghost_default {
        table.ghost_default = v;
    }
    if let Some(v) = file.sub_default {
        table.sub_default = v;
    }
    if let Some(v) = file.delete {
        table.delete = v;
    }
    for (key, cost) in file.ghost {
        let toks = tokenize(&key, mode);
        if toks.len() != k {
            return Err(bad(format!(
                "ghost pattern `{key}` has {} tokens, expected k={k}",
                toks.len()
            )));
        }
        let code = alphabet
            .encode(&toks)
            .map_err(|_| bad(format!("ghost pattern `{key}` uses letters absent from the input")))?;
        table.ghost.insert(code, cost);
    }
    for (key, weight) in file.sub {
        let code = alphabet
            .code(&key)
            .ok_or_else(|| bad(format!("`{key}` is not a letter of the input")))?;
        table.sub.insert(code, weight);
    }
    Ok(CostSpec::Table(table))
}
