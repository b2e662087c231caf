//! Reading instances and sequences from text files, with line and column
//! diagnostics.

use std::fs;
use std::path::Path;

use log::warn;
use seqsan::{tokenize, Alphabet, SanitizationInstance, SensitiveSpec, Sym, TokenMode, SEP_TOKEN};

use crate::CliError;

/// A token with its 1-based line and character column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Located<'a> {
    pub text: &'a str,
    pub line: usize,
    pub col: usize,
}

/// Tokens of `text` in reading order, each with its location.
pub fn located_tokens(text: &str, mode: TokenMode) -> Vec<Located<'_>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut rest = line;
        let mut col = 1;
        for tok in tokenize(line, mode) {
            // Tokens are slices of `line`, so the offset recovers the column.
            let offset = tok.as_ptr() as usize - rest.as_ptr() as usize;
            col += rest[..offset].chars().count();
            out.push(Located {
                text: tok,
                line: li + 1,
                col,
            });
            col += tok.chars().count();
            rest = &rest[offset + tok.len()..];
        }
    }
    out
}

/// How the sensitive set is given on the command line.
#[derive(Debug, Clone, Copy)]
pub enum SensitiveSource<'a> {
    Patterns(&'a Path),
    Positions(&'a Path),
}

/// The same as [`SensitiveSource`] after reading: file name and contents.
#[derive(Debug, Clone, Copy)]
pub enum SensitiveText<'a> {
    Patterns { name: &'a str, text: &'a str },
    Positions { name: &'a str, text: &'a str },
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_error(name: &str, tok: &Located<'_>, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        file: name.to_string(),
        line: tok.line,
        col: tok.col,
        msg: msg.into(),
    }
}

/// Reads the string file and the sensitive-set file and builds the closed instance.
pub fn parse_inputs(
    string: &Path,
    sensitive: SensitiveSource<'_>,
    k: usize,
    mode: TokenMode,
) -> Result<SanitizationInstance, CliError> {
    let w = read_file(string)?;
    let (path, is_patterns) = match sensitive {
        SensitiveSource::Patterns(p) => (p, true),
        SensitiveSource::Positions(p) => (p, false),
    };
    let body = read_file(path)?;
    let name = path.display().to_string();
    let text = if is_patterns {
        SensitiveText::Patterns {
            name: &name,
            text: &body,
        }
    } else {
        SensitiveText::Positions {
            name: &name,
            text: &body,
        }
    };
    parse_instance(&string.display().to_string(), &w, text, k, mode)
}

/// [`parse_inputs`] on in-memory contents; `name` labels diagnostics.
pub fn parse_instance(
    name: &str,
    w: &str,
    sensitive: SensitiveText<'_>,
    k: usize,
    mode: TokenMode,
) -> Result<SanitizationInstance, CliError> {
    let tokens = located_tokens(w, mode);
    if let Some(t) = tokens.iter().find(|t| t.text == SEP_TOKEN) {
        return Err(parse_error(
            name,
            t,
            "the reserved separator `#` may not appear in the input",
        ));
    }
    if tokens.is_empty() {
        return Err(CliError::Input(format!("{name}: the input string is empty")));
    }
    let plain: Vec<&str> = tokens.iter().map(|t| t.text).collect();
    let alphabet = Alphabet::new(&plain)?;
    let codes = alphabet.encode(&plain)?;
    let n = codes.len();

    let spec = match sensitive {
        SensitiveText::Patterns { name, text } => {
            SensitiveSpec::Patterns(parse_patterns(name, text, &alphabet, k, mode)?)
        }
        SensitiveText::Positions { name, text } => {
            let mut list = Vec::new();
            for t in located_tokens(text, TokenMode::Token) {
                let pos: usize = t
                    .text
                    .parse()
                    .map_err(|_| parse_error(name, &t, format!("expected a position, found `{}`", t.text)))?;
                if k < n && pos > n - k {
                    return Err(parse_error(name, &t, format!("position {pos} exceeds n-k={}", n - k)));
                }
                list.push(pos);
            }
            SensitiveSpec::Positions(list)
        }
    };
    Ok(SanitizationInstance::new(alphabet, codes, k, spec)?)
}

fn parse_patterns(
    name: &str,
    text: &str,
    alphabet: &Alphabet,
    k: usize,
    mode: TokenMode,
) -> Result<Vec<Vec<Sym>>, CliError> {
    let tokens = located_tokens(text, mode);
    let mut out = Vec::new();
    let mut start = 0;
    while start < tokens.len() {
        let line = tokens[start].line;
        let end = start + tokens[start..].iter().take_while(|t| t.line == line).count();
        let row = &tokens[start..end];
        start = end;
        if let Some(t) = row.iter().find(|t| t.text == SEP_TOKEN) {
            return Err(parse_error(
                name,
                t,
                "the reserved separator `#` may not appear in a pattern",
            ));
        }
        if row.len() != k {
            return Err(parse_error(
                name,
                &row[0],
                format!("pattern has {} tokens, expected k={k}", row.len()),
            ));
        }
        let toks: Vec<&str> = row.iter().map(|t| t.text).collect();
        match alphabet.encode(&toks) {
            Ok(p) => out.push(p),
            Err(_) => warn!("{name}:{line}: pattern uses letters absent from the input; ignored"),
        }
    }
    Ok(out)
}

/// Text form of a sequence over `Σ ∪ {#}`, newline terminated.
pub fn render_sequence(alphabet: &Alphabet, seq: &[Sym], mode: TokenMode) -> String {
    let mut s = alphabet.render(seq, mode);
    s.push('\n');
    s
}

/// Inverse of [`render_sequence`]; `#` is accepted.
pub fn parse_sequence(name: &str, text: &str, alphabet: &Alphabet, mode: TokenMode) -> Result<Vec<Sym>, CliError> {
    located_tokens(text, mode)
        .iter()
        .map(|t| {
            alphabet
                .encode(&[t.text])
                .map(|c| c[0])
                .map_err(|_| parse_error(name, t, format!("token `{}` is not in the alphabet", t.text)))
        })
        .collect()
}
