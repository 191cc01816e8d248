//! Parsers for distribution and code files.

use std::fs;
use std::path::{Path, PathBuf};

use symdiv_core::{Distribution, UdCode};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("no probabilities found")]
    NoData,
    #[error("code lists no lengths")]
    NoLengths,
    #[error("missing `d=<int>` header")]
    MissingHeader,
    #[error("line {line}: every entry must carry a probability, or none may")]
    MixedEntries { line: usize },
    #[error(transparent)]
    Core(#[from] symdiv_core::Error),
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

fn parse_probability(token: &str, line: usize) -> Result<f64, InputError> {
    token.parse::<f64>().map_err(|_| InputError::Parse {
        line,
        message: format!("`{token}` is not a number"),
    })
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses one probability per line. Values are validated (finite,
/// non-negative, summing to one within tolerance), never renormalized.
pub fn parse_distribution(text: &str) -> Result<Distribution, InputError> {
    let mut probs = Vec::new();
    for (line, content) in content_lines(text) {
        let mut tokens = content.split_whitespace();
        let value = parse_probability(tokens.next().unwrap_or_default(), line)?;
        if let Some(extra) = tokens.next() {
            return Err(InputError::Parse {
                line,
                message: format!("unexpected `{extra}` after the probability"),
            });
        }
        probs.push(value);
    }
    if probs.is_empty() {
        return Err(InputError::NoData);
    }
    Ok(Distribution::new(probs)?)
}

pub fn read_distribution(path: &Path) -> Result<Distribution, InputError> {
    parse_distribution(&read(path)?)
}

/// A parsed code file. `source` is present when every line carried a
/// probability.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeSpec {
    pub d: u32,
    pub lengths: Vec<u32>,
    pub source: Option<Distribution>,
}

impl CodeSpec {
    /// Builds the code, taking the source from the file or from `fallback`.
    pub fn into_code(self, fallback: Option<Distribution>) -> anyhow::Result<UdCode> {
        let source = match (self.source, fallback) {
            (Some(_), Some(_)) => {
                anyhow::bail!("the code file already lists probabilities; drop --source")
            }
            (Some(source), None) | (None, Some(source)) => source,
            (None, None) => {
                anyhow::bail!("the code file has no probabilities; pass --source <file>")
            }
        };
        Ok(UdCode::new(self.d, self.lengths, source)?)
    }
}

pub fn parse_code(text: &str) -> Result<CodeSpec, InputError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(InputError::MissingHeader)?;
    let d = header
        .strip_prefix("d=")
        .ok_or(InputError::MissingHeader)?
        .trim()
        .parse::<u32>()
        .map_err(|_| InputError::Parse {
            line: header_line,
            message: format!("`{header}` does not give an integer alphabet size"),
        })?;

    let mut lengths = Vec::new();
    let mut probs = Vec::new();
    let mut with_probs = None;
    for (line, content) in lines {
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() > 2 {
            return Err(InputError::Parse {
                line,
                message: "expected `<length>` or `<length> <probability>`".into(),
            });
        }
        let has_prob = tokens.len() == 2;
        if *with_probs.get_or_insert(has_prob) != has_prob {
            return Err(InputError::MixedEntries { line });
        }
        let length = tokens[0].parse::<u32>().map_err(|_| InputError::Parse {
            line,
            message: format!("`{}` is not a non-negative integer length", tokens[0]),
        })?;
        lengths.push(length);
        if has_prob {
            probs.push(parse_probability(tokens[1], line)?);
        }
    }
    if lengths.is_empty() {
        return Err(InputError::NoLengths);
    }
    let source = if with_probs == Some(true) {
        Some(Distribution::new(probs)?)
    } else {
        None
    };
    Ok(CodeSpec { d, lengths, source })
}

pub fn read_code(path: &Path) -> Result<CodeSpec, InputError> {
    parse_code(&read(path)?)
}
