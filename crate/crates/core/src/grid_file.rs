//! Plain-text graph files:
//!
//! ```text
//! grid 3 3
//! # comments and blank lines are ignored
//! edge 1 1
//! edge 2 1
//! ```
//!
//! Indices are 1-based. The same format is used for input and for search results.

use std::fmt::Write as _;

use thiserror::Error;

use crate::bigraph::{BiGraph, BiGraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `grid <m> <n>` header")]
    MissingHeader,
    #[error("line {line}: {source}")]
    Graph { line: usize, source: BiGraphError },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn two_numbers<'a>(line: usize, mut words: impl Iterator<Item = &'a str>, what: &str) -> Result<(usize, usize), ParseError> {
    let mut next = || -> Result<usize, ParseError> {
        let w = words.next().ok_or_else(|| syntax(line, format!("`{what}` needs two integers")))?;
        w.parse().map_err(|_| syntax(line, format!("`{w}` is not a non-negative integer")))
    };
    let a = next()?;
    let b = next()?;
    if words.next().is_some() {
        return Err(syntax(line, format!("trailing input after `{what}`")));
    }
    Ok((a, b))
}

pub fn parse(text: &str) -> Result<BiGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        match words.next().unwrap() {
            "grid" => {
                if header.is_some() {
                    return Err(syntax(line, "second `grid` header"));
                }
                let (m, n) = two_numbers(line, words, "grid")?;
                header = Some((m, n, line));
            }
            "edge" => {
                if header.is_none() {
                    return Err(syntax(line, "`edge` before the `grid` header"));
                }
                let (i, j) = two_numbers(line, words, "edge")?;
                edges.push((i, j, line));
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    let (m, n, header_line) = header.ok_or(ParseError::MissingHeader)?;
    let mut g = BiGraph::empty(m, n).map_err(|source| ParseError::Graph { line: header_line, source })?;
    for (i, j, line) in edges {
        if i == 0 || j == 0 || i > m || j > n {
            return Err(ParseError::Graph { line, source: BiGraphError::IndexOutOfRange { i, j, m, n } });
        }
        if g.has_edge(i - 1, j - 1) {
            return Err(ParseError::Graph { line, source: BiGraphError::DuplicateEdge { i, j } });
        }
        g.set_edge(i - 1, j - 1);
    }
    Ok(g)
}

/// Serialises `g`, optionally preceded by `#` comment lines.
pub fn write(g: &BiGraph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "grid {} {}", g.m(), g.n()).unwrap();
    for (i, j) in g.edges() {
        writeln!(out, "edge {} {}", i + 1, j + 1).unwrap();
    }
    out
}
