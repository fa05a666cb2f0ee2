//! File/stdin plumbing shared by the subcommands.

use kfactor_core::format::{parse_graph, GraphFormat};
use kfactor_core::graph::Graph;
use std::io::Read;
use std::path::Path;

/// Reads a whole input: a path, or stdin when the path is `-`.
pub fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
    }
}

/// Why a graph could not be loaded; read failures and malformed content
/// map to different exit codes.
#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(msg) | LoadError::Parse(msg) => write!(f, "{msg}"),
        }
    }
}

/// Parses a graph from a path (or stdin), honoring an explicit format or
/// guessing from the extension (`.g6` means graph6; anything else with an
/// edge-list shape parses as an edge list).
pub fn load_graph(path: &str, format: Option<GraphFormat>) -> Result<Graph, LoadError> {
    let text = read_input(path).map_err(|e| LoadError::Io(format!("cannot read {path}: {e}")))?;
    let format = format.unwrap_or_else(|| guess_format(path, &text));
    parse_graph(&text, format).map_err(|e| LoadError::Parse(format!("{path}: {e}")))
}

fn guess_format(path: &str, text: &str) -> GraphFormat {
    if Path::new(path).extension().is_some_and(|e| e == "g6") {
        return GraphFormat::Graph6;
    }
    // Edge lists contain whitespace between tokens; graph6 lines never do.
    let body = text.trim();
    if body.lines().any(|l| l.trim_start().starts_with('#'))
        || body.lines().any(|l| l.split_whitespace().count() >= 2)
    {
        GraphFormat::EdgeList
    } else {
        GraphFormat::Graph6
    }
}

/// Parses a ratio given as a decimal (`0.5`) or a fraction (`1/2`).
pub fn parse_fraction(text: &str) -> Result<f64, String> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: f64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad fraction {text:?}"))?;
        let den: f64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad fraction {text:?}"))?;
        if den == 0.0 {
            return Err(format!("zero denominator in {text:?}"));
        }
        Ok(num / den)
    } else {
        text.parse().map_err(|_| format!("bad number {text:?}"))
    }
}

/// Parses `a,b,c` into a vector of indices.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad index {tok:?}"))
        })
        .collect()
}
