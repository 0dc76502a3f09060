//! Plain-text graph and cost files.
//!
//! Graph files hold `#` comment lines, a header `p <n> <m>` and then `m`
//! edge lines `<u> <v>` with 0-indexed endpoints. Cost files hold lines
//! `<vertex> <cost>`; vertices not listed cost 1.

use std::fs;
use std::io::Write;
use std::path::Path;

use helly_core::{CostFn, Error, Graph};

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: &str) -> Option<[&str; N]> {
    let mut it = line.split_whitespace();
    let mut out = [""; N];
    for slot in &mut out {
        *slot = it.next()?;
    }
    it.next().is_none().then_some(out)
}

pub fn parse_graph_file(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?, path)
}

/// Parses graph text; `path` only labels error messages.
pub fn parse_graph(text: &str, path: &Path) -> Result<Graph, CliError> {
    let err = |line, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| err(0, "missing header line \"p <n> <m>\"".into()))?;
    let (n, m) = match parse_fields::<3>(header) {
        Some(["p", n, m]) => match (n.parse::<usize>(), m.parse::<usize>()) {
            (Ok(n), Ok(m)) => (n, m),
            _ => return Err(err(hline, format!("malformed header {header:?}"))),
        },
        _ => return Err(err(hline, format!("expected header \"p <n> <m>\", found {header:?}"))),
    };
    if n == 0 {
        return Err(err(hline, "a graph needs at least one vertex".into()));
    }

    let mut edges = Vec::with_capacity(m);
    let mut last = hline;
    for (no, line) in lines {
        if edges.len() == m {
            return Err(err(no, format!("more than the {m} edge lines announced by the header")));
        }
        let (u, v) = match parse_fields::<2>(line).map(|[u, v]| (u.parse::<usize>(), v.parse::<usize>())) {
            Some((Ok(u), Ok(v))) => (u, v),
            _ => return Err(err(no, format!("malformed edge line {line:?}"))),
        };
        if let Some(x) = [u, v].into_iter().find(|&x| x >= n) {
            return Err(err(no, format!("vertex {x} out of range for n = {n}")));
        }
        if u == v {
            return Err(err(no, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
        last = no;
    }
    if edges.len() != m {
        return Err(err(last, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edge_list(n, &edges).map_err(|source| CliError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_cost_file(path: &Path, n: usize) -> Result<CostFn, CliError> {
    parse_costs(&read(path)?, n, path)
}

pub fn parse_costs(text: &str, n: usize, path: &Path) -> Result<CostFn, CliError> {
    let err = |line, message: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut costs = vec![1u64; n];
    let mut seen = vec![false; n];
    for (no, line) in content_lines(text) {
        let [v, c] = parse_fields::<2>(line).ok_or_else(|| err(no, format!("expected \"<vertex> <cost>\", found {line:?}")))?;
        let v: usize = v.parse().map_err(|_| err(no, format!("malformed vertex {v:?}")))?;
        if v >= n {
            return Err(err(no, format!("vertex {v} out of range for n = {n}")));
        }
        let c: u64 = c
            .parse()
            .map_err(|_| err(no, format!("cost {c:?} is not a non-negative integer")))?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(err(no, format!("duplicate cost for vertex {v}")));
        }
        costs[v] = c;
    }
    CostFn::new(costs, n).map_err(|source: Error| CliError::Invalid {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `g` in the graph file format, preceded by optional comment lines.
pub fn write_graph<W: Write + ?Sized>(out: &mut W, g: &Graph, comments: &[String]) -> std::io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "p {} {}", g.n(), g.m())?;
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}
