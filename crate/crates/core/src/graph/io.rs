use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphBuilder, NodeAttributes, Pair};
use crate::error::{Error, Result};

/// Layout of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeListFormat {
    /// `u v`
    #[default]
    Pairs,
    /// `subject relation object`; the relation is discarded.
    Triples,
}

impl FromStr for EdgeListFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairs" => Ok(EdgeListFormat::Pairs),
            "triples" => Ok(EdgeListFormat::Triples),
            other => Err(Error::InvalidArgument(format!(
                "unknown edge-list format `{other}` (expected pairs or triples)"
            ))),
        }
    }
}

/// Counts of input records silently dropped while loading.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

pub fn read_edge_list<R: BufRead>(
    reader: R,
    format: EdgeListFormat,
    source: &Path,
) -> Result<(Graph, LoadReport)> {
    let expected = match format {
        EdgeListFormat::Pairs => 2,
        EdgeListFormat::Triples => 3,
    };
    let mut builder = GraphBuilder::default();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(source, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != expected {
            return Err(Error::Parse {
                path: source.to_path_buf(),
                line: lineno + 1,
                message: format!("expected {expected} tokens, found {}", tokens.len()),
            });
        }
        let (a, b) = (tokens[0], tokens[expected - 1]);
        builder.add_labelled_edge(a, b);
    }
    let (graph, report) = builder.finish();
    if graph.node_count() == 0 {
        return Err(Error::EmptyGraph(source.display().to_string()));
    }
    Ok((graph, report))
}

pub fn load_edge_list_with_report(
    path: &Path,
    format: EdgeListFormat,
) -> Result<(Graph, LoadReport)> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_edge_list(BufReader::new(file), format, path)
}

/// Loads an edge list, logging a warning for dropped self-loops and duplicates.
pub fn load_edge_list(path: &Path, format: EdgeListFormat) -> Result<Graph> {
    let (graph, report) = load_edge_list_with_report(path, format)?;
    if report.self_loops > 0 {
        warn!("{}: dropped {} self-loops", path.display(), report.self_loops);
    }
    if report.duplicate_edges > 0 {
        warn!(
            "{}: dropped {} duplicate edges",
            path.display(),
            report.duplicate_edges
        );
    }
    Ok(graph)
}

/// Reads a `nodeLabel attrValue` sidecar. Labels absent from the graph are
/// skipped with a warning; categories are numbered in first-appearance order.
pub fn load_attributes(graph: &Graph, path: &Path) -> Result<NodeAttributes> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut values = vec![None; graph.node_count()];
    let mut categories: Vec<String> = Vec::new();
    let mut unknown = 0usize;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        let Some(node) = graph.labels().get(tokens[0]) else {
            unknown += 1;
            continue;
        };
        let cat = match categories.iter().position(|c| c == tokens[1]) {
            Some(i) => i,
            None => {
                categories.push(tokens[1].to_owned());
                categories.len() - 1
            }
        };
        values[node.index()] = Some(cat as u32);
    }
    if unknown > 0 {
        warn!("{}: skipped {unknown} attributes of unknown nodes", path.display());
    }
    Ok(NodeAttributes::new(values, categories))
}

/// Writes one `u v` line per edge using the original labels.
pub fn write_edge_list<W: Write>(graph: &Graph, out: W) -> std::io::Result<()> {
    write_pairs(graph, graph.edges(), out)
}

pub fn write_pairs<W: Write>(
    graph: &Graph,
    pairs: impl IntoIterator<Item = Pair>,
    mut out: W,
) -> std::io::Result<()> {
    for p in pairs {
        writeln!(out, "{} {}", graph.label(p.u), graph.label(p.v))?;
    }
    out.flush()
}
