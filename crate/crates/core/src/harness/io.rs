//! Instance file formats.
//!
//! Similarity matrices are headerless comma-separated rows, one row per element. Graphs are
//! edge lists of whitespace-separated `u v w` lines with 0-based ids; blank lines and lines
//! starting with `#` are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::objectives::{Instance, ObjectiveKind, SimilarityMatrix, WeightedGraph};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Reads a square similarity matrix. Negative entries are clamped to 0.
pub fn load_similarity_csv(path: impl AsRef<Path>) -> Result<SimilarityMatrix> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut negatives = 0usize;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(path, line, e.to_string())
        })?;
        let line_no = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| parse_err(path, line_no, format!("'{cell}' is not a number")))
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_err(
                    path,
                    line_no,
                    format!("row has {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        negatives += row.iter().filter(|&&x| x < 0.0).count();
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput("similarity matrix file has no rows"));
    }
    if rows.len() != rows[0].len() {
        return Err(Error::Shape(format!(
            "{}: {} rows of {} columns is not square",
            path.display(),
            rows.len(),
            rows[0].len()
        )));
    }
    if negatives > 0 {
        log::warn!("{}: clamped {negatives} negative similarities to 0", path.display());
    }
    SimilarityMatrix::from_rows(rows)
}

/// Reads an undirected weighted edge list. Repeated pairs, in either direction, are summed;
/// self-loops are dropped. The node count is the largest id plus one.
pub fn load_edge_list(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let text = read(path)?;
    let mut edges = Vec::new();
    let mut n = 0usize;
    let mut self_loops = 0usize;
    for (ix, line) in text.lines().enumerate() {
        let line_no = ix + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(
                path,
                line_no,
                format!("expected 'u v w', got {} fields", fields.len()),
            ));
        }
        let id = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(path, line_no, format!("'{s}' is not a non-negative integer id")))
        };
        let (u, v) = (id(fields[0])?, id(fields[1])?);
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| parse_err(path, line_no, format!("'{}' is not a number", fields[2])))?;
        if !w.is_finite() || w < 0.0 {
            return Err(Error::Config(format!(
                "{}:{line_no}: edge weight must be non-negative and finite, got {w}",
                path.display()
            )));
        }
        n = n.max(u + 1).max(v + 1);
        if u == v {
            self_loops += 1;
            continue;
        }
        edges.push((u, v, w));
    }
    if self_loops > 0 {
        log::warn!("{}: dropped {self_loops} self-loops", path.display());
    }
    WeightedGraph::from_edges(n, edges)
}

/// Loads `path` as the given objective; `lambda` is used by coverage only.
pub fn load_instance(kind: ObjectiveKind, path: impl AsRef<Path>, lambda: f64) -> Result<Instance> {
    match kind {
        ObjectiveKind::CoverageDiversity => Instance::coverage(load_similarity_csv(path)?, lambda),
        ObjectiveKind::FacilityDiversity => Ok(Instance::facility(load_similarity_csv(path)?)),
        ObjectiveKind::GraphCut => Ok(Instance::cut(load_edge_list(path)?)),
    }
}

pub fn write_similarity_csv(sim: &SimilarityMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| csv_io(path, e))?;
    for u in 0..sim.len() {
        w.serialize(sim.row(u)).map_err(|e| csv_io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

fn csv_io(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::io(path, source),
        other => Error::Config(format!("{}: {other:?}", path.display())),
    }
}

pub fn write_edge_list(graph: &WeightedGraph, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for (u, v, w) in graph.edges() {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    let path = path.as_ref();
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Writes an instance in the format its objective is loaded from.
pub fn write_instance(inst: &Instance, path: impl AsRef<Path>) -> Result<()> {
    match inst {
        Instance::CoverageDiversity(c) => write_similarity_csv(c.similarity(), path),
        Instance::FacilityDiversity(f) => write_similarity_csv(f.similarity(), path),
        Instance::GraphCut(g) => write_edge_list(g.graph(), path),
    }
}
