//! Edge-list parsing and benchmark record output.

use crate::graph::{Graph, VertexId};
use rustc_hash::FxHashMap;
use serde::Serialize;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected two endpoints, got {content:?}")]
    BadLine { line: usize, content: String },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// A parsed graph plus the original vertex labels: `labels[id]` is the
/// token the file used for dense id `id`.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub name: String,
    pub graph: Graph,
    pub labels: Vec<String>,
}

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments, `p ...` header lines are skipped, and on data lines the
/// first two tokens are the endpoints (extra tokens such as weights are
/// ignored). Labels are arbitrary strings, mapped to dense ids in order of
/// first appearance. Self-loops are dropped and duplicate edges merged.
pub fn parse_graph<R: BufRead>(reader: R) -> Result<(Graph, Vec<String>), IoError> {
    let mut graph = Graph::new();
    let mut ids: FxHashMap<String, VertexId> = FxHashMap::default();
    let mut labels: Vec<String> = Vec::new();
    let mut intern = |token: &str, graph: &mut Graph| -> VertexId {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len() as VertexId;
        ids.insert(token.to_string(), id);
        labels.push(token.to_string());
        graph.add_vertex(id);
        id
    };
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let first = tokens.next().expect("non-empty line has a token");
        if first == "p" {
            continue;
        }
        let Some(second) = tokens.next() else {
            return Err(IoError::BadLine { line: lineno + 1, content: trimmed.to_string() });
        };
        let u = intern(first, &mut graph);
        let w = intern(second, &mut graph);
        if u != w {
            graph.add_edge(u, w);
        }
    }
    Ok((graph, labels))
}

/// Reads a graph file; the instance name is the file stem.
pub fn read_graph_file<P: AsRef<Path>>(path: P) -> Result<LoadedGraph, IoError> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let (graph, labels) = parse_graph(BufReader::new(file))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(LoadedGraph { name, graph, labels })
}

/// Writes the id-to-label mapping alongside an output file, one
/// `id<TAB>label` pair per line.
pub fn write_label_mapping<P: AsRef<Path>>(path: P, labels: &[String]) -> Result<(), IoError> {
    let mut f = File::create(path)?;
    for (id, label) in labels.iter().enumerate() {
        writeln!(f, "{id}\t{label}")?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn from_name(name: &str) -> Option<OutputFormat> {
        match name {
            "csv" => Some(OutputFormat::Csv),
            "json" => Some(OutputFormat::Json),
            _ => None,
        }
    }
}

enum Sink {
    Csv(csv::Writer<Box<dyn Write + Send>>),
    Json {
        out: Box<dyn Write + Send>,
        records: Vec<serde_json::Value>,
    },
}

/// Streams benchmark records to CSV (flushed after every row, so partial
/// runs keep their completed rows) or collects them into one JSON array.
pub struct RecordWriter {
    sink: Sink,
}

impl RecordWriter {
    pub fn to_path(path: &PathBuf, format: OutputFormat) -> Result<Self, IoError> {
        let out: Box<dyn Write + Send> = Box::new(File::create(path)?);
        Ok(Self::new(out, format))
    }

    pub fn to_stdout(format: OutputFormat) -> Self {
        Self::new(Box::new(std::io::stdout()), format)
    }

    fn new(out: Box<dyn Write + Send>, format: OutputFormat) -> Self {
        let sink = match format {
            OutputFormat::Csv => Sink::Csv(csv::Writer::from_writer(out)),
            OutputFormat::Json => Sink::Json { out, records: Vec::new() },
        };
        RecordWriter { sink }
    }

    pub fn write<T: Serialize>(&mut self, record: &T) -> Result<(), IoError> {
        match &mut self.sink {
            Sink::Csv(w) => {
                w.serialize(record)?;
                w.flush()?;
            }
            Sink::Json { records, .. } => {
                records.push(serde_json::to_value(record)?);
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<(), IoError> {
        match self.sink {
            Sink::Csv(mut w) => {
                w.flush()?;
            }
            Sink::Json { mut out, records } => {
                serde_json::to_writer_pretty(&mut out, &records)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}
