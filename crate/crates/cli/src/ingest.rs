//! Graph input: edge lists (`source,target,weight`) and labeled input-output matrices.

use std::collections::HashMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rzf_core::WeightedDigraph;

use crate::error::{CliError, Result};

pub const EDGE_HEADER: [&str; 3] = ["source", "target", "weight"];

fn reader<R: Read>(input: R, flexible: bool) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(false).flexible(flexible).trim(csv::Trim::All).from_reader(input)
}

fn parse_weight(field: &str, line: u64) -> Result<f64> {
    let w: f64 = field.parse().map_err(|_| CliError::Parse { line, msg: format!("`{field}` is not a number") })?;
    if !w.is_finite() || w < 0.0 {
        return Err(CliError::Parse { line, msg: format!("weight must be a nonnegative number, got {field}") });
    }
    Ok(w)
}

/// Reads an edge list. Vertices get dense ids in order of first appearance.
pub fn read_edge_csv<R: Read>(input: R) -> Result<WeightedDigraph> {
    let mut rdr = reader(input, false);
    let mut records = rdr.records();
    let header = records.next().ok_or_else(|| CliError::Data("empty edge list".into()))??;
    if header.iter().ne(EDGE_HEADER) {
        return Err(CliError::Parse { line: 1, msg: format!("header must be `{}`", EDGE_HEADER.join(",")) });
    }
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut seen: HashMap<(usize, usize), u64> = HashMap::new();
    let mut edges = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut id = |name: &str| {
            *ids.entry(name.to_string()).or_insert_with(|| {
                labels.push(name.to_string());
                labels.len() - 1
            })
        };
        let (u, v) = (id(&rec[0]), id(&rec[1]));
        let w = parse_weight(&rec[2], line)?;
        if let Some(first) = seen.insert((u, v), line) {
            return Err(CliError::Parse {
                line,
                msg: format!("duplicate edge {} -> {} (first on line {first})", &rec[0], &rec[1]),
            });
        }
        edges.push((u, v, w));
    }
    if labels.is_empty() {
        return Err(CliError::Data("edge list has no edges".into()));
    }
    Ok(WeightedDigraph::new(labels.len(), edges)?.with_labels(labels)?)
}

/// Reads a square matrix whose first row and first column hold the same labels in the
/// same order. Cell `(i, j)` is the weight of `i -> j`; the diagonal gives self-loops.
pub fn read_io_matrix<R: Read>(input: R) -> Result<WeightedDigraph> {
    let mut rdr = reader(input, true);
    let mut records = rdr.records();
    let header = records.next().ok_or_else(|| CliError::Data("empty matrix".into()))??;
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    if n == 0 {
        return Err(CliError::Parse { line: 1, msg: "header row has no labels".into() });
    }
    let mut edges = Vec::new();
    let mut rows = 0;
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != n + 1 {
            return Err(CliError::Parse { line, msg: format!("expected {} fields, found {}", n + 1, rec.len()) });
        }
        if rows >= n {
            return Err(CliError::Parse { line, msg: format!("matrix is not square: more than {n} rows") });
        }
        if rec[0] != labels[rows] {
            return Err(CliError::Parse {
                line,
                msg: format!("row label `{}` does not match column label `{}`", &rec[0], labels[rows]),
            });
        }
        for (j, cell) in rec.iter().skip(1).enumerate() {
            let w = parse_weight(cell, line)?;
            if w > 0.0 {
                edges.push((rows, j, w));
            }
        }
        rows += 1;
    }
    if rows != n {
        return Err(CliError::Data(format!("matrix is not square: {n} columns but {rows} rows")));
    }
    WeightedDigraph::new(n, edges)?.with_labels(labels).map_err(|e| CliError::Data(e.to_string()))
}

/// Edge list if the first line is the edge header, matrix otherwise.
pub fn parse_graph(text: &str) -> Result<WeightedDigraph> {
    let first = text.lines().next().unwrap_or("");
    let cells: Vec<&str> = first.split(',').map(str::trim).collect();
    if cells == EDGE_HEADER {
        read_edge_csv(text.as_bytes())
    } else {
        read_io_matrix(text.as_bytes())
    }
}

pub fn load_graph(path: &Path) -> Result<WeightedDigraph> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    parse_graph(&text)
}

/// Writes every stored edge as `source,target,weight`, ordered by tail then head.
pub fn write_edge_csv<W: Write>(g: &WeightedDigraph, out: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    wtr.write_record(EDGE_HEADER)?;
    for (u, v, w) in g.edges() {
        wtr.write_record([g.label(u), g.label(v), w.to_string()])?;
    }
    wtr.flush().map_err(|e| CliError::io("write", e))?;
    Ok(())
}
