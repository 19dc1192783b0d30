//! graph6 and edge-list codecs.
//!
//! graph6 here covers orders up to 62: one byte `n + 63`, then the upper
//! triangle of the adjacency matrix in column order (`x(0,1) x(0,2) x(1,2)
//! x(0,3) ..`), six bits per byte, big-endian, zero padded, each group
//! offset by 63. Encoding is canonical, so nonzero padding is rejected.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Graph6ErrorKind, Result};
use crate::graph::Graph;

pub const GRAPH6_HEADER: &[u8] = b">>graph6<<";
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" => Ok(Format::Graph6),
            "edgelist" => Ok(Format::EdgeList),
            _ => Err(Error::Unknown { what: "format", name: s.to_string() }),
        }
    }
}

fn g6_err(offset: usize, kind: Graph6ErrorKind) -> Error {
    Error::Graph6 { offset, kind }
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 record. A leading `>>graph6<<` header and a trailing
/// line terminator are accepted; byte offsets in errors count from the
/// start of `record`.
pub fn parse_graph6(record: &[u8]) -> Result<Graph> {
    let mut body = record;
    let mut base = 0;
    if let Some(rest) = body.strip_prefix(GRAPH6_HEADER) {
        body = rest;
        base = GRAPH6_HEADER.len();
    }
    if let Some(rest) = body.strip_suffix(b"\n") {
        body = rest.strip_suffix(b"\r").unwrap_or(rest);
    }

    let Some(&first) = body.first() else {
        return Err(g6_err(base, Graph6ErrorKind::Empty));
    };
    if !(63..=126).contains(&first) {
        return Err(g6_err(base, Graph6ErrorKind::InvalidByte(first)));
    }
    if first == 126 {
        return Err(g6_err(base, Graph6ErrorKind::OrderTooLarge));
    }
    let n = (first - 63) as usize;
    let need = data_len(n);
    let data = &body[1..];
    for (i, &b) in data.iter().enumerate().take(need) {
        if !(63..=126).contains(&b) {
            return Err(g6_err(base + 1 + i, Graph6ErrorKind::InvalidByte(b)));
        }
    }
    if data.len() < need {
        return Err(g6_err(base + body.len(), Graph6ErrorKind::Truncated));
    }
    if data.len() > need {
        return Err(g6_err(base + 1 + need, Graph6ErrorKind::TrailingData));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..need * 6).any(bit) {
        return Err(g6_err(base + need, Graph6ErrorKind::NonzeroPadding));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Encodes `g` as graph6 without header or newline.
pub fn encode_graph6(g: &Graph) -> Result<Vec<u8>> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooLarge { order: n, max: GRAPH6_MAX_ORDER });
    }
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    Ok(out)
}

/// graph6 as a `String`; panics above order 62.
pub fn graph6_string(g: &Graph) -> String {
    let bytes = encode_graph6(g).expect("graph6 supports order <= 62");
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Parses a file of graph6 records, one per line. Blank lines are skipped
/// and the header may prefix the first record or stand on its own line.
pub fn parse_graph6_lines(text: &[u8]) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut offset = 0;
    for line in text.split(|&b| b == b'\n') {
        let record = line.strip_suffix(b"\r").unwrap_or(line);
        let stripped = record.strip_prefix(GRAPH6_HEADER).unwrap_or(record);
        if !stripped.is_empty() {
            graphs.push(parse_graph6(record).map_err(|e| match e {
                Error::Graph6 { offset: o, kind } => Error::Graph6 { offset: offset + o, kind },
                other => other,
            })?);
        }
        offset += line.len() + 1;
    }
    Ok(graphs)
}

/// Parses one or more edge-list blocks: a line `n m` followed by `m` lines
/// `u v` with 0-based labels. Blank lines between blocks are ignored.
pub fn parse_edgelist(text: &str) -> Result<Vec<Graph>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut graphs = Vec::new();
    while let Some((line, header)) = lines.next() {
        let [n, m] = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for k in 0..m {
            let Some((line, l)) = lines.next() else {
                return Err(Error::EdgeList {
                    line,
                    message: format!("expected {m} edges, found {k}"),
                });
            };
            let [u, v] = parse_pair(line, l)?;
            edges.push((u, v));
        }
        let g = Graph::from_edges(n, edges).map_err(|e| Error::EdgeList { line, message: e.to_string() })?;
        graphs.push(g);
    }
    Ok(graphs)
}

fn parse_pair(line: usize, text: &str) -> Result<[usize; 2]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    let bad = || Error::EdgeList { line, message: format!("expected two integers, got `{text}`") };
    if fields.len() != 2 {
        return Err(bad());
    }
    let a = fields[0].parse().map_err(|_| bad())?;
    let b = fields[1].parse().map_err(|_| bad())?;
    Ok([a, b])
}

pub fn encode_edgelist(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.order(), g.size());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    s
}

/// Reads every graph in `path`.
pub fn read_graphs(path: &Path, format: Format) -> std::result::Result<Vec<Graph>, ReadError> {
    let bytes = fs::read(path).map_err(|e| ReadError::Io(path.display().to_string(), e.to_string()))?;
    let graphs = match format {
        Format::Graph6 => parse_graph6_lines(&bytes)?,
        Format::EdgeList => {
            let text = String::from_utf8(bytes)
                .map_err(|_| Error::EdgeList { line: 0, message: "input is not UTF-8".into() })?;
            parse_edgelist(&text)?
        }
    };
    Ok(graphs)
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Parse(#[from] Error),
}
