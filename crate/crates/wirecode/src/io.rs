//! Text input formats: stabilizer code files and edge lists.

use std::fmt;

use wirecode_core::code::StabilizerCode;
use wirecode_core::error::CodeError;
use wirecode_core::graph::GeneralGraph;
use wirecode_core::pauli::parse_pauli;

/// Input error pointing at a 1-based line of the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Content lines with their 1-based numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Parses one `IXYZ` string per line. All rows must have equal length and
/// commute pairwise.
pub fn parse_code(text: &str) -> Result<StabilizerCode, ParseError> {
    let mut checks = Vec::new();
    let mut lines = Vec::new();
    for (no, l) in content_lines(text) {
        let p = parse_pauli(l).map_err(|e| err(no, e.to_string()))?;
        if let Some(first) = checks.first().map(|c: &wirecode_core::PauliOperator| c.num_qubits()) {
            if p.num_qubits() != first {
                return Err(err(
                    no,
                    format!("check has {} qubits, expected {first}", p.num_qubits()),
                ));
            }
        }
        checks.push(p);
        lines.push(no);
    }
    if checks.is_empty() {
        return Err(err(0, "code file has no checks"));
    }
    StabilizerCode::new(checks).map_err(|e| match e {
        CodeError::NonCommuting { a, b } => err(
            lines[b],
            format!(
                "check on line {} anticommutes with check on line {}",
                lines[b], lines[a]
            ),
        ),
        CodeError::IdentityCheck { index } => err(lines[index], "check is the identity"),
        CodeError::LengthMismatch { index, .. } => err(lines[index], e.to_string()),
        other => err(0, other.to_string()),
    })
}

/// Parses a `u v` edge list. Vertices are numbered from 0 and the vertex
/// count is one more than the largest label.
pub fn parse_graph(text: &str) -> Result<GeneralGraph, ParseError> {
    let mut edges = Vec::new();
    for (no, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(no, format!("expected two vertex labels, found {}", fields.len())));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(no, format!("invalid vertex label {s:?}")))
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        if u == v {
            return Err(err(no, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    GeneralGraph::from_edges(&edges).map_err(|e| err(0, e.to_string()))
}
