//! Line-oriented quiver description format.
//!
//! ```text
//! # comment
//! vertices: 4            # or: vertices: 1, 2, 7
//! arrow a1: 1 -> 2
//! arrow a2: 3 -> 2
//! relation: a1 a2        # traversal order, first arrow first
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::quiver::{resolve_path, AlgebraError, Arrow, BoundQuiverAlgebra, Quiver, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits on whitespace and commas, remembering 1-based char columns.
fn tokens(line: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col = offset;
    let mut start_col = 0;
    for (bix, ch) in line.char_indices() {
        col += 1;
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (false, None) => {
                start = Some(bix);
                start_col = col;
            }
            (true, Some(s)) => {
                out.push(Token { text: &line[s..bix], column: start_col });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], column: start_col });
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

fn parse_vertex(tok: &Token<'_>, line: usize) -> Result<VertexId, ParseError> {
    match tok.text.parse::<VertexId>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(ParseError::at(
            line,
            tok.column,
            format!("expected a positive vertex id, found `{}`", tok.text),
        )),
    }
}

/// Parses a quiver description. The returned algebra is not yet validated.
pub fn parse_algebra(text: &str) -> Result<BoundQuiverAlgebra, ParseError> {
    let mut vertices: Option<Vec<VertexId>> = None;
    let mut arrows: Vec<(Arrow, usize, usize)> = Vec::new();
    let mut relations: Vec<(Vec<String>, usize, usize)> = Vec::new();

    for (lix, raw) in text.lines().enumerate() {
        let line_no = lix + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.chars().count() - trimmed.chars().count();
        let first_col = indent + 1;

        if let Some(rest) = trimmed.strip_prefix("vertices:") {
            if vertices.is_some() {
                return Err(ParseError::at(line_no, first_col, "duplicate `vertices:` declaration"));
            }
            let toks = tokens(rest, first_col + "vertices:".len() - 1);
            let ids = toks
                .iter()
                .map(|t| parse_vertex(t, line_no))
                .collect::<Result<Vec<_>, _>>()?;
            let has_comma = rest.contains(',');
            vertices = Some(match ids.as_slice() {
                [] => {
                    return Err(ParseError::at(line_no, first_col, "`vertices:` needs a count or a list"))
                }
                [k] if !has_comma => (1..=*k).collect(),
                _ => {
                    let mut sorted = ids.clone();
                    sorted.sort_unstable();
                    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                        return Err(ParseError::at(
                            line_no,
                            first_col,
                            format!("vertex {} listed twice", w[0]),
                        ));
                    }
                    ids
                }
            });
        } else if let Some(rest) = trimmed.strip_prefix("relation:") {
            let toks = tokens(rest, first_col + "relation:".len() - 1);
            if toks.is_empty() {
                return Err(ParseError::at(line_no, first_col, "relation needs at least one arrow id"));
            }
            for t in &toks {
                if !is_identifier(t.text) {
                    return Err(ParseError::at(line_no, t.column, format!("invalid arrow id `{}`", t.text)));
                }
            }
            relations.push((toks.iter().map(|t| t.text.to_owned()).collect(), line_no, toks[0].column));
        } else if let Some(rest) = trimmed.strip_prefix("arrow").filter(|r| r.starts_with(char::is_whitespace)) {
            let toks = tokens(rest, first_col + "arrow".len() - 1);
            // expected shape: <id>: <src> -> <tgt>
            let err = |col: usize, msg: &str| ParseError::at(line_no, col, msg.to_owned());
            let (id_tok, rest_toks) = match toks.split_first() {
                Some(x) => x,
                None => return Err(err(first_col, "expected `arrow <id>: <source> -> <target>`")),
            };
            let (id, colon_separate) = match id_tok.text.strip_suffix(':') {
                Some(id) => (id, false),
                None => (id_tok.text, true),
            };
            if !is_identifier(id) {
                return Err(err(id_tok.column, &format!("invalid arrow id `{}`", id)));
            }
            let mut rest_toks: &[Token<'_>] = rest_toks;
            if colon_separate {
                match rest_toks.split_first() {
                    Some((t, r)) if t.text == ":" => rest_toks = r,
                    Some((t, _)) => return Err(err(t.column, "expected `:` after arrow id")),
                    None => return Err(err(id_tok.column, "expected `:` after arrow id")),
                }
            }
            match rest_toks {
                [s, arrow, t] if arrow.text == "->" => {
                    let source = parse_vertex(s, line_no)?;
                    let target = parse_vertex(t, line_no)?;
                    arrows.push((Arrow { id: id.to_owned(), source, target }, line_no, id_tok.column));
                }
                [_, arrow, ..] if arrow.text != "->" => return Err(err(arrow.column, "expected `->`")),
                [_, _, _, extra, ..] => return Err(err(extra.column, "unexpected trailing input")),
                _ => {
                    let col = rest_toks.last().map_or(id_tok.column, |t| t.column);
                    return Err(err(col, "expected `<source> -> <target>`"));
                }
            }
        } else {
            return Err(ParseError::at(
                line_no,
                first_col,
                "expected `vertices:`, `arrow` or `relation:`",
            ));
        }
    }

    let vertices = vertices.ok_or_else(|| ParseError::at(1, 1, "missing `vertices:` declaration"))?;

    let positions: Vec<(String, usize, usize)> =
        arrows.iter().map(|(a, l, c)| (a.id.clone(), *l, *c)).collect();
    let quiver = Quiver::new(vertices, arrows.into_iter().map(|(a, _, _)| a).collect()).map_err(|e| {
        let find = |id: &str, last: bool| {
            let mut hits = positions.iter().filter(|(a, _, _)| a == id).map(|(_, l, c)| (*l, *c));
            if last { hits.next_back() } else { hits.next() }
        };
        let (line, column) = match &e {
            AlgebraError::UnknownVertex { arrow, .. } => find(arrow, false),
            AlgebraError::DuplicateArrow(arrow) => find(arrow, true),
            _ => None,
        }
        .unwrap_or((1, 1));
        ParseError::at(line, column, e.to_string())
    })?;

    let mut paths = Vec::with_capacity(relations.len());
    for (ids, line, column) in &relations {
        let path = resolve_path(&quiver, ids).map_err(|e| ParseError::at(*line, *column, e.to_string()))?;
        paths.push(path);
    }
    Ok(BoundQuiverAlgebra::from_paths(quiver, paths))
}

/// Renders the normalized document: `vertices: k` when the ids are exactly
/// `1..=k`, otherwise a sorted list; arrows in declaration order; one
/// relation per line.
pub fn serialize_algebra(algebra: &BoundQuiverAlgebra) -> String {
    let q = algebra.quiver();
    let mut out = String::new();
    let vs = q.vertices();
    let contiguous = vs.iter().enumerate().all(|(i, &v)| v as usize == i + 1);
    if contiguous {
        let _ = writeln!(out, "vertices: {}", vs.len());
    } else {
        let list = vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "vertices: {list}");
    }
    for a in q.arrows() {
        let _ = writeln!(out, "arrow {}: {} -> {}", a.id, a.source, a.target);
    }
    for g in algebra.relations().generators() {
        let _ = writeln!(out, "relation: {}", q.render_path(g));
    }
    out
}
