//! Text formats for loop tables, block designs, and action-table
//! rectangles, with deterministic serializers that round-trip.

use thiserror::Error;

use crate::bol::Rectangle;
use crate::designs::{DesignError, IncidenceStructure};
use crate::loops::{LoopError, LoopTable};
use crate::symset::SymSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    /// A line that does not fit the format; lines are 1-based.
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

fn parse_err(line: usize, reason: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        reason: reason.into(),
    }
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<usize>, IoError> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected a number, found {tok:?}")))
        })
        .collect()
}

/// Nonempty, non-comment lines with their 1-based numbers. `#` starts a
/// comment line.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|&(_, line)| !line.is_empty() && !line.starts_with('#'))
}

/// Loop table format: first line the order `n`, then `n` lines of `n`
/// whitespace-separated symbols; the table must satisfy every loop
/// invariant (latin, identity row and column first).
pub fn parse_loop(text: &str) -> Result<LoopTable, IoError> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let header = numbers(line_no, header)?;
    let [n] = header[..] else {
        return Err(parse_err(line_no, "the first line must be the order alone"));
    };
    let mut rows = Vec::with_capacity(n);
    let mut last = line_no;
    for found in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_err(last, format!("expected {n} table rows, found {found}"))
        })?;
        last = line_no;
        let row = numbers(line_no, line)?;
        if row.len() != n {
            return Err(parse_err(
                line_no,
                format!("expected {n} symbols, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, "trailing content after the table"));
    }
    Ok(LoopTable::validate(rows)?)
}

pub fn serialize_loop(q: &LoopTable) -> String {
    let mut out = format!("{}\n", q.order());
    for x in 0..q.order() {
        let row: Vec<String> = q.row(x).iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Design file format: first line `v b`, then `b` lines of point
/// indices in `0..v` (one block per line).
pub fn parse_design(text: &str) -> Result<IncidenceStructure, IoError> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let header = numbers(line_no, header)?;
    let [v, b] = header[..] else {
        return Err(parse_err(line_no, "the first line must be `v b`"));
    };
    if v > 64 {
        return Err(parse_err(line_no, "at most 64 points are supported"));
    }
    let mut blocks = Vec::with_capacity(b);
    let mut last = line_no;
    for found in 0..b {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_err(last, format!("expected {b} block lines, found {found}"))
        })?;
        last = line_no;
        let points = numbers(line_no, line)?;
        if let Some(&p) = points.iter().find(|&&p| p >= v) {
            return Err(parse_err(line_no, format!("point {p} is outside 0..{v}")));
        }
        blocks.push(points.into_iter().collect::<SymSet>());
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, "trailing content after the blocks"));
    }
    Ok(IncidenceStructure::new((0..v).collect(), blocks)?)
}

/// Serializes with points renumbered to `0..v` in ascending order of
/// their labels, so the output is canonical for any point set.
pub fn serialize_design(d: &IncidenceStructure) -> String {
    let points = d.points();
    let index_of = |p: usize| points.binary_search(&p).expect("blocks lie on the points");
    let mut out = format!("{} {}\n", d.v(), d.b());
    for block in d.blocks() {
        let idx: Vec<String> = block
            .iter()
            .map(|p| index_of(p).to_string())
            .collect();
        out.push_str(&idx.join(" "));
        out.push('\n');
    }
    out
}

/// Rectangle dump format: first line `rows m`, then one line of `m`
/// symbols per row.
pub fn parse_rectangle(text: &str) -> Result<Rectangle, IoError> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("rows") {
        return Err(parse_err(line_no, "the first line must be `rows m`"));
    }
    let m: usize = toks
        .next()
        .and_then(|tok| tok.parse().ok())
        .ok_or_else(|| parse_err(line_no, "the first line must be `rows m`"))?;
    if toks.next().is_some() {
        return Err(parse_err(line_no, "the first line must be `rows m`"));
    }
    let mut rows = Vec::new();
    for (line_no, line) in lines {
        let row = numbers(line_no, line)?;
        if row.len() != m {
            return Err(parse_err(
                line_no,
                format!("expected {m} symbols, found {}", row.len()),
            ));
        }
        rows.push(row);
    }
    Ok(Rectangle::new(rows))
}

pub fn serialize_rectangle(r: &Rectangle) -> String {
    let mut out = format!("rows {}\n", r.rows().first().map_or(0, Vec::len));
    for row in r.rows() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
