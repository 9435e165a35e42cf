//! Graph files: a `vertices <N>` header, an optional `labels` line, then
//! either edge lines `u -> v` or a `matrix:` block of `×`/`.` rows (the
//! adjacency-matrix notation used in worked examples).

use super::{content_lines, parse_count_header, parse_error, take_labels, SymbolTable};
use crate::error::Result;
use crate::graph::Digraph;

pub fn parse_digraph(text: &str) -> Result<(Digraph, SymbolTable)> {
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty graph file"))?;
    let n = parse_count_header(line_no, header, "vertices")?;
    let table = take_labels(&mut lines, n)?;
    let mut graph = Digraph::edgeless(n);

    if let Some(&(_, line)) = lines.peek() {
        if line == "matrix:" {
            lines.next();
            for row in 0..n {
                let (line_no, line) = lines
                    .next()
                    .ok_or_else(|| parse_error(0, format!("matrix ends after {row} rows")))?;
                for (col, cell) in matrix_cells(line_no, line, n)?.into_iter().enumerate() {
                    if cell {
                        graph.add_edge(row, col).expect("in range");
                    }
                }
            }
            if let Some((line_no, _)) = lines.next() {
                return Err(parse_error(line_no, "unexpected content after the matrix"));
            }
            return Ok((graph, table));
        }
    }

    for (line_no, line) in lines {
        let (u, v) = parse_edge(line_no, line, &table)?;
        graph.add_edge(u, v).expect("in range");
    }
    Ok((graph, table))
}

pub(crate) fn parse_edge(line_no: usize, line: &str, table: &SymbolTable) -> Result<(usize, usize)> {
    let (lhs, rhs) = line
        .split_once("->")
        .ok_or_else(|| parse_error(line_no, "expected `u -> v`"))?;
    let resolve = |side: &str| {
        table
            .index_of(side.trim())
            .ok_or_else(|| parse_error(line_no, format!("unknown vertex `{}`", side.trim())))
    };
    Ok((resolve(lhs)?, resolve(rhs)?))
}

/// A matrix row: either whitespace-separated cell tokens or one contiguous
/// string of cell characters. `×`, `x`, `X`, `1` mark an edge; `.`, `0`, `-`
/// mark none.
fn matrix_cells(line_no: usize, line: &str, n: usize) -> Result<Vec<bool>> {
    let cell = |c: char| match c {
        '×' | 'x' | 'X' | '1' => Some(true),
        '.' | '0' | '-' => Some(false),
        _ => None,
    };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let cells: Option<Vec<bool>> = if tokens.len() == n {
        tokens
            .iter()
            .map(|t| {
                let mut chars = t.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => cell(c),
                    _ => None,
                }
            })
            .collect()
    } else if tokens.len() == 1 && tokens[0].chars().count() == n {
        tokens[0].chars().map(cell).collect()
    } else {
        None
    };
    cells.ok_or_else(|| parse_error(line_no, format!("expected {n} matrix cells")))
}

pub fn write_digraph(graph: &Digraph, table: &SymbolTable) -> String {
    let mut out = format!("vertices {}\n", graph.num_vertices());
    out.push_str(&format!("labels {}\n", table.labels().join(",")));
    for (u, v) in graph.edges() {
        out.push_str(&format!("{} -> {}\n", table.label(u), table.label(v)));
    }
    out
}
