//! Skeleton files: `universe <n>`, a `sets:` block with one representative
//! and set per line (`rep <z>: {..}`), and an `f:` block of `x -> z` lines.
//! Surjectivity and representative distinctness are validated on load.

use super::graph::parse_edge;
use super::{content_lines, parse_count_header, parse_error, take_labels, SymbolTable};
use crate::error::Result;
use crate::mask::SubsetMask;
use crate::skeleton::Skeleton;

pub fn parse_skeleton(text: &str) -> Result<(Skeleton, SymbolTable)> {
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty skeleton file"))?;
    let n = parse_count_header(line_no, header, "universe")?;
    let table = take_labels(&mut lines, n)?;

    match lines.next() {
        Some((_, "sets:")) => {}
        Some((line_no, _)) => return Err(parse_error(line_no, "expected `sets:`")),
        None => return Err(parse_error(0, "missing `sets:` block")),
    }
    let mut indexed: Vec<(usize, SubsetMask)> = Vec::new();
    let mut in_f = false;
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    for (line_no, line) in lines {
        if line == "f:" {
            in_f = true;
            continue;
        }
        if !in_f {
            let rest = line
                .strip_prefix("rep")
                .ok_or_else(|| parse_error(line_no, "expected `rep <z>: {..}`"))?;
            let (rep, set) = rest
                .split_once(':')
                .ok_or_else(|| parse_error(line_no, "expected `rep <z>: {..}`"))?;
            let rep = table
                .index_of(rep.trim())
                .ok_or_else(|| parse_error(line_no, format!("unknown vertex `{}`", rep.trim())))?;
            let mask = table
                .parse_set(set.trim())
                .map_err(|m| parse_error(line_no, m))?;
            indexed.push((rep, mask));
        } else {
            let (x, z) = parse_edge(line_no, line, &table)?;
            if assignment[x].replace(z).is_some() {
                return Err(parse_error(
                    line_no,
                    format!("vertex `{}` assigned twice", table.label(x)),
                ));
            }
        }
    }
    let assignment: Vec<usize> = assignment
        .into_iter()
        .enumerate()
        .map(|(x, fx)| {
            fx.ok_or_else(|| parse_error(0, format!("vertex `{}` has no f-value", table.label(x))))
        })
        .collect::<Result<_>>()?;
    let skeleton = Skeleton::from_indexed_sets(n, indexed, assignment)?;
    Ok((skeleton, table))
}

pub fn write_skeleton(skeleton: &Skeleton, table: &SymbolTable) -> String {
    let mut out = format!("universe {}\n", skeleton.universe_size());
    out.push_str(&format!("labels {}\n", table.labels().join(",")));
    out.push_str("sets:\n");
    for (i, member) in skeleton.family().iter().enumerate() {
        out.push_str(&format!(
            "rep {}: {}\n",
            table.label(skeleton.representatives()[i]),
            table.render_set(member)
        ));
    }
    out.push_str("f:\n");
    for (x, &fx) in skeleton.assignment().iter().enumerate() {
        out.push_str(&format!("{} -> {}\n", table.label(x), table.label(fx)));
    }
    out
}
