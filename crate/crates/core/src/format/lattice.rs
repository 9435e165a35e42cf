//! Main-skeleton files: an `n <n>` header, an optional `labels` line for the
//! ground set, and one line `X -> Y` per point meaning `f(X) = Y`, with
//! points written as brace sets. The function must be total.

use super::{content_lines, parse_count_header, parse_error, take_labels, SymbolTable};
use crate::error::Result;
use crate::lattice::MainSkeleton;
use crate::mask::SubsetMask;

pub fn parse_main_skeleton(text: &str) -> Result<(MainSkeleton, SymbolTable)> {
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty main-skeleton file"))?;
    let n = parse_count_header(line_no, header, "n")?;
    let table = take_labels(&mut lines, n)?;
    let points = 1usize << n;
    let mut table_f: Vec<Option<usize>> = vec![None; points];
    for (line_no, line) in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| parse_error(line_no, "expected `X -> Y`"))?;
        let x = table
            .parse_set(lhs.trim())
            .map_err(|m| parse_error(line_no, m))?;
        let y = table
            .parse_set(rhs.trim())
            .map_err(|m| parse_error(line_no, m))?;
        if table_f[x.index()].replace(y.index()).is_some() {
            return Err(parse_error(line_no, format!("point {lhs} mapped twice")));
        }
    }
    let complete: Vec<usize> = table_f
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                parse_error(
                    0,
                    format!(
                        "f is not total: no image for {}",
                        table.render_set(&SubsetMask::from_index(n, i))
                    ),
                )
            })
        })
        .collect::<Result<_>>()?;
    Ok((MainSkeleton::new(n, complete)?, table))
}

pub fn write_main_skeleton(skeleton: &MainSkeleton, table: &SymbolTable) -> String {
    let n = skeleton.ground_size();
    let mut out = format!("n {n}\n");
    out.push_str(&format!("labels {}\n", table.labels().join(",")));
    for (x, &fx) in skeleton.table().iter().enumerate() {
        out.push_str(&format!(
            "{} -> {}\n",
            table.render_set(&SubsetMask::from_index(n, x)),
            table.render_set(&SubsetMask::from_index(n, fx)),
        ));
    }
    out
}

/// Brace-set labels for all `2^n` states over a ground table, in state-index
/// order. These act as the vertex labels of zero-context and transition
/// graphs.
pub fn state_labels(ground: &SymbolTable) -> Vec<String> {
    (0..1usize << ground.len())
        .map(|i| ground.render_set(&SubsetMask::from_index(ground.len(), i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "n 2\nlabels a,b\n{} -> {}\n{a} -> {a,b}\n{b} -> {a}\n{a,b} -> {}\n";
        let (m, table) = parse_main_skeleton(text).unwrap();
        assert_eq!(m.table(), &[0, 3, 1, 0]);
        let (again, _) = parse_main_skeleton(&write_main_skeleton(&m, &table)).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn partial_functions_are_rejected() {
        let text = "n 2\n{} -> {}\n";
        assert!(parse_main_skeleton(text).is_err());
    }

    #[test]
    fn state_labels_enumerate_the_powerset() {
        let labels = state_labels(&SymbolTable::numeric(2));
        assert_eq!(labels, vec!["{}", "{1}", "{2}", "{1,2}"]);
    }
}
