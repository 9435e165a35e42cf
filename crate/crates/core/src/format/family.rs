//! Set-family files: a `universe <n>` header, an optional `labels` line, and
//! one brace set per line.

use super::{content_lines, parse_count_header, parse_error, take_labels, SymbolTable};
use crate::error::Result;
use crate::family::SetFamily;

pub fn parse_set_family(text: &str) -> Result<(SetFamily, SymbolTable)> {
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty set-family file"))?;
    let n = parse_count_header(line_no, header, "universe")?;
    let table = take_labels(&mut lines, n)?;
    let mut members = Vec::new();
    for (line_no, line) in lines {
        let mask = table
            .parse_set(line)
            .map_err(|m| parse_error(line_no, m))?;
        members.push(mask);
    }
    let family = SetFamily::new(n, members)?;
    Ok((family, table))
}

pub fn write_set_family(family: &SetFamily, table: &SymbolTable) -> String {
    let mut out = format!("universe {}\n", family.universe_size());
    out.push_str(&format!("labels {}\n", table.labels().join(",")));
    for member in family.iter() {
        out.push_str(&table.render_set(member));
        out.push('\n');
    }
    out
}
