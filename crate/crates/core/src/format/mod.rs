//! Text formats for families, graphs, skeletons, main skeletons and reaction
//! systems, plus DOT export. All formats are line based; blank lines and `#`
//! comments are skipped, and elements are referred to by labels resolved
//! through a [`SymbolTable`].

mod dot;
mod family;
mod graph;
mod lattice;
mod reaction;
mod skeleton;

pub use dot::{digraph_to_dot, one_out_to_dot};
pub use family::{parse_set_family, write_set_family};
pub use graph::{parse_digraph, write_digraph};
pub use lattice::{parse_main_skeleton, state_labels, write_main_skeleton};
pub use reaction::{
    parse_reaction_system, parse_state_sequence, reaction_system_to_json, write_reaction_system,
};
pub use skeleton::{parse_skeleton, write_skeleton};

use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// Maps between element labels and indices `0..n`. Labels may themselves be
/// brace-wrapped sets (used when the vertices of a graph are states), so all
/// comma splitting in the formats is brace aware.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolTable {
    labels: Vec<String>,
}

impl SymbolTable {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        for label in &labels {
            validate_label(label)?;
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Invalid("duplicate labels".into()));
        }
        Ok(SymbolTable { labels })
    }

    /// The default table: labels `"1"` through `"n"`.
    pub fn numeric(n: usize) -> Self {
        SymbolTable {
            labels: (1..=n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Parses a brace set such as `{a,c}` (or `{}`) into a mask.
    pub fn parse_set(&self, text: &str) -> std::result::Result<SubsetMask, String> {
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| format!("expected a brace set, found `{text}`"))?;
        let mut mask = SubsetMask::empty(self.len());
        for part in split_top_level(inner) {
            match self.index_of(&part) {
                Some(i) => mask.insert(i),
                None => return Err(format!("unknown label `{part}`")),
            }
        }
        Ok(mask)
    }

    /// Renders a mask as a brace set over the table's labels.
    pub fn render_set(&self, mask: &SubsetMask) -> String {
        let mut out = String::from("{");
        for (k, e) in mask.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.label(e));
        }
        out.push('}');
        out
    }
}

fn validate_label(label: &str) -> Result<()> {
    let mut depth = 0i32;
    if label.is_empty() {
        return Err(Error::Invalid("empty label".into()));
    }
    for c in label.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            ',' if depth == 0 => {
                return Err(Error::Invalid(format!(
                    "label `{label}` contains a top-level comma"
                )))
            }
            c if c.is_whitespace() => {
                return Err(Error::Invalid(format!("label `{label}` contains whitespace")))
            }
            ':' | '!' | '>' => {
                return Err(Error::Invalid(format!(
                    "label `{label}` contains a reserved character"
                )))
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Invalid(format!("label `{label}` has unbalanced braces")));
        }
    }
    if depth != 0 {
        return Err(Error::Invalid(format!("label `{label}` has unbalanced braces")));
    }
    Ok(())
}

/// Splits on commas that are not nested inside braces; trims the pieces and
/// drops empties.
pub(crate) fn split_top_level(text: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for c in text.chars() {
        match c {
            '{' => {
                depth += 1;
                current.push(c);
            }
            '}' => {
                depth -= 1;
                current.push(c);
            }
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts
        .into_iter()
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

/// Non-blank, non-comment lines of a document with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

pub(crate) fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses a header line `keyword <count>`, e.g. `universe 8`.
pub(crate) fn parse_count_header(line_no: usize, line: &str, keyword: &str) -> Result<usize> {
    let rest = line
        .strip_prefix(keyword)
        .ok_or_else(|| parse_error(line_no, format!("expected `{keyword} <n>`")))?;
    rest.trim()
        .parse::<usize>()
        .map_err(|_| parse_error(line_no, format!("expected a number after `{keyword}`")))
}

/// Consumes an optional `labels ...` line; falls back to numeric labels.
pub(crate) fn take_labels<'a, I>(
    lines: &mut std::iter::Peekable<I>,
    n: usize,
) -> Result<SymbolTable>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    if let Some(&(line_no, line)) = lines.peek() {
        if let Some(rest) = line.strip_prefix("labels") {
            lines.next();
            let labels = split_top_level(rest);
            if labels.len() != n {
                return Err(parse_error(
                    line_no,
                    format!("{} labels declared for {n} elements", labels.len()),
                ));
            }
            return SymbolTable::new(labels)
                .map_err(|e| parse_error(line_no, e.to_string()));
        }
    }
    Ok(SymbolTable::numeric(n))
}
