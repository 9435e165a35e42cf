//! Reaction-system files. Text form:
//!
//! ```text
//! background 1,2,3,4
//! a1: {1} ! {3} -> {2}
//! ```
//!
//! with one reaction per line (the `name:` prefix is optional and products
//! may be `{}`). A JSON mirror carries the fields `background` and
//! `reactions[{r,i,p}]`; JSON input is detected by a leading `{`.

use serde::{Deserialize, Serialize};

use super::{content_lines, parse_error, split_top_level, SymbolTable};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::reaction::{Reaction, ReactionSystem};

pub fn parse_reaction_system(text: &str) -> Result<(ReactionSystem, SymbolTable)> {
    if text.trim_start().starts_with('{') {
        return parse_json(text);
    }
    let mut lines = content_lines(text).peekable();
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, "empty reaction-system file"))?;
    let rest = header
        .strip_prefix("background")
        .ok_or_else(|| parse_error(line_no, "expected `background <labels>`"))?;
    let labels = split_top_level(rest);
    let table =
        SymbolTable::new(labels).map_err(|e| parse_error(line_no, e.to_string()))?;

    let mut reactions = Vec::new();
    for (line_no, line) in lines {
        reactions.push(parse_reaction_line(line_no, line, &table)?);
    }
    let rs = ReactionSystem::new(table.len(), reactions)?
        .with_labels(table.labels().to_vec())?;
    Ok((rs, table))
}

fn parse_reaction_line(line_no: usize, line: &str, table: &SymbolTable) -> Result<Reaction> {
    // Strip an optional `name:` prefix; names may not contain braces.
    let body = match line.split_once(':') {
        Some((name, rest)) if !name.contains('{') => rest.trim(),
        _ => line,
    };
    let (reactants, rest) = body
        .split_once('!')
        .ok_or_else(|| parse_error(line_no, "expected `{r} ! {i} -> {p}`"))?;
    let (inhibitors, products) = rest
        .split_once("->")
        .ok_or_else(|| parse_error(line_no, "expected `{r} ! {i} -> {p}`"))?;
    let parse = |part: &str| {
        table
            .parse_set(part.trim())
            .map_err(|m| parse_error(line_no, m))
    };
    Reaction::new(parse(reactants)?, parse(inhibitors)?, parse(products)?)
        .map_err(|e| parse_error(line_no, e.to_string()))
}

pub fn write_reaction_system(rs: &ReactionSystem) -> String {
    let table = table_of(rs);
    let mut out = format!("background {}\n", table.labels().join(","));
    for (k, r) in rs.reactions().iter().enumerate() {
        out.push_str(&format!(
            "a{}: {} ! {} -> {}\n",
            k + 1,
            table.render_set(r.reactants()),
            table.render_set(r.inhibitors()),
            table.render_set(r.products()),
        ));
    }
    out
}

pub(crate) fn table_of(rs: &ReactionSystem) -> SymbolTable {
    match rs.labels() {
        Some(labels) => SymbolTable::new(labels.to_vec()).expect("labels were validated"),
        None => SymbolTable::numeric(rs.background_size()),
    }
}

#[derive(Serialize, Deserialize)]
struct RsJson {
    background: Vec<String>,
    reactions: Vec<ReactionJson>,
}

#[derive(Serialize, Deserialize)]
struct ReactionJson {
    r: Vec<String>,
    i: Vec<String>,
    p: Vec<String>,
}

fn parse_json(text: &str) -> Result<(ReactionSystem, SymbolTable)> {
    let doc: RsJson = serde_json::from_str(text)
        .map_err(|e| parse_error(e.line(), e.to_string()))?;
    let table = SymbolTable::new(doc.background)?;
    let to_mask = |labels: &[String]| -> Result<SubsetMask> {
        let mut mask = SubsetMask::empty(table.len());
        for l in labels {
            let idx = table
                .index_of(l)
                .ok_or_else(|| Error::Invalid(format!("unknown label `{l}`")))?;
            mask.insert(idx);
        }
        Ok(mask)
    };
    let reactions = doc
        .reactions
        .iter()
        .map(|r| Reaction::new(to_mask(&r.r)?, to_mask(&r.i)?, to_mask(&r.p)?))
        .collect::<Result<Vec<_>>>()?;
    let rs = ReactionSystem::new(table.len(), reactions)?
        .with_labels(table.labels().to_vec())?;
    Ok((rs, table))
}

pub fn reaction_system_to_json(rs: &ReactionSystem) -> String {
    let table = table_of(rs);
    let names = |mask: &SubsetMask| mask.iter().map(|e| table.label(e).to_string()).collect();
    let doc = RsJson {
        background: table.labels().to_vec(),
        reactions: rs
            .reactions()
            .iter()
            .map(|r| ReactionJson {
                r: names(r.reactants()),
                i: names(r.inhibitors()),
                p: names(r.products()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Parses a state-sequence file: one brace set per line.
pub fn parse_state_sequence(text: &str, table: &SymbolTable) -> Result<Vec<SubsetMask>> {
    content_lines(text)
        .map(|(line_no, line)| table.parse_set(line).map_err(|m| parse_error(line_no, m)))
        .collect()
}
