//! Text formats for groups (`.grp`) and designs (`.dsg`).
//!
//! ```text
//! # comment
//! degree 5
//! (0 1 2 3 4)
//! (0 1)
//! ```
//!
//! A design file starts with `v N` and lists one block per line as
//! space-separated points; repeated lines are repeated blocks.

use std::path::Path;

use crate::design::Design;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn header(line: Option<(usize, &str)>, key: &str) -> Result<(usize, usize)> {
    let (no, text) = line.ok_or_else(|| Error::ParseLine {
        line: 1,
        msg: format!("missing `{key} N` header"),
    })?;
    let mut words = text.split_whitespace();
    match (words.next(), words.next().map(str::parse::<usize>), words.next()) {
        (Some(k), Some(Ok(n)), None) if k == key => Ok((no, n)),
        _ => Err(Error::ParseLine {
            line: no,
            msg: format!("expected `{key} N`, found `{text}`"),
        }),
    }
}

pub fn parse_grp(text: &str) -> Result<PermGroup> {
    let mut lines = content_lines(text);
    let (_, degree) = header(lines.next(), "degree")?;
    let gens = lines
        .map(|(no, l)| {
            Permutation::parse_cycles(degree, l).map_err(|e| Error::ParseLine {
                line: no,
                msg: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

/// `.grp` text; each comment string becomes a leading `# ` line. Identity
/// generators are omitted.
pub fn format_grp(group: &PermGroup, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("degree {}\n", group.degree()));
    for g in group.generators().iter().filter(|g| !g.is_identity()) {
        out.push_str(&g.to_cycle_string());
        out.push('\n');
    }
    out
}

/// Leading `# key: value` comment lines of a fixture file.
pub fn metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .take_while(|l| l.starts_with('#'))
        .filter_map(|l| {
            let (k, v) = l.trim_start_matches('#').split_once(':')?;
            Some((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub fn parse_dsg(text: &str) -> Result<Design> {
    let mut lines = content_lines(text);
    let (_, v) = header(lines.next(), "v")?;
    let mut blocks = Vec::new();
    for (no, l) in lines {
        let block = l
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>().map_err(|_| Error::ParseLine {
                    line: no,
                    msg: format!("bad point `{t}`"),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        if block.iter().any(|&p| p as usize >= v) {
            return Err(Error::ParseLine {
                line: no,
                msg: format!("point outside 0..{v}"),
            });
        }
        blocks.push(block);
    }
    Design::new(v, blocks).map_err(|e| Error::ParseLine {
        line: 0,
        msg: e.to_string(),
    })
}

pub fn format_dsg(d: &Design, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("# ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("v {}\n", d.v()));
    for b in d.blocks() {
        let pts: Vec<String> = b.iter().map(|p| p.to_string()).collect();
        out.push_str(&pts.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}

/// Loads a group from a `.grp` file, or a `.mat` file through its matrix action.
pub fn load_group(path: &Path, max_degree: u64) -> Result<PermGroup> {
    let text = read_to_string(path)?;
    let with_path = |e: Error| Error::Fixture(format!("{}: {e}", path.display()));
    match path.extension().and_then(|e| e.to_str()) {
        Some("mat") => crate::constructors::MatrixFixture::parse(&text)
            .and_then(|m| m.to_group(max_degree))
            .map_err(with_path),
        _ => parse_grp(&text).map_err(with_path),
    }
}

pub fn load_design(path: &Path) -> Result<Design> {
    let text = read_to_string(path)?;
    parse_dsg(&text).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))
}
