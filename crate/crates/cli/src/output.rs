use std::path::{Path, PathBuf};

use anyhow::Context;

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Parses `a:b` or a single value `a` as an inclusive range.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (a, b),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

/// Parses a whitespace- or comma-separated point list.
pub fn parse_points(s: &str) -> Result<Vec<u32>, String> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| format!("bad point `{t}`")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3:4"), Ok((3, 4)));
        assert_eq!(parse_range("7"), Ok((7, 7)));
        assert!(parse_range("5:2").is_err());
        assert!(parse_range("a:2").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_points("0 1, 4"), Ok(vec![0, 1, 4]));
        assert!(parse_points("0 x").is_err());
    }
}
