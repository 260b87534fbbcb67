//! Text format for edge-colored graphs.
//!
//! Line 1: `n r`. Every following non-blank line: `u v c` with `0 <= u, v < n`
//! and `1 <= c <= r`. `#` starts a comment (whole-line or trailing). Writers
//! emit edges sorted by `(u, v)` with `u < v`, LF line endings, no comments —
//! so equal graphs serialize to identical bytes.

use crate::colored::{build_colored_graph, ColoredGraph, ColoringError};
use std::fmt::Write as _;
use std::io;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EcgError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: ColoringError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Parses the format from a string.
pub fn parse_ecg(text: &str) -> Result<ColoredGraph, EcgError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        let parse_field = |s: &str, what: &str| -> Result<usize, EcgError> {
            s.parse::<usize>().map_err(|_| EcgError::Parse {
                line: line_no,
                msg: format!("expected {what}, got `{s}`"),
            })
        };
        if header.is_none() {
            if fields.len() != 2 {
                return Err(EcgError::Parse {
                    line: line_no,
                    msg: format!("header needs `n r`, got {} fields", fields.len()),
                });
            }
            let n = parse_field(fields[0], "vertex count")?;
            let r = parse_field(fields[1], "color count")?;
            header = Some((n, r));
        } else {
            if fields.len() != 3 {
                return Err(EcgError::Parse {
                    line: line_no,
                    msg: format!("edge needs `u v c`, got {} fields", fields.len()),
                });
            }
            let u = parse_field(fields[0], "vertex")?;
            let v = parse_field(fields[1], "vertex")?;
            let c = parse_field(fields[2], "color")?;
            edges.push((u, v, c));
            last_line = line_no;
        }
    }
    let Some((n, r)) = header else {
        return Err(EcgError::Parse {
            line: 1,
            msg: "missing `n r` header".to_string(),
        });
    };
    build_colored_graph(n, r, &edges).map_err(|source| EcgError::Invalid {
        line: last_line,
        source,
    })
}

/// Reads and parses a file.
pub fn read_ecg(path: &Path) -> Result<ColoredGraph, EcgError> {
    let text = std::fs::read_to_string(path)?;
    parse_ecg(&text)
}

/// Serializes to the canonical byte representation.
pub fn format_ecg(cg: &ColoredGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", cg.n(), cg.r());
    for (u, v, c) in cg.colored_edges() {
        let _ = writeln!(out, "{u} {v} {c}");
    }
    out
}

/// Writes the canonical representation to a file.
pub fn write_ecg(path: &Path, cg: &ColoredGraph) -> Result<(), EcgError> {
    std::fs::write(path, format_ecg(cg))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_canonical() {
        let text = "4 2\n2 0 1   # reversed and unsorted on purpose\n0 1 1\n# full comment line\n1 2 1\n2 3 2\n";
        let cg = parse_ecg(text).unwrap();
        assert_eq!(cg.n(), 4);
        assert_eq!(cg.r(), 2);
        assert_eq!(cg.color_of(0, 2), Some(1));
        let canonical = format_ecg(&cg);
        assert_eq!(canonical, "4 2\n0 1 1\n0 2 1\n1 2 1\n2 3 2\n");
        // Parsing canonical output reproduces itself byte for byte.
        assert_eq!(format_ecg(&parse_ecg(&canonical).unwrap()), canonical);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_ecg("3 2\n0 1 1\n0 two 2\n").unwrap_err();
        assert!(matches!(e, EcgError::Parse { line: 3, .. }), "{e}");

        let e = parse_ecg("3 2\n0 1\n").unwrap_err();
        assert!(matches!(e, EcgError::Parse { line: 2, .. }), "{e}");

        let e = parse_ecg("").unwrap_err();
        assert!(matches!(e, EcgError::Parse { line: 1, .. }), "{e}");

        let e = parse_ecg("3 2\n0 1 5\n").unwrap_err();
        assert!(matches!(e, EcgError::Invalid { .. }), "{e}");
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.ecg");
        let cg = parse_ecg("3 1\n0 1 1\n1 2 1\n").unwrap();
        write_ecg(&path, &cg).unwrap();
        let back = read_ecg(&path).unwrap();
        assert_eq!(format_ecg(&back), format_ecg(&cg));
    }
}
