//! Reading and writing `.knot` files.
//!
//! Two encodings are accepted. The text form has one `x y z` triple per line,
//! with `#` starting a comment; a comment of the form `# name: ...` names the
//! knot. The JSON form is `{ "points": [[x, y, z], ...], "closed": true }`
//! with an optional `"name"`. Files are written in the text form with 17
//! significant digits, which reproduces every coordinate bit for bit.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use stickknot::{Point3, PolyKnot};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid JSON knot: {0}")]
    Json(#[from] serde_json::Error),
    #[error("open curves are not supported")]
    Open,
    #[error("no points found")]
    Empty,
}

fn default_closed() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotFile {
    pub points: Vec<[f64; 3]>,
    #[serde(default = "default_closed")]
    pub closed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl KnotFile {
    pub fn from_polygon(p: &PolyKnot, name: Option<String>) -> Self {
        Self {
            points: p.vertices().iter().map(Point3::coords).collect(),
            closed: true,
            name,
        }
    }

    pub fn vertices(&self) -> Vec<Point3> {
        self.points.iter().copied().map(Point3::from).collect()
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let file = if text.trim_start().starts_with('{') {
            serde_json::from_str::<KnotFile>(text)?
        } else {
            parse_lines(text)?
        };
        if !file.closed {
            return Err(FileError::Open);
        }
        if file.points.is_empty() {
            return Err(FileError::Empty);
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, FileError> {
        let text = fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# name: {name}\n"));
        }
        for [x, y, z] in &self.points {
            out.push_str(&format!("{x:.16e} {y:.16e} {z:.16e}\n"));
        }
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        fs::write(path, self.to_text())
    }
}

fn parse_lines(text: &str) -> Result<KnotFile, FileError> {
    let mut points = Vec::new();
    let mut name = None;
    for (idx, raw) in text.lines().enumerate() {
        let (body, comment) = match raw.find('#') {
            Some(at) => (&raw[..at], Some(&raw[at + 1..])),
            None => (raw, None),
        };
        if let Some(rest) = comment.and_then(|c| c.trim().strip_prefix("name:")) {
            name = Some(rest.trim().to_string());
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 3 {
            return Err(FileError::Syntax {
                line: idx + 1,
                msg: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut xyz = [0.0; 3];
        for (slot, f) in xyz.iter_mut().zip(&fields) {
            *slot = f.parse::<f64>().map_err(|e| FileError::Syntax {
                line: idx + 1,
                msg: format!("{f:?}: {e}"),
            })?;
            if !slot.is_finite() {
                return Err(FileError::Syntax {
                    line: idx + 1,
                    msg: format!("{f:?} is not finite"),
                });
            }
        }
        points.push(xyz);
    }
    Ok(KnotFile {
        points,
        closed: true,
        name,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_with_comments() {
        let f = KnotFile::parse("# name: sq\n0 0 0\n1 0 0 # corner\n\n  1 1 0\n0 1 0\n").unwrap();
        assert_eq!(f.points.len(), 4);
        assert_eq!(f.name.as_deref(), Some("sq"));
        assert_eq!(f.points[1], [1.0, 0.0, 0.0]);
    }

    #[test]
    fn json_form() {
        let f = KnotFile::parse(r#"{ "points": [[0,0,0],[1,0,0],[1,1,0],[0,1,0]] }"#).unwrap();
        assert!(f.closed);
        assert_eq!(f.points.len(), 4);
        assert!(matches!(
            KnotFile::parse(r#"{ "points": [[0,0,0]], "closed": false }"#),
            Err(FileError::Open)
        ));
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(
            KnotFile::parse("0 0\n"),
            Err(FileError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            KnotFile::parse("0 0 0\n1 x 0\n"),
            Err(FileError::Syntax { line: 2, .. })
        ));
        assert!(matches!(KnotFile::parse("0 0 inf\n"), Err(FileError::Syntax { .. })));
        assert!(matches!(KnotFile::parse("# nothing\n"), Err(FileError::Empty)));
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let f = KnotFile {
            points: vec![
                [0.1 + 0.2, -1.0 / 3.0, 1e-300],
                [f64::MAX, -f64::MIN_POSITIVE, 2.0f64.sqrt()],
            ],
            closed: true,
            name: Some("odd values".into()),
        };
        assert_eq!(KnotFile::parse(&f.to_text()).unwrap(), f);
    }
}
