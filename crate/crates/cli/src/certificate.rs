//! Certificate files: a JSON document written one edge per line so golden
//! files diff cleanly. Any JSON reader accepts them; [`Certificate::render`]
//! is the only writer, which makes write/read/write byte-identical.

use std::fmt::Write as _;
use std::path::Path;

use pachrom_core::edge::choose2;
use pachrom_core::{Color, ColorPartition, Construction, Edge, EdgeColoring, Provenance};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("cannot read {path}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed certificate: {0}")]
    Parse(serde_json::Error),
    #[error("invalid certificate: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub n: usize,
    pub q: Option<u32>,
    pub k: u32,
    pub construction: String,
    /// Per-line palettes, indexed by plane line.
    #[serde(default)]
    pub palettes: Option<Vec<Vec<Color>>>,
    /// `(u, v, color)` with `u < v`, 0-based vertices and 1-based colors.
    pub edges: Vec<(usize, usize, Color)>,
}

impl From<serde_json::Error> for CertificateError {
    fn from(e: serde_json::Error) -> Self {
        CertificateError::Parse(e)
    }
}

fn invalid(msg: impl Into<String>) -> CertificateError {
    CertificateError::Invalid(msg.into())
}

impl Certificate {
    pub fn from_coloring(coloring: &EdgeColoring, palettes: Option<&ColorPartition>) -> Self {
        let edges = coloring
            .iter()
            .map(|(e, c)| (e.u, e.v, c.expect("certificates hold total colorings")))
            .collect();
        Certificate {
            schema_version: SCHEMA_VERSION,
            n: coloring.n(),
            q: coloring.provenance.q,
            k: coloring.k(),
            construction: coloring.provenance.construction.clone(),
            palettes: palettes.map(|p| p.classes.clone()),
            edges,
        }
    }

    pub fn from_construction(c: &Construction) -> Self {
        Self::from_coloring(&c.coloring, c.partition.as_ref())
    }

    /// Parses and validates; parse errors carry line and column.
    pub fn parse(text: &str) -> Result<Self, CertificateError> {
        let cert: Certificate = serde_json::from_str(text)?;
        cert.validate()?;
        Ok(cert)
    }

    pub fn load(path: &Path) -> Result<Self, CertificateError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| CertificateError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    /// Schema version, edge coverage and color range.
    pub fn validate(&self) -> Result<(), CertificateError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(invalid(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.edges.len() != choose2(self.n) {
            return Err(invalid(format!(
                "expected {} edges for K_{}, found {}",
                choose2(self.n),
                self.n,
                self.edges.len()
            )));
        }
        self.to_coloring().map(|_| ())
    }

    pub fn to_coloring(&self) -> Result<EdgeColoring, CertificateError> {
        let provenance = Provenance::new(self.construction.clone(), self.q);
        let mut coloring = EdgeColoring::empty(self.n, self.k, provenance);
        for &(u, v, c) in &self.edges {
            if u >= v || v >= self.n {
                return Err(invalid(format!("edge ({u}, {v}) is not a canonical edge of K_{}", self.n)));
            }
            let e = Edge::new(u, v);
            if coloring.get(e).is_some() {
                return Err(invalid(format!("edge {e} is listed twice")));
            }
            coloring.assign(e, c).map_err(|e| invalid(e.to_string()))?;
        }
        if let Some(e) = coloring.first_uncolored() {
            return Err(invalid(format!("edge {e} has no color")));
        }
        if let Some(p) = &self.palettes {
            let partition = ColorPartition { classes: p.clone() };
            if !partition.is_partition_of(self.k) {
                return Err(invalid(format!("palettes do not partition 1..={}", self.k)));
            }
        }
        Ok(coloring)
    }

    pub fn partition(&self) -> Option<ColorPartition> {
        self.palettes.as_ref().map(|p| ColorPartition { classes: p.clone() })
    }

    /// Canonical text: fixed key order, edges sorted, one edge per line.
    pub fn render(&self) -> String {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        let mut s = String::new();
        s.push_str("{\n");
        let _ = writeln!(s, "  \"schema_version\": {},", self.schema_version);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        match self.q {
            Some(q) => {
                let _ = writeln!(s, "  \"q\": {q},");
            }
            None => s.push_str("  \"q\": null,\n"),
        }
        let _ = writeln!(s, "  \"k\": {},", self.k);
        let name = serde_json::to_string(&self.construction).expect("string serializes");
        let _ = writeln!(s, "  \"construction\": {name},");
        match &self.palettes {
            None => s.push_str("  \"palettes\": null,\n"),
            Some(p) => {
                s.push_str("  \"palettes\": [\n");
                for (i, pal) in p.iter().enumerate() {
                    let items: Vec<String> = pal.iter().map(|c| c.to_string()).collect();
                    let sep = if i + 1 < p.len() { "," } else { "" };
                    let _ = writeln!(s, "    [{}]{sep}", items.join(", "));
                }
                s.push_str("  ],\n");
            }
        }
        s.push_str("  \"edges\": [\n");
        for (i, (u, v, c)) in edges.iter().enumerate() {
            let sep = if i + 1 < edges.len() { "," } else { "" };
            let _ = writeln!(s, "    [{u}, {v}, {c}]{sep}");
        }
        s.push_str("  ]\n}\n");
        s
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pachrom_core::connected_coloring;

    fn fano() -> Certificate {
        Certificate::from_construction(&connected_coloring(2).unwrap())
    }

    #[test]
    fn render_parse_render_is_identical() {
        let text = fano().render();
        let back = Certificate::parse(&text).unwrap();
        assert_eq!(back, fano());
        assert_eq!(back.render(), text);
    }

    #[test]
    fn render_is_plain_json() {
        let v: serde_json::Value = serde_json::from_str(&fano().render()).unwrap();
        assert_eq!(v["n"], 7);
        assert_eq!(v["k"], 7);
        assert_eq!(v["edges"].as_array().unwrap().len(), 21);
    }

    #[test]
    fn truncated_text_reports_position() {
        let text = fano().render();
        let cut = &text[..text.len() / 2];
        let err = Certificate::parse(cut).unwrap_err();
        assert!(matches!(err, CertificateError::Parse(_)));
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn rejects_missing_and_duplicate_edges() {
        let mut c = fano();
        c.edges.pop();
        assert!(matches!(c.validate(), Err(CertificateError::Invalid(_))));
        let mut c = fano();
        let first = c.edges[0];
        *c.edges.last_mut().unwrap() = first;
        assert!(c.validate().is_err());
        let mut c = fano();
        c.edges[0].2 = 8;
        assert!(c.validate().is_err());
    }
}
