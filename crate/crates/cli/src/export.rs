//! DOT and CSV dumps of a certificate, plus the CSV reader that undoes the
//! CSV dump.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, CertificateError};

/// Distinct pen color for class `c` of `k`: hues spread around the wheel.
pub fn pen_color(c: u32, k: u32) -> String {
    let h = (c - 1) as f64 / k.max(1) as f64;
    format!("{h:.6} 0.850 0.800")
}

pub fn to_dot(cert: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph K{} {{", cert.n);
    let q = cert.q.map_or_else(|| "-".to_string(), |q| q.to_string());
    let _ = writeln!(s, "  // construction={} q={} k={}", cert.construction, q, cert.k);
    s.push_str("  node [shape=circle];\n");
    for v in 0..cert.n {
        let _ = writeln!(s, "  {v};");
    }
    for &(u, v, c) in &cert.edges {
        let _ = writeln!(s, "  {u} -- {v} [color=\"{}\", label=\"{c}\"];", pen_color(c, cert.k));
    }
    s.push_str("}\n");
    s
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvEdge {
    u: usize,
    v: usize,
    color: u32,
}

/// `u,v,color` rows after `# key=value` metadata lines.
pub fn to_csv(cert: &Certificate) -> anyhow::Result<String> {
    let mut s = String::new();
    let _ = writeln!(s, "# schema_version={}", cert.schema_version);
    let _ = writeln!(s, "# n={}", cert.n);
    if let Some(q) = cert.q {
        let _ = writeln!(s, "# q={q}");
    }
    let _ = writeln!(s, "# k={}", cert.k);
    let _ = writeln!(s, "# construction={}", cert.construction);
    if let Some(p) = &cert.palettes {
        let _ = writeln!(s, "# palettes={}", serde_json::to_string(p)?);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for &(u, v, color) in &cert.edges {
        w.serialize(CsvEdge { u, v, color })?;
    }
    s.push_str(&String::from_utf8(w.into_inner()?)?);
    Ok(s)
}

fn meta_err(msg: String) -> CertificateError {
    CertificateError::Invalid(msg)
}

pub fn from_csv(text: &str) -> Result<Certificate, CertificateError> {
    let mut schema_version = None;
    let mut n = None;
    let mut q = None;
    let mut k = None;
    let mut construction = None;
    let mut palettes = None;
    for line in text.lines().filter_map(|l| l.strip_prefix('#')) {
        let Some((key, value)) = line.trim().split_once('=') else { continue };
        let num = |v: &str| v.parse::<u64>().map_err(|e| meta_err(format!("metadata {key}: {e}")));
        match key {
            "schema_version" => schema_version = Some(num(value)? as u32),
            "n" => n = Some(num(value)? as usize),
            "q" => q = Some(num(value)? as u32),
            "k" => k = Some(num(value)? as u32),
            "construction" => construction = Some(value.to_string()),
            "palettes" => palettes = Some(serde_json::from_str(value)?),
            _ => {}
        }
    }
    let missing = |key: &str| meta_err(format!("missing metadata line `# {key}=`"));
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let mut edges = Vec::new();
    for row in reader.deserialize::<CsvEdge>() {
        let row = row.map_err(|e| meta_err(format!("csv: {e}")))?;
        edges.push((row.u, row.v, row.color));
    }
    let cert = Certificate {
        schema_version: schema_version.ok_or_else(|| missing("schema_version"))?,
        n: n.ok_or_else(|| missing("n"))?,
        q,
        k: k.ok_or_else(|| missing("k"))?,
        construction: construction.ok_or_else(|| missing("construction"))?,
        palettes,
        edges,
    };
    cert.validate()?;
    Ok(cert)
}
