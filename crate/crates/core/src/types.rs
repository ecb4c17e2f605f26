//! Partial edge-colorings of small complete graphs used as building blocks
//! by the global constructions: Types H, P, M, C, 1 and 2.
//!
//! Every builder takes the host vertices (arbitrary labels in the big graph)
//! and a palette, works on local indices `0..len` internally, and maps the
//! result back onto the host labels.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::coloring::Color;
use crate::edge::Edge;
use crate::factor::{hamiltonian_decompose, one_factorize, one_factorize_containing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("type {kind} needs {expected} host vertices parity, got {got} vertices")]
    ParityMismatch { kind: &'static str, expected: &'static str, got: usize },
    #[error("type {kind} needs a palette of {expected} colors, got {got}")]
    PaletteSizeMismatch { kind: &'static str, expected: usize, got: usize },
    #[error("host vertices must be distinct")]
    RepeatedHostVertex,
    #[error("special edge {0} does not lie inside the host")]
    SpecialEdgeOutsideHost(Edge),
    #[error("special vertex {0} must not be a host vertex")]
    SpecialVertexInsideHost(usize),
    #[error("not a maximum matching of the host: {0}")]
    NotMaximumMatching(String),
}

/// A coloring of some edges among `host_vertices` with colors from `palette`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    pub host_vertices: Vec<usize>,
    pub colored_edges: BTreeMap<Edge, Color>,
    pub palette: Vec<Color>,
}

/// The colors a vertex sees on its colored edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OwnerRecord {
    pub vertex: usize,
    pub owned_colors: BTreeSet<Color>,
}

impl PartialColoring {
    fn new(host_vertices: Vec<usize>, palette: Vec<Color>) -> Self {
        PartialColoring {
            host_vertices,
            colored_edges: BTreeMap::new(),
            palette,
        }
    }

    pub fn color_of(&self, a: usize, b: usize) -> Option<Color> {
        Edge::try_new(a, b).and_then(|e| self.colored_edges.get(&e).copied())
    }

    pub fn owner_record(&self, vertex: usize) -> OwnerRecord {
        let owned_colors = self
            .colored_edges
            .iter()
            .filter(|(e, _)| e.contains(vertex))
            .map(|(_, &c)| c)
            .collect();
        OwnerRecord { vertex, owned_colors }
    }

    pub fn owners(&self) -> Vec<OwnerRecord> {
        self.host_vertices.iter().map(|&v| self.owner_record(v)).collect()
    }

    /// Edges of each palette color.
    pub fn classes(&self) -> BTreeMap<Color, Vec<Edge>> {
        let mut out: BTreeMap<Color, Vec<Edge>> =
            self.palette.iter().map(|&c| (c, Vec::new())).collect();
        for (e, c) in &self.colored_edges {
            out.entry(*c).or_default().push(*e);
        }
        out
    }

    /// Both structural invariants: endpoints inside the host, every palette
    /// color used, no foreign color.
    pub fn is_well_formed(&self) -> bool {
        let host: BTreeSet<_> = self.host_vertices.iter().collect();
        let pal: BTreeSet<_> = self.palette.iter().collect();
        let used: BTreeSet<_> = self.colored_edges.values().collect();
        self.colored_edges
            .keys()
            .all(|e| host.contains(&e.u) && host.contains(&e.v))
            && used == pal
    }
}

fn check_distinct(vertices: &[usize]) -> Result<(), ColoringError> {
    let set: BTreeSet<_> = vertices.iter().collect();
    if set.len() == vertices.len() {
        Ok(())
    } else {
        Err(ColoringError::RepeatedHostVertex)
    }
}

fn check_palette(kind: &'static str, palette: &[Color], expected: usize) -> Result<(), ColoringError> {
    if palette.len() == expected {
        Ok(())
    } else {
        Err(ColoringError::PaletteSizeMismatch { kind, expected, got: palette.len() })
    }
}

/// Type H: `vertices.len()` odd; each palette color is a Hamiltonian cycle.
pub fn type_h(vertices: &[usize], palette: &[Color]) -> Result<PartialColoring, ColoringError> {
    let m = vertices.len();
    if m < 3 || m % 2 == 0 {
        return Err(ColoringError::ParityMismatch { kind: "H", expected: "an odd number >= 3 of", got: m });
    }
    check_distinct(vertices)?;
    check_palette("H", palette, (m - 1) / 2)?;
    let dec = hamiltonian_decompose(m).expect("odd order");
    let mut out = PartialColoring::new(vertices.to_vec(), palette.to_vec());
    for (i, &c) in palette.iter().enumerate() {
        for e in dec.cycle_edges(i) {
            out.colored_edges.insert(Edge::new(vertices[e.u], vertices[e.v]), c);
        }
    }
    Ok(out)
}

/// Type P: `vertices.len()` even; Type H on one extra auxiliary vertex,
/// restricted back, so each color is a Hamiltonian path.
pub fn type_p(vertices: &[usize], palette: &[Color]) -> Result<PartialColoring, ColoringError> {
    let m = vertices.len();
    if m < 2 || m % 2 == 1 {
        return Err(ColoringError::ParityMismatch { kind: "P", expected: "an even number >= 2 of", got: m });
    }
    check_distinct(vertices)?;
    check_palette("P", palette, m / 2)?;
    let dec = hamiltonian_decompose(m + 1).expect("odd order");
    let mut out = PartialColoring::new(vertices.to_vec(), palette.to_vec());
    for (i, &c) in palette.iter().enumerate() {
        for e in dec.cycle_edges(i) {
            // local vertex m is the auxiliary one
            if e.v < m {
                out.colored_edges.insert(Edge::new(vertices[e.u], vertices[e.v]), c);
            }
        }
    }
    Ok(out)
}

/// Type M: `vertices.len()` even; each color is a perfect matching.
pub fn type_m(vertices: &[usize], palette: &[Color]) -> Result<PartialColoring, ColoringError> {
    let m = vertices.len();
    if m < 2 || m % 2 == 1 {
        return Err(ColoringError::ParityMismatch { kind: "M", expected: "an even number >= 2 of", got: m });
    }
    check_distinct(vertices)?;
    check_palette("M", palette, m - 1)?;
    let fac = one_factorize(m).expect("even order");
    let mut out = PartialColoring::new(vertices.to_vec(), palette.to_vec());
    for (f, &c) in fac.factors.iter().zip(palette) {
        for e in f {
            out.colored_edges.insert(Edge::new(vertices[e.u], vertices[e.v]), c);
        }
    }
    Ok(out)
}

/// Type C on K_{q+1} minus the special edge `deleted`-`kept`: Type M on the
/// host without `deleted`, then `deleted` copies the colors `kept` sees.
pub fn type_c(
    vertices: &[usize],
    special: (usize, usize),
    palette: &[Color],
) -> Result<PartialColoring, ColoringError> {
    let m = vertices.len();
    if m < 3 || m % 2 == 0 {
        return Err(ColoringError::ParityMismatch { kind: "C", expected: "an odd number >= 3 of", got: m });
    }
    check_distinct(vertices)?;
    let (deleted, kept) = special;
    let edge = Edge::try_new(deleted, kept)
        .ok_or(ColoringError::SpecialEdgeOutsideHost(Edge { u: deleted, v: kept }))?;
    if !vertices.contains(&deleted) || !vertices.contains(&kept) {
        return Err(ColoringError::SpecialEdgeOutsideHost(edge));
    }
    check_palette("C", palette, m - 2)?;
    let rest: Vec<usize> = vertices.iter().copied().filter(|&x| x != deleted).collect();
    let inner = type_m(&rest, palette)?;
    let mut out = PartialColoring::new(vertices.to_vec(), palette.to_vec());
    out.colored_edges = inner.colored_edges;
    for &w in rest.iter().filter(|&&w| w != kept) {
        let c = out.color_of(kept, w).expect("Type M colors every edge");
        out.colored_edges.insert(Edge::new(deleted, w), c);
    }
    Ok(out)
}

/// Result of a Type 1 coloring: the coloring of K_{q+1} - M plus, for each
/// matched vertex, the single palette color it does not see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOne {
    pub coloring: PartialColoring,
    pub unmatched: usize,
    pub missing: BTreeMap<usize, Color>,
}

fn check_maximum_matching(vertices: &[usize], matching: &[(usize, usize)]) -> Result<usize, ColoringError> {
    let m = vertices.len();
    if m % 2 == 0 {
        return Err(ColoringError::ParityMismatch { kind: "1", expected: "an odd number of", got: m });
    }
    if matching.len() != m / 2 {
        return Err(ColoringError::NotMaximumMatching(format!(
            "{} edges, expected {}",
            matching.len(),
            m / 2
        )));
    }
    let mut covered = BTreeSet::new();
    for &(a, b) in matching {
        for x in [a, b] {
            if !vertices.contains(&x) {
                return Err(ColoringError::NotMaximumMatching(format!("vertex {x} outside host")));
            }
            if !covered.insert(x) {
                return Err(ColoringError::NotMaximumMatching(format!("vertex {x} covered twice")));
            }
        }
    }
    Ok(vertices
        .iter()
        .copied()
        .find(|x| !covered.contains(x))
        .expect("odd host leaves one vertex unmatched"))
}

/// Type 1 on K_{q+1} - M: a 1-factorization of K_{q+2} (host plus an
/// auxiliary vertex) in which M plus the auxiliary edge at the unmatched
/// vertex is one factor; the other `q` factors give the colors.
pub fn type_1(
    vertices: &[usize],
    matching: &[(usize, usize)],
    palette: &[Color],
) -> Result<TypeOne, ColoringError> {
    check_distinct(vertices)?;
    let unmatched = check_maximum_matching(vertices, matching)?;
    let m = vertices.len();
    check_palette("1", palette, m - 1)?;
    let local = |x: usize| vertices.iter().position(|&y| y == x).expect("host vertex");
    let aux = m;
    let mut prescribed: Vec<Edge> = matching.iter().map(|&(a, b)| Edge::new(local(a), local(b))).collect();
    prescribed.push(Edge::new(local(unmatched), aux));
    prescribed.sort_unstable();
    let fac = one_factorize_containing(m + 1, &prescribed).expect("valid perfect matching");

    let mut out = PartialColoring::new(vertices.to_vec(), palette.to_vec());
    let mut missing = BTreeMap::new();
    for (f, &c) in fac.factors[1..].iter().zip(palette) {
        for e in f {
            if e.v == aux {
                missing.insert(vertices[e.u], c);
            } else {
                out.colored_edges.insert(Edge::new(vertices[e.u], vertices[e.v]), c);
            }
        }
    }
    Ok(TypeOne { coloring: out, unmatched, missing })
}

/// Type 2: Type 1 on the host, then for each ordered pair `(a, b)` of the
/// matching the spoke `special`-`a` takes the missing color of `a` and the
/// matching edge `a`-`b` takes the missing color of `b`.
pub fn type_2(
    vertices: &[usize],
    matching: &[(usize, usize)],
    special: usize,
    palette: &[Color],
) -> Result<PartialColoring, ColoringError> {
    if vertices.contains(&special) {
        return Err(ColoringError::SpecialVertexInsideHost(special));
    }
    let TypeOne { coloring, missing, .. } = type_1(vertices, matching, palette)?;
    let mut out = coloring;
    for &(a, b) in matching {
        out.colored_edges.insert(Edge::new(special, a), missing[&a]);
        out.colored_edges.insert(Edge::new(a, b), missing[&b]);
    }
    out.host_vertices.push(special);
    Ok(out)
}

/// Orders each pair so the smaller vertex receives the spoke.
pub fn spoke_to_smaller(matching: &[(usize, usize)]) -> Vec<(usize, usize)> {
    matching.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pal(r: std::ops::RangeInclusive<Color>) -> Vec<Color> {
        r.collect()
    }

    /// Connected, acyclic unless `cycle`, max degree 2, spanning `n` vertices.
    fn is_path_or_cycle(edges: &[Edge], vertices: &[usize], cycle: bool) -> bool {
        let mut deg = BTreeMap::new();
        for e in edges {
            *deg.entry(e.u).or_insert(0) += 1;
            *deg.entry(e.v).or_insert(0) += 1;
        }
        let spanning = vertices.iter().all(|v| deg.contains_key(v)) && deg.len() == vertices.len();
        let want_edges = if cycle { vertices.len() } else { vertices.len() - 1 };
        let degrees_ok = deg.values().all(|&d| if cycle { d == 2 } else { d <= 2 });
        // connectivity by flood fill
        let mut seen = BTreeSet::from([vertices[0]]);
        let mut frontier = vec![vertices[0]];
        while let Some(x) = frontier.pop() {
            for e in edges.iter().filter(|e| e.contains(x)) {
                let y = e.other(x).unwrap();
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        spanning && edges.len() == want_edges && degrees_ok && seen.len() == vertices.len()
    }

    #[test]
    fn type_h_cases() {
        let t = type_h(&[4, 9, 2], &[7]).unwrap();
        assert_eq!(t.colored_edges.len(), 3);
        assert!(t.colored_edges.values().all(|&c| c == 7));

        for q in [4usize, 8] {
            let verts: Vec<usize> = (10..10 + q + 1).collect();
            let t = type_h(&verts, &pal(1..=(q / 2) as Color)).unwrap();
            assert_eq!(t.colored_edges.len(), (q + 1) * q / 2);
            for (_, es) in t.classes() {
                assert!(is_path_or_cycle(&es, &verts, true));
            }
            for rec in t.owners() {
                assert_eq!(rec.owned_colors.len(), q / 2);
            }
            assert!(t.is_well_formed());
        }
    }

    #[test]
    fn type_p_cases() {
        let t = type_p(&[3, 5], &[1]).unwrap();
        assert_eq!(t.colored_edges.len(), 1);
        for q in [3usize, 5] {
            let verts: Vec<usize> = (0..q + 1).map(|x| 2 * x).collect();
            let t = type_p(&verts, &pal(1..=((q + 1) / 2) as Color)).unwrap();
            assert_eq!(t.colored_edges.len(), (q + 1) * q / 2);
            for (_, es) in t.classes() {
                assert!(is_path_or_cycle(&es, &verts, false));
            }
            assert!(t.owners().iter().all(|r| r.owned_colors.len() == (q + 1) / 2));
        }
    }

    #[test]
    fn parity_and_palette_errors() {
        assert!(matches!(type_h(&[0, 1, 2, 3], &[1, 2]), Err(ColoringError::ParityMismatch { .. })));
        assert!(matches!(type_p(&[0, 1, 2], &[1]), Err(ColoringError::ParityMismatch { .. })));
        assert!(matches!(type_m(&[0, 1, 2], &[1, 2]), Err(ColoringError::ParityMismatch { .. })));
        assert!(matches!(
            type_h(&[0, 1, 2, 3, 4], &[1]),
            Err(ColoringError::PaletteSizeMismatch { expected: 2, got: 1, .. })
        ));
    }

    #[test]
    fn type_m_cases() {
        assert_eq!(type_m(&[0, 1], &[1]).unwrap().colored_edges.len(), 1);
        for m in [4usize, 6] {
            let verts: Vec<usize> = (0..m).collect();
            let t = type_m(&verts, &pal(1..=(m - 1) as Color)).unwrap();
            for (_, es) in t.classes() {
                assert_eq!(es.len(), m / 2);
                let touched: BTreeSet<_> = es.iter().flat_map(|e| [e.u, e.v]).collect();
                assert_eq!(touched.len(), m);
            }
            assert_eq!(t.colored_edges.len(), m * (m - 1) / 2);
        }
    }

    #[test]
    fn type_c_figure_pattern() {
        // K_5 - uv with 3 colors: classes of 2 or 3 edges touching all 5 vertices
        let verts = [0, 1, 2, 3, 4];
        let t = type_c(&verts, (0, 1), &[1, 2, 3]).unwrap();
        assert_eq!(t.colored_edges.len(), 9);
        assert_eq!(t.color_of(0, 1), None);
        for (_, es) in t.classes() {
            assert!(es.len() == 2 || es.len() == 3);
            let touched: BTreeSet<_> = es.iter().flat_map(|e| [e.u, e.v]).collect();
            assert_eq!(touched.len(), 5);
        }
    }

    #[test]
    fn type_c_smallest_and_q8() {
        let t = type_c(&[5, 6, 7], (5, 6), &[4]).unwrap();
        assert_eq!(t.colored_edges.len(), 2);
        assert_eq!(t.color_of(5, 6), None);
        assert!(t.owners().iter().all(|r| r.owned_colors.len() == 1));

        let verts: Vec<usize> = (0..9).collect();
        let t = type_c(&verts, (3, 7), &pal(1..=7)).unwrap();
        assert!(t.owners().iter().all(|r| r.owned_colors.len() == 7));
        assert_eq!(t.colored_edges.len(), 35);
    }

    #[test]
    fn type_c_special_edge_outside() {
        assert!(matches!(
            type_c(&[0, 1, 2], (0, 9), &[1]),
            Err(ColoringError::SpecialEdgeOutsideHost(_))
        ));
    }

    #[test]
    fn type_1_figure_profile() {
        // v = 0, u1..u4 = 1..4, M = {u1u4, u2u3}
        let t = type_1(&[0, 1, 2, 3, 4], &[(1, 4), (2, 3)], &[1, 2, 3, 4]).unwrap();
        assert_eq!(t.unmatched, 0);
        let owners = t.coloring.owners();
        assert_eq!(owners[0].owned_colors.len(), 4);
        for rec in &owners[1..] {
            assert_eq!(rec.owned_colors.len(), 3);
            let missing = t.missing[&rec.vertex];
            assert!(!rec.owned_colors.contains(&missing));
        }
        assert_eq!(t.coloring.color_of(1, 4), None);
        assert_eq!(t.coloring.color_of(2, 3), None);
        // missing colors are pairwise distinct
        let distinct: BTreeSet<_> = t.missing.values().collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn type_1_smallest() {
        let t = type_1(&[7, 8, 9], &[(8, 9)], &[1, 2]).unwrap();
        assert_eq!(t.unmatched, 7);
        assert_eq!(t.coloring.owner_record(7).owned_colors, BTreeSet::from([1, 2]));
        assert_eq!(t.coloring.owner_record(8).owned_colors.len(), 1);
        assert_eq!(t.coloring.owner_record(9).owned_colors.len(), 1);
    }

    #[test]
    fn type_1_rejects_bad_matching() {
        assert!(matches!(
            type_1(&[0, 1, 2, 3, 4], &[(1, 2), (2, 3)], &[1, 2, 3, 4]),
            Err(ColoringError::NotMaximumMatching(_))
        ));
        assert!(matches!(
            type_1(&[0, 1, 2, 3, 4], &[(1, 2)], &[1, 2, 3, 4]),
            Err(ColoringError::NotMaximumMatching(_))
        ));
    }

    #[test]
    fn type_2_figure_profile() {
        let host = [0, 1, 2, 3, 4];
        let matching = spoke_to_smaller(&[(4, 1), (2, 3)]);
        let one = type_1(&host, &matching, &[1, 2, 3, 4]).unwrap();
        let t = type_2(&host, &matching, 10, &[1, 2, 3, 4]).unwrap();
        for &v in &host {
            assert_eq!(t.owner_record(v).owned_colors.len(), 4, "vertex {v}");
        }
        assert_eq!(t.colored_edges.len(), 10 + 2);
        for &(a, _) in &matching {
            assert_eq!(t.color_of(10, a), Some(one.missing[&a]));
        }
        assert!(t.is_well_formed());
    }

    #[test]
    fn type_2_smallest_and_error() {
        let t = type_2(&[0, 1, 2], &[(1, 2)], 5, &[1, 2]).unwrap();
        for v in 0..3 {
            assert_eq!(t.owner_record(v).owned_colors.len(), 2);
        }
        assert_eq!(t.colored_edges.len(), 4);
        assert_eq!(
            type_2(&[0, 1, 2], &[(1, 2)], 2, &[1, 2]),
            Err(ColoringError::SpecialVertexInsideHost(2))
        );
    }

    #[test]
    fn type_2_larger_orders() {
        for q in [8usize, 16] {
            let host: Vec<usize> = (0..=q).collect();
            let matching: Vec<(usize, usize)> = (0..q / 2).map(|i| (1 + i, 1 + q / 2 + i)).collect();
            let palette = pal(1..=q as Color);
            let t = type_2(&host, &matching, 100, &palette).unwrap();
            assert!(host.iter().all(|&v| t.owner_record(v).owned_colors.len() == q));
            assert_eq!(t.colored_edges.len(), (q + 1) * q / 2 + q / 2);
            assert!(t.classes().values().all(|es| es.len() == q / 2 + 1));
        }
    }
}
