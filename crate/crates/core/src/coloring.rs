//! Edge-colorings of K_n.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::edge::{all_edges, choose2, edge_index, Edge};

/// Colors are 1-based: a k-coloring uses `1..=k`.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeColoringError {
    #[error("edge {0} is out of range for K_{1}")]
    EdgeOutOfRange(Edge, usize),
    #[error("color {color} on edge {edge} is outside 1..={k}")]
    ColorOutOfRange { edge: Edge, color: Color, k: u32 },
    #[error("edge {edge} is colored twice ({first} and {second})")]
    Recolored { edge: Edge, first: Color, second: Color },
}

/// Which procedure produced a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub construction: String,
    pub q: Option<u32>,
}

impl Provenance {
    pub fn new(construction: impl Into<String>, q: Option<u32>) -> Self {
        Provenance { construction: construction.into(), q }
    }
}

/// A (possibly partial) map from E(K_n) to `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    k: u32,
    colors: Vec<Option<Color>>,
    pub provenance: Provenance,
}

impl EdgeColoring {
    pub fn empty(n: usize, k: u32, provenance: Provenance) -> Self {
        EdgeColoring { n, k, colors: vec![None; choose2(n)], provenance }
    }

    /// Colors listed in the lexicographic edge order.
    pub fn from_colors(n: usize, k: u32, colors: Vec<Option<Color>>, provenance: Provenance) -> Result<Self, EdgeColoringError> {
        assert_eq!(colors.len(), choose2(n), "one slot per edge");
        for (e, c) in all_edges(n).zip(&colors) {
            if let Some(c) = *c {
                if c == 0 || c > k {
                    return Err(EdgeColoringError::ColorOutOfRange { edge: e, color: c, k });
                }
            }
        }
        Ok(EdgeColoring { n, k, colors, provenance })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, e: Edge) -> Option<Color> {
        self.colors[edge_index(self.n, e)]
    }

    pub fn color_of(&self, a: usize, b: usize) -> Option<Color> {
        Edge::try_new(a, b).and_then(|e| self.get(e))
    }

    /// Colors `e`, refusing to overwrite a different color.
    pub fn assign(&mut self, e: Edge, color: Color) -> Result<(), EdgeColoringError> {
        if e.v >= self.n {
            return Err(EdgeColoringError::EdgeOutOfRange(e, self.n));
        }
        if color == 0 || color > self.k {
            return Err(EdgeColoringError::ColorOutOfRange { edge: e, color, k: self.k });
        }
        let slot = &mut self.colors[edge_index(self.n, e)];
        match *slot {
            Some(prev) if prev != color => Err(EdgeColoringError::Recolored { edge: e, first: prev, second: color }),
            _ => {
                *slot = Some(color);
                Ok(())
            }
        }
    }

    pub fn set(&mut self, e: Edge, color: Option<Color>) {
        self.colors[edge_index(self.n, e)] = color;
    }

    /// `(edge, color)` pairs in lexicographic edge order.
    pub fn iter(&self) -> impl Iterator<Item = (Edge, Option<Color>)> + '_ {
        all_edges(self.n).zip(self.colors.iter().copied())
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn first_uncolored(&self) -> Option<Edge> {
        self.iter().find(|(_, c)| c.is_none()).map(|(e, _)| e)
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    /// Edges of each color `1..=k` (empty vectors for unused colors).
    pub fn classes(&self) -> Vec<Vec<Edge>> {
        let mut out = vec![Vec::new(); self.k as usize];
        for (e, c) in self.iter() {
            if let Some(c) = c {
                out[c as usize - 1].push(e);
            }
        }
        out
    }

    pub fn unused_colors(&self) -> Vec<Color> {
        let mut used = vec![false; self.k as usize];
        for c in self.colors.iter().flatten() {
            used[*c as usize - 1] = true;
        }
        (1..=self.k).filter(|c| !used[*c as usize - 1]).collect()
    }

    /// Class size -> number of classes of that size.
    pub fn class_size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for cls in self.classes() {
            *h.entry(cls.len()).or_insert(0) += 1;
        }
        h
    }

    /// The coloring with vertex `x` renamed `perm[x]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Self {
        let mut out = EdgeColoring::empty(self.n, self.k, self.provenance.clone());
        for (e, c) in self.iter() {
            out.set(Edge::new(perm[e.u], perm[e.v]), c);
        }
        out
    }

    /// The coloring with color `c` renamed `perm[c - 1]`.
    pub fn relabel_colors(&self, perm: &[Color]) -> Self {
        let colors = self.colors.iter().map(|c| c.map(|c| perm[c as usize - 1])).collect();
        EdgeColoring { n: self.n, k: self.k, colors, provenance: self.provenance.clone() }
    }
}

/// Per-line palettes: `classes[l]` is the set of colors line `l` must own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorPartition {
    pub classes: Vec<Vec<Color>>,
}

impl ColorPartition {
    /// Disjoint classes whose union is exactly `1..=k`.
    pub fn is_partition_of(&self, k: u32) -> bool {
        let mut seen = vec![false; k as usize];
        for &c in self.classes.iter().flatten() {
            if c == 0 || c > k || seen[c as usize - 1] {
                return false;
            }
            seen[c as usize - 1] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Consecutive palettes of the given sizes starting at color 1.
    pub fn consecutive(sizes: impl IntoIterator<Item = usize>) -> Self {
        let mut next: Color = 1;
        let classes = sizes
            .into_iter()
            .map(|s| {
                let c: Vec<Color> = (next..next + s as Color).collect();
                next += s as Color;
                c
            })
            .collect();
        ColorPartition { classes }
    }

    pub fn recolored(&self, perm: &[Color]) -> Self {
        ColorPartition {
            classes: self
                .classes
                .iter()
                .map(|cl| cl.iter().map(|&c| perm[c as usize - 1]).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assign_guards() {
        let mut c = EdgeColoring::empty(3, 2, Provenance::new("test", None));
        c.assign(Edge::new(0, 1), 1).unwrap();
        c.assign(Edge::new(0, 1), 1).unwrap();
        assert!(matches!(c.assign(Edge::new(0, 1), 2), Err(EdgeColoringError::Recolored { .. })));
        assert!(matches!(c.assign(Edge::new(0, 2), 3), Err(EdgeColoringError::ColorOutOfRange { .. })));
        assert!(matches!(c.assign(Edge::new(0, 5), 1), Err(EdgeColoringError::EdgeOutOfRange(..))));
        assert_eq!(c.first_uncolored(), Some(Edge::new(0, 2)));
        assert_eq!(c.unused_colors(), vec![2]);
    }

    #[test]
    fn partition_checks() {
        let p = ColorPartition::consecutive([1, 2, 3]);
        assert_eq!(p.classes, vec![vec![1], vec![2, 3], vec![4, 5, 6]]);
        assert!(p.is_partition_of(6));
        assert!(!p.is_partition_of(7));
        let overlap = ColorPartition { classes: vec![vec![1, 2], vec![2]] };
        assert!(!overlap.is_partition_of(2));
    }

    #[test]
    fn histogram_sums_to_edge_count() {
        let colors = vec![Some(1), Some(1), Some(2), Some(3), Some(3), Some(3)];
        let c = EdgeColoring::from_colors(4, 3, colors, Provenance::new("test", None)).unwrap();
        let h = c.class_size_histogram();
        assert_eq!(h, BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
        assert_eq!(h.iter().map(|(s, n)| s * n).sum::<usize>(), 6);
    }
}
