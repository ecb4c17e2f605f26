//! Canonical edges of K_n and their dense indexing.

use std::fmt;

use serde::{Deserialize, Serialize};

/// An undirected edge stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonicalizes the endpoints. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loops are not edges of a simple graph");
        Edge { u: a.min(b), v: a.max(b) }
    }

    pub fn try_new(a: usize, b: usize) -> Option<Self> {
        (a != b).then(|| Edge::new(a, b))
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn touches(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// `n choose 2`.
pub const fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `e` in the lexicographic order of the edges of K_n.
pub fn edge_index(n: usize, e: Edge) -> usize {
    debug_assert!(e.v < n);
    e.u * n - e.u * (e.u + 1) / 2 + (e.v - e.u - 1)
}

/// All edges of K_n in lexicographic order.
pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
}

/// All edges among `vertices` (canonicalized, in pair order of the slice).
pub fn clique_edges(vertices: &[usize]) -> Vec<Edge> {
    let mut out = Vec::with_capacity(choose2(vertices.len()));
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            out.push(Edge::new(a, b));
        }
    }
    out
}
