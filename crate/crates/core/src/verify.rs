//! Independent checks on an [`EdgeColoring`]: completeness, connectedness of
//! color classes, vertex ownership and the per-line ownership premise.
//!
//! Nothing here looks at how a coloring was built. Witnesses always name the
//! lexicographically first violation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{Color, ColorPartition, EdgeColoring};
use crate::edge::Edge;
use crate::representation::LineRepresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("edge {0} is uncolored")]
    PartialColoring(Edge),
}

/// Fixed-capacity set of colors `1..=k`, one bit per color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorSet {
    words: Vec<u64>,
    k: u32,
}

impl ColorSet {
    pub fn new(k: u32) -> Self {
        ColorSet { words: vec![0; (k as usize).div_ceil(64)], k }
    }

    pub fn full(k: u32) -> Self {
        let mut s = ColorSet::new(k);
        for c in 1..=k {
            s.insert(c);
        }
        s
    }

    pub fn insert(&mut self, c: Color) {
        let i = c as usize - 1;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, c: Color) -> bool {
        let i = c as usize - 1;
        c >= 1 && c <= self.k && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn union_with(&mut self, other: &ColorSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        (1..=self.k).filter(|&c| self.contains(c))
    }

    /// Smallest color of `1..=k` not in the set.
    pub fn first_missing(&self) -> Option<Color> {
        self.words.iter().enumerate().find_map(|(w, &bits)| {
            let free = !bits;
            (free != 0)
                .then(|| (w * 64 + free.trailing_zeros() as usize + 1) as Color)
                .filter(|&c| c <= self.k)
        })
    }
}

/// Path-compressed union-find over `0..n`.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Owned-color set of every vertex.
pub fn owner_sets(coloring: &EdgeColoring) -> Vec<ColorSet> {
    let mut owners = vec![ColorSet::new(coloring.k()); coloring.n()];
    for (e, c) in coloring.iter() {
        if let Some(c) = c {
            owners[e.u].insert(c);
            owners[e.v].insert(c);
        }
    }
    owners
}

/// Colors appearing on edges at `vertex`.
pub fn owners_of(coloring: &EdgeColoring, vertex: usize) -> ColorSet {
    let mut s = ColorSet::new(coloring.k());
    for w in (0..coloring.n()).filter(|&w| w != vertex) {
        if let Some(c) = coloring.color_of(vertex, w) {
            s.insert(c);
        }
    }
    s
}

/// Every vertex of `subgraph` owns every color of `colors`.
pub fn is_owner(coloring: &EdgeColoring, subgraph: &[usize], colors: &[Color]) -> bool {
    subgraph.iter().all(|&v| {
        let owned = owners_of(coloring, v);
        colors.iter().all(|&c| owned.contains(c))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Completeness {
    pub complete: bool,
    /// First color pair with no common owner.
    pub witness: Option<(Color, Color)>,
}

/// For every color `c`, OR together the owned sets of the vertices of class
/// `c`; the coloring is complete iff every such union is all of `1..=k`.
pub fn check_complete(coloring: &EdgeColoring) -> Result<Completeness, VerifyError> {
    if let Some(e) = coloring.first_uncolored() {
        return Err(VerifyError::PartialColoring(e));
    }
    let k = coloring.k();
    let owners = owner_sets(coloring);
    let class_vertices = class_vertex_lists(coloring);
    let witness = class_vertices
        .par_iter()
        .enumerate()
        .map(|(i, verts)| {
            let c = i as Color + 1;
            let mut met = ColorSet::new(k);
            for &v in verts {
                met.union_with(&owners[v]);
            }
            met.first_missing().map(|d| (c.min(d), c.max(d)))
        })
        .find_map_first(|w| w);
    Ok(Completeness { complete: witness.is_none(), witness })
}

fn class_vertex_lists(coloring: &EdgeColoring) -> Vec<Vec<usize>> {
    let n = coloring.n();
    let mut marks = vec![vec![false; n]; coloring.k() as usize];
    for (e, c) in coloring.iter() {
        if let Some(c) = c {
            marks[c as usize - 1][e.u] = true;
            marks[c as usize - 1][e.v] = true;
        }
    }
    marks
        .into_iter()
        .map(|m| (0..n).filter(|&v| m[v]).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Connectedness {
    pub connected: bool,
    /// First color whose edges induce a disconnected (or empty) subgraph.
    pub witness: Option<Color>,
}

/// Union-find per color class over the edges of that class.
pub fn check_connected(coloring: &EdgeColoring) -> Connectedness {
    let n = coloring.n();
    let witness = coloring
        .classes()
        .iter()
        .enumerate()
        .find(|(_, edges)| !class_connected(n, edges))
        .map(|(i, _)| i as Color + 1);
    Connectedness { connected: witness.is_none(), witness }
}

fn class_connected(n: usize, edges: &[Edge]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut uf = UnionFind::new(n);
    let mut components = 0usize;
    let mut seen = vec![false; n];
    for e in edges {
        for x in [e.u, e.v] {
            if !seen[x] {
                seen[x] = true;
                components += 1;
            }
        }
        if uf.union(e.u, e.v) {
            components -= 1;
        }
    }
    components == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineOwnership {
    /// Every line owns its palette.
    pub holds: bool,
    /// First `(line, color)` where a line vertex misses a palette color.
    pub witness: Option<(usize, Color)>,
    /// The premise held but completeness did not; never expected.
    pub inconsistent: bool,
}

/// Checks that line `l` owns `partition.classes[l]` for every line, then
/// re-checks completeness directly.
pub fn check_line_ownership(
    coloring: &EdgeColoring,
    rep: &LineRepresentation,
    partition: &ColorPartition,
) -> LineOwnership {
    let owners = owner_sets(coloring);
    let mut witness = None;
    if partition.classes.len() != rep.line_count() {
        witness = Some((partition.classes.len().min(rep.line_count()), 0));
    }
    if witness.is_none() {
        'lines: for (l, palette) in partition.classes.iter().enumerate() {
            for &c in palette {
                if rep.line_vertices[l].iter().any(|&v| !owners[v].contains(c)) {
                    witness = Some((l, c));
                    break 'lines;
                }
            }
        }
    }
    let holds = witness.is_none();
    let complete = check_complete(coloring).map(|c| c.complete).unwrap_or(false);
    LineOwnership {
        holds,
        witness,
        inconsistent: holds && partition.is_partition_of(coloring.k()) && !complete,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: u32,
    pub complete: Completeness,
    pub connected: Connectedness,
    pub class_sizes: BTreeMap<usize, usize>,
    pub unused_colors: Vec<Color>,
    /// Size of each vertex's owned-color set.
    pub owned_counts: Vec<usize>,
    pub line_ownership: Option<LineOwnership>,
}

/// Full report for a total coloring; the line-ownership check runs when a
/// representation and partition are supplied.
pub fn verify(
    coloring: &EdgeColoring,
    lines: Option<(&LineRepresentation, &ColorPartition)>,
) -> Result<VerifyReport, VerifyError> {
    let complete = check_complete(coloring)?;
    Ok(VerifyReport {
        n: coloring.n(),
        k: coloring.k(),
        complete,
        connected: check_connected(coloring),
        class_sizes: coloring.class_size_histogram(),
        unused_colors: coloring.unused_colors(),
        owned_counts: owner_sets(coloring).iter().map(ColorSet::len).collect(),
        line_ownership: lines.map(|(rep, part)| check_line_ownership(coloring, rep, part)),
    })
}
