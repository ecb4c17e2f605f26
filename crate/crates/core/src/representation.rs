//! K_n as a representation of a projective plane: vertices are points and
//! each line induces a K_{q+1}, the line edge sets partitioning E(K_n).

use thiserror::Error;

use crate::edge::{all_edges, choose2, clique_edges, edge_index, Edge};
use crate::plane::ProjectivePlane;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("vertex {0} was given twice; a line is determined by two distinct vertices")]
    SameVertex(usize),
    #[error("vertex {vertex} is out of range for K_{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0} lies on {1} lines, expected exactly one")]
    NotAPartition(Edge, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineRepresentation {
    pub n: usize,
    pub q: u32,
    /// Sorted vertex indices of each line.
    pub line_vertices: Vec<Vec<usize>>,
    /// Edges induced by each line, lexicographic.
    pub line_edges: Vec<Vec<Edge>>,
    /// Line owning each edge, by [`edge_index`].
    line_of_edge: Vec<usize>,
}

/// Identifies plane points with vertices `0..n` and lines with the cliques
/// they induce.
pub fn realize(plane: &ProjectivePlane) -> Result<LineRepresentation, RepresentationError> {
    LineRepresentation::from_lines(plane.n(), plane.q, plane.incidence.clone())
}

impl LineRepresentation {
    /// Builds a representation from explicit line vertex sets, checking that
    /// the induced edge sets partition E(K_n).
    pub fn from_lines(
        n: usize,
        q: u32,
        mut line_vertices: Vec<Vec<usize>>,
    ) -> Result<Self, RepresentationError> {
        let mut hits = vec![0usize; choose2(n)];
        let mut line_of_edge = vec![usize::MAX; choose2(n)];
        let mut line_edges = Vec::with_capacity(line_vertices.len());
        for (l, verts) in line_vertices.iter_mut().enumerate() {
            verts.sort_unstable();
            if let Some(&bad) = verts.iter().find(|&&x| x >= n) {
                return Err(RepresentationError::VertexOutOfRange { vertex: bad, n });
            }
            let edges = clique_edges(verts);
            for e in &edges {
                let i = edge_index(n, *e);
                hits[i] += 1;
                line_of_edge[i] = l;
            }
            line_edges.push(edges);
        }
        if let Some((e, &h)) = all_edges(n).zip(&hits).find(|(_, &h)| h != 1) {
            return Err(RepresentationError::NotAPartition(e, h));
        }
        Ok(LineRepresentation {
            n,
            q,
            line_vertices,
            line_edges,
            line_of_edge,
        })
    }

    pub fn line_count(&self) -> usize {
        self.line_vertices.len()
    }

    /// The unique line through two distinct vertices.
    pub fn line_through(&self, u: usize, v: usize) -> Result<usize, RepresentationError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(RepresentationError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        let e = Edge::try_new(u, v).ok_or(RepresentationError::SameVertex(u))?;
        Ok(self.line_of_edge[edge_index(self.n, e)])
    }

    /// The unique common vertex of two distinct lines.
    pub fn intersection(&self, a: usize, b: usize) -> Option<usize> {
        let vb = &self.line_vertices[b];
        let mut common = self.line_vertices[a]
            .iter()
            .filter(|x| vb.binary_search(x).is_ok());
        let first = common.next().copied();
        match common.next() {
            None => first,
            Some(_) => None,
        }
    }

    /// Lines through vertex `v`, ascending.
    pub fn lines_through(&self, v: usize) -> Vec<usize> {
        (0..self.line_count())
            .filter(|&l| self.line_vertices[l].binary_search(&v).is_ok())
            .collect()
    }

    /// The same structure with vertex `x` renamed to `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        let lines = self
            .line_vertices
            .iter()
            .map(|vs| vs.iter().map(|&x| perm[x]).collect())
            .collect();
        LineRepresentation::from_lines(self.n, self.q, lines)
            .expect("a vertex permutation preserves the edge partition")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::plane::build_plane;

    fn rep(q: u32) -> LineRepresentation {
        realize(&build_plane(&FieldContext::new(q).unwrap())).unwrap()
    }

    #[test]
    fn edge_counts() {
        let r2 = rep(2);
        assert_eq!(r2.line_count(), 7);
        assert!(r2.line_edges.iter().all(|e| e.len() == 3));
        assert_eq!(7 * 3, choose2(7));
        let r4 = rep(4);
        assert!(r4.line_edges.iter().all(|e| e.len() == 10));
        assert_eq!(21 * 10, choose2(21));
    }

    #[test]
    fn every_edge_in_exactly_one_line_q3() {
        let r = rep(3);
        for e in all_edges(13) {
            let count = r.line_edges.iter().filter(|es| es.contains(&e)).count();
            assert_eq!(count, 1, "{e}");
        }
    }

    #[test]
    fn lines_pairwise_meet_once() {
        for q in [2, 3, 4, 5] {
            let r = rep(q);
            for a in 0..r.line_count() {
                for b in a + 1..r.line_count() {
                    assert!(r.intersection(a, b).is_some(), "q={q} lines {a},{b}");
                }
            }
        }
    }

    #[test]
    fn line_through_matches_scan() {
        let r = rep(2);
        for e in all_edges(7) {
            let scanned = (0..7)
                .find(|&l| r.line_vertices[l].contains(&e.u) && r.line_vertices[l].contains(&e.v))
                .unwrap();
            assert_eq!(r.line_through(e.u, e.v).unwrap(), scanned);
            assert_eq!(r.line_through(e.v, e.u).unwrap(), scanned);
        }
        for (l, edges) in r.line_edges.iter().enumerate() {
            for e in edges {
                assert_eq!(r.line_through(e.u, e.v).unwrap(), l);
            }
        }
    }

    #[test]
    fn line_through_errors() {
        let r = rep(2);
        assert_eq!(r.line_through(3, 3), Err(RepresentationError::SameVertex(3)));
        assert_eq!(
            r.line_through(0, 9),
            Err(RepresentationError::VertexOutOfRange { vertex: 9, n: 7 })
        );
    }

    #[test]
    fn overlapping_lines_rejected() {
        let lines = vec![vec![0, 1, 2], vec![0, 1, 2]];
        assert!(matches!(
            LineRepresentation::from_lines(3, 1, lines),
            Err(RepresentationError::NotAPartition(_, 2))
        ));
    }
}
