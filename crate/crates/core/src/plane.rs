//! The algebraic projective plane PG(2, q).

use std::fmt::Write as _;

use serde::Serialize;

use crate::field::{FieldContext, FieldElement};

/// Homogeneous coordinates, normalized so the first nonzero entry is 1.
pub type Triple = [FieldElement; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub q: u32,
    /// Point coordinates in lexicographic order of their encodings.
    pub points: Vec<Triple>,
    /// Line coordinates, in the same order.
    pub lines: Vec<Triple>,
    /// For each line, the sorted indices of its points.
    pub incidence: Vec<Vec<usize>>,
}

/// Every normalized triple over GF(q), lexicographically ordered.
fn normalized_triples(field: &FieldContext) -> Vec<Triple> {
    let q = field.order();
    let one = FieldElement::ONE;
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    out.push([FieldElement::ZERO, FieldElement::ZERO, one]);
    for b in field.elements() {
        out.push([FieldElement::ZERO, one, b]);
    }
    for a in field.elements() {
        for b in field.elements() {
            out.push([one, a, b]);
        }
    }
    out
}

fn dot(field: &FieldContext, a: &Triple, b: &Triple) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (x, y)| field.add(acc, field.mul(*x, *y)))
}

/// Builds PG(2, q): a point lies on a line iff their coordinate dot product
/// vanishes.
pub fn build_plane(field: &FieldContext) -> ProjectivePlane {
    let points = normalized_triples(field);
    let lines = points.clone();
    let incidence = lines
        .iter()
        .map(|l| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| dot(field, p, l).is_zero())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    ProjectivePlane {
        q: field.order(),
        points,
        lines,
        incidence,
    }
}

impl ProjectivePlane {
    /// `q^2 + q + 1`.
    pub fn n(&self) -> usize {
        let q = self.q as usize;
        q * q + q + 1
    }

    pub fn points_on(&self, line: usize) -> &[usize] {
        &self.incidence[line]
    }

    /// Lines through each point, ascending.
    pub fn pencils(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.points.len()];
        for (l, pts) in self.incidence.iter().enumerate() {
            for &p in pts {
                out[p].push(l);
            }
        }
        out
    }

    /// One text line per plane line: its point indices separated by spaces.
    pub fn dump_text(&self) -> String {
        let mut s = String::new();
        for pts in &self.incidence {
            let row: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomOutcome {
    Pass,
    /// Two points (axiom 1) or two lines (axiom 2) sharing `count != 1` lines/points.
    PairFailure { first: usize, second: usize, count: usize },
    /// No quadrangle exists.
    NoQuadrangle,
}

impl AxiomOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomOutcome::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub point_count: usize,
    pub line_count: usize,
    /// Every line carries q + 1 points and every point lies on q + 1 lines.
    pub regular: bool,
    pub two_points_one_line: AxiomOutcome,
    pub two_lines_one_point: AxiomOutcome,
    /// Four points, no three collinear.
    pub quadrangle: AxiomOutcome,
    pub quadrangle_witness: Option<[usize; 4]>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.regular
            && self.two_points_one_line.passed()
            && self.two_lines_one_point.passed()
            && self.quadrangle.passed()
    }
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Checks the incidence lists exhaustively against the three plane axioms.
/// Witnesses are the lexicographically first offending pair.
pub fn validate_axioms(plane: &ProjectivePlane) -> ValidationReport {
    let np = plane.points.len();
    let nl = plane.incidence.len();
    let per = plane.q as usize + 1;

    let pencils = {
        let mut out = vec![Vec::new(); np];
        for (l, pts) in plane.incidence.iter().enumerate() {
            for &p in pts {
                if p < np {
                    out[p].push(l);
                }
            }
        }
        out
    };
    let regular = plane.incidence.iter().all(|pts| pts.len() == per)
        && pencils.iter().all(|ls| ls.len() == per);

    let mut pair_counts = vec![0usize; np * np];
    for pts in &plane.incidence {
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                if a < np && b < np {
                    let (a, b) = (a.min(b), a.max(b));
                    pair_counts[a * np + b] += 1;
                }
            }
        }
    }
    let mut axiom1 = AxiomOutcome::Pass;
    'outer: for a in 0..np {
        for b in a + 1..np {
            let c = pair_counts[a * np + b];
            if c != 1 {
                axiom1 = AxiomOutcome::PairFailure { first: a, second: b, count: c };
                break 'outer;
            }
        }
    }

    let mut axiom2 = AxiomOutcome::Pass;
    'outer2: for a in 0..nl {
        for b in a + 1..nl {
            let c = sorted_intersection_len(&plane.incidence[a], &plane.incidence[b]);
            if c != 1 {
                axiom2 = AxiomOutcome::PairFailure { first: a, second: b, count: c };
                break 'outer2;
            }
        }
    }

    let collinear = |x: usize, y: usize, z: usize| {
        plane
            .incidence
            .iter()
            .any(|pts| [x, y, z].iter().all(|p| pts.binary_search(p).is_ok()))
    };
    let mut witness = None;
    'quad: for a in 0..np {
        for b in a + 1..np {
            for c in b + 1..np {
                if collinear(a, b, c) {
                    continue;
                }
                for d in c + 1..np {
                    if !collinear(a, b, d) && !collinear(a, c, d) && !collinear(b, c, d) {
                        witness = Some([a, b, c, d]);
                        break 'quad;
                    }
                }
            }
        }
    }

    ValidationReport {
        point_count: np,
        line_count: nl,
        regular,
        two_points_one_line: axiom1,
        two_lines_one_point: axiom2,
        quadrangle: if witness.is_some() {
            AxiomOutcome::Pass
        } else {
            AxiomOutcome::NoQuadrangle
        },
        quadrangle_witness: witness,
    }
}
