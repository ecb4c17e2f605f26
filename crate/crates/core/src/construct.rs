//! Global colorings of K_n, n = q^2 + q + 1, assembled line by line over a
//! representation of PG(2, q).

use thiserror::Error;

use crate::coloring::{Color, ColorPartition, EdgeColoring, EdgeColoringError, Provenance};
use crate::edge::Edge;
use crate::field::{is_prime_power, FieldContext, FieldError, MAX_SUPPORTED_ORDER};
use crate::plane::build_plane;
use crate::representation::{realize, LineRepresentation, RepresentationError};
use crate::types::{type_2, type_c, type_h, type_p, ColoringError, PartialColoring};

pub const CONNECTED_CONSTRUCTION: &str = "theorem3";
pub const COMPLETE_CONSTRUCTION: &str = "theorem5";
pub const BEST_CONNECTED_CONSTRUCTION: &str = "best-connected";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("q must be a power of 2, got {0}")]
    NotPowerOfTwo(u32),
    #[error("K_{0} is too small; at least 7 vertices are needed")]
    TooSmall(usize),
    #[error("internal construction failure: {0}")]
    InternalConstructionFailure(String),
}

impl From<EdgeColoringError> for ConstructionError {
    fn from(e: EdgeColoringError) -> Self {
        ConstructionError::InternalConstructionFailure(e.to_string())
    }
}

/// A coloring together with the plane structure and per-line palettes it
/// was built from.
#[derive(Debug, Clone)]
pub struct Construction {
    pub coloring: EdgeColoring,
    pub representation: Option<LineRepresentation>,
    /// Palettes indexed by plane line.
    pub partition: Option<ColorPartition>,
}

pub fn representation_for(q: u32) -> Result<LineRepresentation, ConstructionError> {
    let field = FieldContext::new(q)?;
    Ok(realize(&build_plane(&field))?)
}

fn merge(target: &mut EdgeColoring, part: &PartialColoring) -> Result<(), ConstructionError> {
    for (e, &c) in &part.colored_edges {
        target.assign(*e, c)?;
    }
    Ok(())
}

fn check_ownership(coloring: &EdgeColoring, rep: &LineRepresentation, partition: &ColorPartition) -> Result<(), ConstructionError> {
    let premise = crate::verify::check_line_ownership(coloring, rep, partition);
    match premise.witness {
        None => Ok(()),
        Some((line, color)) => Err(ConstructionError::InternalConstructionFailure(format!(
            "line {line} does not own color {color} of its palette"
        ))),
    }
}

/// `ceil(q/2) * (q^2 + q + 1)` colors, every class a Hamiltonian cycle
/// (q even, Type H) or Hamiltonian path (q odd, Type P) inside one line.
pub fn connected_coloring(q: u32) -> Result<Construction, ConstructionError> {
    let rep = representation_for(q)?;
    let per_line = q.div_ceil(2) as usize;
    let partition = ColorPartition::consecutive(std::iter::repeat(per_line).take(rep.line_count()));
    let k = (per_line * rep.line_count()) as u32;
    let mut coloring = EdgeColoring::empty(rep.n, k, Provenance::new(CONNECTED_CONSTRUCTION, Some(q)));
    for (verts, palette) in rep.line_vertices.iter().zip(&partition.classes) {
        let part = if q % 2 == 0 { type_h(verts, palette)? } else { type_p(verts, palette)? };
        merge(&mut coloring, &part)?;
    }
    if let Some(e) = coloring.first_uncolored() {
        return Err(ConstructionError::InternalConstructionFailure(format!("edge {e} left uncolored")));
    }
    check_ownership(&coloring, &rep, &partition)?;
    Ok(Construction { coloring, representation: Some(rep), partition: Some(partition) })
}

/// Line labels and fixed vertices of the complete-coloring layout.
///
/// `label[i]` (1-based, `i in 1..=n`) is the plane line playing the role of
/// line `i`: line `n` is plane line 0 with vertices `v_1..v_{q+1}`, and lines
/// `q(i-1)+1 ..= q(i-1)+q` are the other lines through `v_i`, ascending.
struct Layout {
    q: usize,
    label: Vec<usize>,
    v: Vec<usize>,
}

impl Layout {
    fn new(rep: &LineRepresentation) -> Self {
        let q = rep.q as usize;
        let n = rep.n;
        let base = 0;
        let mut v = vec![usize::MAX];
        v.extend(rep.line_vertices[base].iter().copied());
        let mut label = vec![usize::MAX];
        for &vi in &v[1..] {
            label.extend(rep.lines_through(vi).into_iter().filter(|&l| l != base));
        }
        label.push(base);
        debug_assert_eq!(label.len(), n + 1);
        Layout { q, label, v }
    }

    fn line(&self, i: usize) -> usize {
        self.label[i]
    }

    /// Index of the partner line whose intersection with line `q(i-1)+j`
    /// fixes the special edge of that line.
    fn partner(&self, i: usize, j: usize) -> usize {
        let (q, h) = (self.q, self.q / 2);
        let offset = if j <= h { 1 } else { 0 };
        if i <= h {
            q * (q - 1) + 2 * i - offset
        } else {
            q * q + 2 * (i - h) - offset
        }
    }
}

/// `q^3 + 2q - 3` colors for q a power of 2: Type C on the lines through
/// `v_1..v_{q-1}` and on three more lines, Type 2 on the remaining lines with
/// the special edges as spokes, and color 1 on the last three special edges.
pub fn complete_coloring(q: u32) -> Result<Construction, ConstructionError> {
    if !q.is_power_of_two() || q < 2 {
        return Err(ConstructionError::NotPowerOfTwo(q));
    }
    let rep = representation_for(q)?;
    let lay = Layout::new(&rep);
    let (qs, n) = (q as usize, rep.n);
    let h = qs / 2;

    // Palettes C_1..C_n: q-1 colors up to C_{q^2-q+3}, q colors after.
    let small = qs * qs - qs + 3;
    let sizes: Vec<usize> = (1..=n).map(|i| if i <= small { qs - 1 } else { qs }).collect();
    let palettes = ColorPartition::consecutive(sizes);
    let k = (q * q * q + 2 * q - 3) as Color;
    debug_assert_eq!(palettes.classes.iter().map(Vec::len).sum::<usize>(), k as usize);
    let palette = |i: usize| palettes.classes[i - 1].as_slice();

    let mut coloring = EdgeColoring::empty(n, k, Provenance::new(COMPLETE_CONSTRUCTION, Some(q)));
    let verts = |i: usize| rep.line_vertices[lay.line(i)].as_slice();

    // Step i: Type C on lines 1..=q(q-1) with special edges v_i u.
    let mut special = vec![Edge { u: 0, v: 0 }; n + 1];
    for i in 1..qs {
        for j in 1..=qs {
            let idx = qs * (i - 1) + j;
            let u = rep
                .intersection(lay.line(idx), lay.line(lay.partner(i, j)))
                .ok_or_else(|| ConstructionError::InternalConstructionFailure(format!("lines {idx} and partner do not meet")))?;
            if u == lay.v[i] {
                return Err(ConstructionError::InternalConstructionFailure(format!(
                    "special edge of line {idx} degenerates at v_{i}"
                )));
            }
            special[idx] = Edge::new(lay.v[i], u);
            merge(&mut coloring, &type_c(verts(idx), (lay.v[i], u), palette(idx))?)?;
        }
    }

    // Step ii: lines n, n-1, n-2 with their least edge as special edge.
    for t in 0..3 {
        let idx = n - t;
        let vs = verts(idx);
        special[idx] = Edge::new(vs[0], vs[1]);
        merge(&mut coloring, &type_c(vs, (vs[0], vs[1]), palette(small - t))?)?;
    }

    // Step iii: Type 2 on the lines through v_q and v_{q+1} except n-1, n-2.
    let first_batch = (1..=qs).map(|j| (qs * (qs - 1) + j, (j + 1) / 2, (j - 1) * h, small + j));
    let second_batch = (1..=qs.saturating_sub(2)).map(|j| (qs * qs + j, h + (j + 1) / 2, qs * qs / 2 + (j - 1) * h, qs * qs + 3 + j));
    for (idx, hub, first_edge, pal) in first_batch.chain(second_batch) {
        let host = verts(idx);
        let centre = lay.v[hub];
        let mut spoke_ends = Vec::with_capacity(h);
        for t in 1..=h {
            let e = special[first_edge + t];
            let end = e.other(centre).ok_or_else(|| {
                ConstructionError::InternalConstructionFailure(format!("special edge {e} misses v_{hub}"))
            })?;
            if !host.contains(&end) {
                return Err(ConstructionError::InternalConstructionFailure(format!(
                    "special edge {e} does not reach line {idx}"
                )));
            }
            spoke_ends.push(end);
        }
        let on_base = rep
            .intersection(lay.line(idx), lay.line(n))
            .ok_or_else(|| ConstructionError::InternalConstructionFailure("no base intersection".into()))?;
        let partners: Vec<usize> = host
            .iter()
            .copied()
            .filter(|x| *x != on_base && !spoke_ends.contains(x))
            .collect();
        if partners.len() != spoke_ends.len() {
            return Err(ConstructionError::InternalConstructionFailure(format!(
                "line {idx}: {} spoke ends for {} partners",
                spoke_ends.len(),
                partners.len()
            )));
        }
        let matching: Vec<(usize, usize)> = spoke_ends.into_iter().zip(partners).collect();
        merge(&mut coloring, &type_2(host, &matching, centre, palette(pal))?)?;
    }

    // Step iv.
    for t in 0..3 {
        coloring.assign(special[n - t], 1)?;
    }

    if let Some(e) = coloring.first_uncolored() {
        return Err(ConstructionError::InternalConstructionFailure(format!("edge {e} left uncolored")));
    }
    // Palettes re-indexed by plane line.
    let mut by_line = vec![Vec::new(); n];
    for i in 1..=n {
        let pal_index = match i {
            _ if i > n - 3 => small - (n - i),
            _ if i <= qs * (qs - 1) => i,
            _ if i <= qs * qs => small + (i - qs * (qs - 1)),
            _ => qs * qs + 3 + (i - qs * qs),
        };
        by_line[lay.line(i)] = palette(pal_index).to_vec();
    }
    let partition = ColorPartition { classes: by_line };
    check_ownership(&coloring, &rep, &partition)?;
    Ok(Construction { coloring, representation: Some(rep), partition: Some(partition) })
}

/// Supported prime powers, ascending.
pub fn supported_orders() -> impl Iterator<Item = u32> {
    (2..=MAX_SUPPORTED_ORDER).filter(|&q| is_prime_power(q))
}

/// Largest supported prime power `q` with `q^2 + q + 1 <= n`.
pub fn best_order(n: usize) -> Option<u32> {
    supported_orders()
        .filter(|&q| (q * q + q + 1) as usize <= n)
        .last()
}

/// The connected coloring for the best order fitting in K_n, extended to
/// the extra vertices by giving every new edge color 1. Color 1 spans a
/// connected subgraph of the base, and every new edge either touches it or
/// touches another new edge that does, so connectedness and completeness
/// both carry over.
pub fn connected_coloring_best(n: usize) -> Result<Construction, ConstructionError> {
    let q = best_order(n).ok_or(ConstructionError::TooSmall(n))?;
    let base = connected_coloring(q)?;
    let m = base.coloring.n();
    if m == n {
        let mut out = base;
        out.coloring.provenance = Provenance::new(BEST_CONNECTED_CONSTRUCTION, Some(q));
        return Ok(out);
    }
    let mut coloring = EdgeColoring::empty(n, base.coloring.k(), Provenance::new(BEST_CONNECTED_CONSTRUCTION, Some(q)));
    for (e, c) in base.coloring.iter() {
        coloring.set(e, c);
    }
    for x in m..n {
        for w in 0..x {
            coloring.assign(Edge::new(w, x), 1)?;
        }
    }
    Ok(Construction { coloring, representation: None, partition: None })
}
