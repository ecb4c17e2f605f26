//! 1-factorizations of K_m (m even) and Hamiltonian decompositions of K_m
//! (m odd), on vertices `0..m`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::edge::{choose2, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorizationError {
    #[error("a 1-factorization needs an even vertex count, got {0}")]
    OddOrder(usize),
    #[error("a Hamiltonian decomposition needs an odd vertex count >= 3, got {0}")]
    EvenOrder(usize),
    #[error("not a perfect matching of K_{m}: {reason}")]
    NotPerfectMatching { m: usize, reason: String },
}

/// A perfect matching, stored as sorted canonical edges.
pub type Matching = Vec<Edge>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneFactorization {
    pub m: usize,
    pub factors: Vec<Matching>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonianDecomposition {
    pub m: usize,
    /// Each cycle as its vertex sequence; the closing edge is implicit.
    pub cycles: Vec<Vec<usize>>,
}

impl HamiltonianDecomposition {
    pub fn cycle_edges(&self, i: usize) -> Vec<Edge> {
        let c = &self.cycles[i];
        (0..c.len())
            .map(|j| Edge::new(c[j], c[(j + 1) % c.len()]))
            .collect()
    }
}

/// Circle method: vertex `m-1` is the hub, the rest sit on a circle of
/// `m-1` positions. Factor `r` pairs the hub with `r` and every `r+i` with
/// `r-i`.
pub fn one_factorize(m: usize) -> Result<OneFactorization, FactorizationError> {
    if m < 2 || m % 2 == 1 {
        return Err(FactorizationError::OddOrder(m));
    }
    let ring = m - 1;
    let factors = (0..ring)
        .map(|r| {
            let mut f = vec![Edge::new(r, m - 1)];
            for i in 1..m / 2 {
                f.push(Edge::new((r + i) % ring, (r + ring - i) % ring));
            }
            f.sort_unstable();
            f
        })
        .collect();
    Ok(OneFactorization { m, factors })
}

/// Walecki's construction: the hub `m-1` plus the zigzag path
/// `0, 1, -1, 2, -2, ...` over `Z_{m-1}`, rotated `(m-1)/2` times.
pub fn hamiltonian_decompose(m: usize) -> Result<HamiltonianDecomposition, FactorizationError> {
    if m < 3 || m % 2 == 0 {
        return Err(FactorizationError::EvenOrder(m));
    }
    let ring = m - 1;
    let mut zigzag = Vec::with_capacity(ring);
    zigzag.push(0);
    for i in 1..=ring / 2 {
        zigzag.push(i);
        if zigzag.len() < ring {
            zigzag.push(ring - i);
        }
    }
    let cycles = (0..ring / 2)
        .map(|r| {
            let mut c: Vec<usize> = zigzag.iter().map(|&x| (x + r) % ring).collect();
            c.push(m - 1);
            c
        })
        .collect();
    Ok(HamiltonianDecomposition { m, cycles })
}

fn check_perfect_matching(m: usize, matching: &[Edge]) -> Result<(), FactorizationError> {
    let fail = |reason: String| Err(FactorizationError::NotPerfectMatching { m, reason });
    if m % 2 == 1 {
        return fail(format!("odd order {m}"));
    }
    let mut seen = vec![false; m];
    for e in matching {
        for x in [e.u, e.v] {
            if x >= m {
                return fail(format!("vertex {x} out of range"));
            }
            if seen[x] {
                return fail(format!("vertex {x} covered twice"));
            }
            seen[x] = true;
        }
    }
    if let Some(x) = seen.iter().position(|s| !s) {
        return fail(format!("vertex {x} uncovered"));
    }
    Ok(())
}

/// A 1-factorization of K_m with `matching` as factor 0: the circle method
/// composed with a relabeling that carries its factor 0 onto `matching`.
pub fn one_factorize_containing(
    m: usize,
    matching: &[Edge],
) -> Result<OneFactorization, FactorizationError> {
    check_perfect_matching(m, matching)?;
    let base = one_factorize(m)?;
    let mut relabel = vec![0usize; m];
    for (from, to) in base.factors[0].iter().zip(matching) {
        relabel[from.u] = to.u;
        relabel[from.v] = to.v;
    }
    let factors = base
        .factors
        .iter()
        .map(|f| {
            let mut g: Matching = f.iter().map(|e| Edge::new(relabel[e.u], relabel[e.v])).collect();
            g.sort_unstable();
            g
        })
        .collect();
    Ok(OneFactorization { m, factors })
}

/// Checks pairwise disjointness, perfectness and coverage of E(K_m).
pub fn is_one_factorization(f: &OneFactorization) -> bool {
    let mut all = BTreeSet::new();
    f.factors.len() == f.m - 1
        && f.factors.iter().all(|fac| {
            check_perfect_matching(f.m, fac).is_ok() && fac.iter().all(|e| all.insert(*e))
        })
        && all.len() == choose2(f.m)
}

/// Checks that the cycles are spanning, edge-disjoint and cover E(K_m).
pub fn is_hamiltonian_decomposition(h: &HamiltonianDecomposition) -> bool {
    let mut all = BTreeSet::new();
    h.cycles.len() == (h.m - 1) / 2
        && (0..h.cycles.len()).all(|i| {
            let mut vs = h.cycles[i].clone();
            vs.sort_unstable();
            vs.dedup();
            vs.len() == h.m
                && vs.last() == Some(&(h.m - 1))
                && h.cycle_edges(i).into_iter().all(|e| all.insert(e))
        })
        && all.len() == choose2(h.m)
}
