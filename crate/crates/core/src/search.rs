//! Exact pseudoachromatic and connected-pseudoachromatic indices of small
//! complete graphs by branch and bound over surjective edge colorings.
//!
//! For each candidate `k`, edges are colored in lexicographic order and a
//! new color may only be the next unused one, which removes the `k!` color
//! symmetry. A partial coloring is abandoned when
//!
//! * fewer edges remain than colors still to introduce,
//! * the unmet color pairs exceed what the remaining edges can meet (both the
//!   coarse `remaining * 2(n-2)` count and a per-vertex count),
//! * some color cannot reach all other colors any more, or
//! * (connected mode) the class components cannot all be joined.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{connected_upper_bound, counting_bound};
use crate::coloring::{Color, EdgeColoring, Provenance};
use crate::edge::{all_edges, choose2};
use crate::verify::{check_complete, check_connected};

/// Largest `n` the search accepts (colors are tracked in 64-bit masks).
pub const MAX_SEARCH_N: usize = 9;

/// Connected index of K_n for n = 2..=7.
pub const KNOWN_CONNECTED: [(usize, u32); 6] = [(2, 1), (3, 3), (4, 4), (5, 6), (6, 7), (7, 10)];
/// Pseudoachromatic index of K_n for n = 2..=13.
pub const KNOWN_PSEUDOACHROMATIC: [(usize, u32); 12] = [
    (2, 1),
    (3, 3),
    (4, 4),
    (5, 7),
    (6, 8),
    (7, 11),
    (8, 14),
    (9, 18),
    (10, 22),
    (11, 27),
    (12, 32),
    (13, 39),
];

pub fn known_value(n: usize, mode: Mode) -> Option<u32> {
    let table: &[(usize, u32)] = match mode {
        Mode::Connected => &KNOWN_CONNECTED,
        Mode::Pseudoachromatic => &KNOWN_PSEUDOACHROMATIC,
    };
    table.iter().find(|(m, _)| *m == n).map(|(_, v)| *v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Pseudoachromatic,
    Connected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search needs 2 <= n <= {MAX_SEARCH_N}, got {0}")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub mode: Mode,
    pub time_budget: Duration,
    /// Restrict new colors to appear in ascending order.
    pub symmetry_breaking: bool,
}

impl SearchConfig {
    pub fn new(n: usize, mode: Mode) -> Self {
        SearchConfig { n, mode, time_budget: Duration::from_secs(60), symmetry_breaking: true }
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.time_budget = budget;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Exact,
    Timeout,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub n: usize,
    pub mode: Mode,
    /// Best witnessed value; the exact index when `status` is `Exact`.
    pub lower: u32,
    /// Largest value not refuted.
    pub upper: u32,
    pub witness: EdgeColoring,
    pub status: Status,
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn value(&self) -> Option<u32> {
        (self.status == Status::Exact).then_some(self.lower)
    }

    pub fn contains(&self, v: u32) -> bool {
        self.lower <= v && v <= self.upper
    }
}

/// Outcome of deciding a single `k`.
#[derive(Debug, Clone)]
pub enum Decision {
    Feasible(EdgeColoring),
    Infeasible,
    Timeout,
}

/// Largest `k` worth trying for K_n in the given mode.
pub fn upper_estimate(n: usize, mode: Mode) -> u32 {
    let mut ub = counting_bound(n as u64);
    if mode == Mode::Connected && n >= 8 {
        ub = ub.min(connected_upper_bound(n as u64).0);
    }
    ub as u32
}

struct Engine<'a> {
    n: usize,
    k: usize,
    connected: bool,
    symmetry: bool,
    edges: Vec<(usize, usize)>,
    colors: Vec<usize>,
    /// `owner_count[v * k + c]`: edges of color `c` at `v`.
    owner_count: Vec<u8>,
    owners: Vec<u64>,
    /// `pair_count[c * k + d]`: vertices owning both `c` and `d`.
    pair_count: Vec<u8>,
    met: Vec<u64>,
    unmet: usize,
    class_size: Vec<usize>,
    used: usize,
    remaining: Vec<usize>,
    /// Class adjacency: `adj[c * n + v]` is a vertex mask.
    adj: Vec<u32>,
    nodes: u64,
    deadline: Instant,
    stop: &'a AtomicBool,
    timed_out: bool,
}

const UNSET: usize = usize::MAX;

impl<'a> Engine<'a> {
    fn new(n: usize, k: usize, mode: Mode, symmetry: bool, deadline: Instant, stop: &'a AtomicBool) -> Self {
        let edges: Vec<(usize, usize)> = all_edges(n).map(|e| (e.u, e.v)).collect();
        let mut met = vec![0u64; k];
        for (c, m) in met.iter_mut().enumerate() {
            *m = 1 << c;
        }
        Engine {
            n,
            k,
            connected: mode == Mode::Connected,
            symmetry,
            colors: vec![UNSET; edges.len()],
            edges,
            owner_count: vec![0; n * k],
            owners: vec![0; n],
            pair_count: vec![0; k * k],
            met,
            unmet: k * (k - 1) / 2,
            class_size: vec![0; k],
            used: 0,
            remaining: vec![n - 1; n],
            adj: vec![0; k * n],
            nodes: 0,
            deadline,
            stop,
            timed_out: false,
        }
    }

    fn gain(&mut self, v: usize, c: usize) {
        let idx = v * self.k + c;
        self.owner_count[idx] += 1;
        if self.owner_count[idx] > 1 {
            return;
        }
        let mut others = self.owners[v];
        while others != 0 {
            let d = others.trailing_zeros() as usize;
            others &= others - 1;
            let pc = &mut self.pair_count[c * self.k + d];
            *pc += 1;
            self.pair_count[d * self.k + c] += 1;
            if self.pair_count[c * self.k + d] == 1 {
                self.met[c] |= 1 << d;
                self.met[d] |= 1 << c;
                self.unmet -= 1;
            }
        }
        self.owners[v] |= 1 << c;
    }

    fn lose(&mut self, v: usize, c: usize) {
        let idx = v * self.k + c;
        self.owner_count[idx] -= 1;
        if self.owner_count[idx] > 0 {
            return;
        }
        self.owners[v] &= !(1 << c);
        let mut others = self.owners[v];
        while others != 0 {
            let d = others.trailing_zeros() as usize;
            others &= others - 1;
            self.pair_count[c * self.k + d] -= 1;
            self.pair_count[d * self.k + c] -= 1;
            if self.pair_count[c * self.k + d] == 0 {
                self.met[c] &= !(1 << d);
                self.met[d] &= !(1 << c);
                self.unmet += 1;
            }
        }
    }

    fn assign(&mut self, i: usize, c: usize) {
        let (u, v) = self.edges[i];
        self.colors[i] = c;
        self.class_size[c] += 1;
        if self.class_size[c] == 1 {
            self.used += 1;
        }
        self.gain(u, c);
        self.gain(v, c);
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        self.adj[c * self.n + u] |= 1 << v;
        self.adj[c * self.n + v] |= 1 << u;
    }

    fn unassign(&mut self, i: usize) {
        let (u, v) = self.edges[i];
        let c = self.colors[i];
        self.colors[i] = UNSET;
        self.lose(u, c);
        self.lose(v, c);
        self.remaining[u] += 1;
        self.remaining[v] += 1;
        self.adj[c * self.n + u] &= !(1 << v);
        self.adj[c * self.n + v] &= !(1 << u);
        self.class_size[c] -= 1;
        if self.class_size[c] == 0 {
            self.used -= 1;
        }
    }

    /// Components of class `c` as vertex masks.
    fn components(&self, c: usize) -> impl Iterator<Item = u32> + '_ {
        let adj = &self.adj[c * self.n..(c + 1) * self.n];
        let mut todo: u32 = (0..self.n).filter(|&v| adj[v] != 0).fold(0, |m, v| m | 1 << v);
        std::iter::from_fn(move || {
            if todo == 0 {
                return None;
            }
            let mut comp = todo & todo.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            todo &= !comp;
            Some(comp)
        })
    }

    fn prune(&self, left: usize) -> bool {
        let (n, k) = (self.n, self.k);
        if k - self.used > left {
            return true;
        }
        if self.unmet > left * 2 * (n - 2) {
            return true;
        }
        // New pairs appear at a vertex only alongside a new color there.
        let mut capacity = 0usize;
        let mut active: u32 = 0;
        for v in 0..n {
            let r = self.remaining[v];
            if r > 0 {
                active |= 1 << v;
                let o = self.owners[v].count_ones() as usize;
                let add = r.min(k - o);
                capacity += add * o + add * add.saturating_sub(1) / 2;
            }
        }
        if self.unmet > capacity {
            return true;
        }
        // Each used color can still meet at most the colors already present at
        // vertices it could spread to, plus one color per remaining edge.
        let full: u64 = if k == 64 { u64::MAX } else { (1 << k) - 1 };
        for c in (0..k).filter(|&c| self.class_size[c] > 0) {
            let missing = full & !self.met[c];
            if missing == 0 {
                continue;
            }
            let mut reachable = 0u64;
            for v in 0..n {
                if self.owners[v] & (1 << c) == 0 && self.remaining[v] > 0 {
                    reachable |= self.owners[v];
                }
            }
            if (missing & !reachable).count_ones() as usize > left {
                return true;
            }
        }
        if self.connected {
            let mut needed = 0usize;
            for c in (0..k).filter(|&c| self.class_size[c] > 0) {
                let mut count = 0;
                let mut stranded = false;
                for comp in self.components(c) {
                    count += 1;
                    stranded |= comp & active == 0;
                }
                // a piece with no free edge can never rejoin the rest
                if count > 1 && stranded {
                    return true;
                }
                needed += count - 1;
            }
            if needed > left {
                return true;
            }
        }
        false
    }

    fn complete_ok(&self) -> bool {
        if self.unmet != 0 || self.used != self.k {
            return false;
        }
        !self.connected || (0..self.k).all(|c| self.components(c).nth(1).is_none())
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes & 0xff == 0
            && (Instant::now() >= self.deadline || self.stop.load(Ordering::Relaxed))
        {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn dfs(&mut self, i: usize) -> bool {
        if self.tick() {
            return false;
        }
        if i == self.edges.len() {
            return self.complete_ok();
        }
        let limit = if self.symmetry { (self.used + 1).min(self.k) } else { self.k };
        // Newest color first: the remaining classes need introducing anyway.
        for c in (0..limit).rev() {
            self.assign(i, c);
            let left = self.edges.len() - i - 1;
            if !self.prune(left) && self.dfs(i + 1) {
                return true;
            }
            self.unassign(i);
            if self.timed_out {
                return false;
            }
        }
        false
    }

    fn witness(&self) -> EdgeColoring {
        let colors = self.colors.iter().map(|&c| Some(c as Color + 1)).collect();
        EdgeColoring::from_colors(self.n, self.k as u32, colors, Provenance::new("search", None))
            .expect("colors in range")
    }
}

/// Prefixes (colorings of the first `depth` edges) the search splits over,
/// in the order the sequential search would visit them.
fn prefixes(k: usize, depth: usize, symmetry: bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &out {
            let used = p.iter().map(|&c| c + 1).max().unwrap_or(0);
            let limit = if symmetry { (used + 1).min(k) } else { k };
            for c in (0..limit).rev() {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// Decides whether K_n has a complete (and, in connected mode, connected)
/// edge coloring with exactly `k` colors.
pub fn decide(n: usize, k: u32, mode: Mode, symmetry: bool, deadline: Instant) -> Decision {
    let m = choose2(n);
    let k = k as usize;
    if k == 0 || k > m || k > 64 {
        return Decision::Infeasible;
    }
    let stop = AtomicBool::new(false);
    let depth = m.min(if n >= 6 { 6 } else { 0 });
    let splits = prefixes(k, depth, symmetry);
    let any_timeout = AtomicBool::new(false);
    let found = splits.par_iter().find_map_first(|prefix| {
        if stop.load(Ordering::Relaxed) || Instant::now() >= deadline {
            any_timeout.store(true, Ordering::Relaxed);
            return None;
        }
        let mut eng = Engine::new(n, k, mode, symmetry, deadline, &stop);
        for (i, &c) in prefix.iter().enumerate() {
            eng.assign(i, c);
            if eng.prune(m - i - 1) {
                return None;
            }
        }
        let ok = eng.dfs(prefix.len());
        if ok {
            stop.store(true, Ordering::Relaxed);
        } else if eng.timed_out {
            any_timeout.store(true, Ordering::Relaxed);
        }
        ok.then(|| eng.witness())
    });
    match found {
        Some(w) => Decision::Feasible(w),
        None if any_timeout.load(Ordering::Relaxed) => Decision::Timeout,
        None => Decision::Infeasible,
    }
}

fn trivial_witness(n: usize) -> EdgeColoring {
    EdgeColoring::from_colors(n, 1, vec![Some(1); choose2(n)], Provenance::new("search", None))
        .expect("single color")
}

/// The index of K_n, or a bracket when the budget runs out.
///
/// A quarter of the budget climbs from `k = 1` to collect witnesses; the rest
/// descends from [`upper_estimate`] refuting values until it meets the best
/// witness or finds a larger one.
pub fn exact_index(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    let n = config.n;
    if !(2..=MAX_SEARCH_N).contains(&n) {
        return Err(SearchError::OutOfRange(n));
    }
    let start = Instant::now();
    let end = start + config.time_budget;
    let mut upper = upper_estimate(n, config.mode);
    let mut lower = 1;
    let mut witness = trivial_witness(n);

    let climb_end = start + config.time_budget / 4;
    for k in 2..=upper {
        match decide(n, k, config.mode, config.symmetry_breaking, climb_end) {
            Decision::Feasible(w) => {
                lower = k;
                witness = w;
            }
            Decision::Infeasible => {
                upper = k - 1;
                break;
            }
            Decision::Timeout => break,
        }
    }

    let mut k = upper;
    while k > lower {
        match decide(n, k, config.mode, config.symmetry_breaking, end) {
            Decision::Feasible(w) => {
                lower = k;
                witness = w;
                break;
            }
            Decision::Infeasible => {
                upper = k - 1;
                k -= 1;
            }
            Decision::Timeout => break,
        }
    }
    let status = if lower == upper { Status::Exact } else { Status::Timeout };
    let mut witness = witness;
    witness.provenance = Provenance::new(
        match config.mode {
            Mode::Connected => "search-connected",
            Mode::Pseudoachromatic => "search",
        },
        None,
    );
    Ok(SearchResult { n, mode: config.mode, lower, upper, witness, status, elapsed: start.elapsed() })
}

/// A witness that really is complete (and connected in connected mode) with
/// exactly `k` used colors.
pub fn witness_is_valid(w: &EdgeColoring, mode: Mode) -> bool {
    w.unused_colors().is_empty()
        && check_complete(w).map(|c| c.complete).unwrap_or(false)
        && (mode == Mode::Pseudoachromatic || check_connected(w).connected)
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub connected_lower: u32,
    pub connected_upper: u32,
    pub connected_known: Option<u32>,
    pub pseudo_lower: u32,
    pub pseudo_upper: u32,
    pub pseudo_known: Option<u32>,
}

impl TableRow {
    fn agrees(lo: u32, hi: u32, known: Option<u32>) -> bool {
        known.map_or(true, |v| lo == v && hi == v)
    }

    /// Exact and equal to the published value in both modes.
    pub fn matches(&self) -> bool {
        Self::agrees(self.connected_lower, self.connected_upper, self.connected_known)
            && Self::agrees(self.pseudo_lower, self.pseudo_upper, self.pseudo_known)
    }

    /// The published values lie inside the computed brackets.
    pub fn consistent(&self) -> bool {
        let inside = |lo, hi, known: Option<u32>| known.map_or(true, |v| lo <= v && v <= hi);
        inside(self.connected_lower, self.connected_upper, self.connected_known)
            && inside(self.pseudo_lower, self.pseudo_upper, self.pseudo_known)
    }
}

/// Computes both indices for `n = 2..=max_n` next to the published values.
pub fn verify_table_prefix(max_n: usize, budget_per_search: Duration) -> Result<Vec<TableRow>, SearchError> {
    (2..=max_n)
        .map(|n| {
            let c = exact_index(&SearchConfig::new(n, Mode::Connected).with_budget(budget_per_search))?;
            let p = exact_index(&SearchConfig::new(n, Mode::Pseudoachromatic).with_budget(budget_per_search))?;
            Ok(TableRow {
                n,
                connected_lower: c.lower,
                connected_upper: c.upper,
                connected_known: known_value(n, Mode::Connected),
                pseudo_lower: p.lower,
                pseudo_upper: p.upper,
                pseudo_known: known_value(n, Mode::Pseudoachromatic),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn far() -> Instant {
        Instant::now() + Duration::from_secs(600)
    }

    /// Exhaustive oracle: every function E(K_n) -> [k], no pruning.
    fn brute_force_feasible(n: usize, k: usize, mode: Mode) -> bool {
        let m = choose2(n);
        let mut colors = vec![0usize; m];
        loop {
            let w = EdgeColoring::from_colors(
                n,
                k as u32,
                colors.iter().map(|&c| Some(c as Color + 1)).collect(),
                Provenance::new("oracle", None),
            )
            .unwrap();
            if witness_is_valid(&w, mode) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == m {
                    return false;
                }
                colors[i] += 1;
                if colors[i] < k {
                    break;
                }
                colors[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn decide_agrees_with_brute_force() {
        for n in 2..=4 {
            for k in 1..=6u32 {
                for mode in [Mode::Pseudoachromatic, Mode::Connected] {
                    let oracle = brute_force_feasible(n, k as usize, mode);
                    for symmetry in [true, false] {
                        let got = matches!(decide(n, k, mode, symmetry, far()), Decision::Feasible(_));
                        assert_eq!(got, oracle, "n={n} k={k} {mode:?} symmetry={symmetry}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_exact_values() {
        for (n, want) in [(2, 1), (3, 3), (4, 4)] {
            let r = exact_index(&SearchConfig::new(n, Mode::Pseudoachromatic)).unwrap();
            assert_eq!(r.value(), Some(want));
            assert!(witness_is_valid(&r.witness, Mode::Pseudoachromatic));
            assert_eq!(r.witness.k(), want);
        }
    }

    #[test]
    fn out_of_range() {
        assert!(exact_index(&SearchConfig::new(1, Mode::Connected)).is_err());
        assert!(exact_index(&SearchConfig::new(10, Mode::Connected)).is_err());
    }

    #[test]
    fn prefix_split_is_canonical() {
        // restricted growth strings of length 3 over <= 2 colors
        let p = prefixes(2, 3, true);
        assert_eq!(p.len(), 4);
        assert!(p.iter().all(|s| s[0] == 0));
    }
}
