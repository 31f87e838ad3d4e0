//! Dilation measurement and structural audits of WSPDs and greedy builds.

use std::collections::HashMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SpannerError};
use crate::geometry::PointSet;
use crate::graph::SpannerGraph;
use crate::search::SearchSpace;
use crate::wspd::{build_split_tree, compute_wspd, SplitTree, Wspd};

/// Largest input [`max_dilation_exact`] accepts by default.
pub const DILATION_DEFAULT_CAP: usize = 5000;
/// Largest input for which [`audit_wspd`] checks coverage pair by pair.
pub const COVERAGE_AUDIT_CAP: usize = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DilationMode {
    Exact,
    Sampled { seed: u64, sample_count: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DilationReport {
    /// Largest `delta(u, v) / |uv|` seen; `+inf` for a disconnected pair.
    /// A set with fewer than two points reports 1.
    pub max_dilation: f64,
    pub witness: Option<(usize, usize)>,
    pub checked_pairs: u64,
    pub mode: DilationMode,
}

impl DilationReport {
    /// Whether the graph met stretch `t`, allowing `rel_slack` for rounding
    /// in path sums.
    pub fn within(&self, t: f64, rel_slack: f64) -> bool {
        self.max_dilation <= t * (1.0 + rel_slack)
    }
}

fn check_graph(g: &SpannerGraph, ps: &PointSet) -> Result<()> {
    if g.vertex_count() != ps.len() {
        return Err(SpannerError::InvalidArgument(format!(
            "graph has {} vertices but point set has {}",
            g.vertex_count(),
            ps.len()
        )));
    }
    Ok(())
}

struct MaxTracker {
    best: f64,
    witness: Option<(usize, usize)>,
    checked: u64,
}

impl MaxTracker {
    fn new() -> Self {
        MaxTracker { best: 1.0, witness: None, checked: 0 }
    }

    // Larger ratio wins; equal ratios keep the lexicographically smaller pair.
    fn offer(&mut self, u: usize, v: usize, ratio: f64) {
        self.checked += 1;
        let w = (u.min(v), u.max(v));
        let better = match self.witness {
            None => true,
            Some(cur) => ratio > self.best || (ratio == self.best && w < cur),
        };
        if better {
            self.best = ratio;
            self.witness = Some(w);
        }
    }
}

pub fn max_dilation_exact(g: &SpannerGraph, ps: &PointSet) -> Result<DilationReport> {
    max_dilation_exact_with_cap(g, ps, DILATION_DEFAULT_CAP)
}

/// Maximum dilation over all `n(n-1)/2` pairs, by one full Dijkstra per vertex.
pub fn max_dilation_exact_with_cap(g: &SpannerGraph, ps: &PointSet, cap: usize) -> Result<DilationReport> {
    check_graph(g, ps)?;
    let n = ps.len();
    if n > cap {
        return Err(SpannerError::CapExceeded { what: "exact dilation", n, cap });
    }
    let mut space = SearchSpace::new(n);
    let mut tracker = MaxTracker::new();
    for u in 0..n {
        space.dijkstra(g, u, f64::INFINITY);
        for v in u + 1..n {
            let d = space.reached(v).unwrap_or(f64::INFINITY);
            tracker.offer(u, v, d / ps.dist(u, v));
        }
    }
    Ok(DilationReport {
        max_dilation: tracker.best,
        witness: tracker.witness,
        checked_pairs: tracker.checked,
        mode: DilationMode::Exact,
    })
}

/// Maps a rank in `0..n(n-1)/2` to the pair `(u, v)`, `u < v`, in row-major order.
fn unrank_pair(n: usize, rank: usize) -> (usize, usize) {
    let offset = |u: usize| u * (2 * n - u - 1) / 2;
    let (mut lo, mut hi) = (0, n - 1);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if offset(mid) <= rank {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, lo + 1 + rank - offset(lo))
}

/// Maximum dilation over `sample_count` distinct random pairs; a lower bound
/// on the true maximum, deterministic per seed.
pub fn max_dilation_sampled(g: &SpannerGraph, ps: &PointSet, sample_count: usize, seed: u64) -> Result<DilationReport> {
    check_graph(g, ps)?;
    if sample_count == 0 {
        return Err(SpannerError::InvalidArgument("sample count must be at least 1".into()));
    }
    let n = ps.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut pairs: Vec<(usize, usize)> = if sample_count >= total {
        (0..total).map(|r| unrank_pair(n, r)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        index::sample(&mut rng, total, sample_count).into_iter().map(|r| unrank_pair(n, r)).collect()
    };
    pairs.sort_unstable();
    let mut space = SearchSpace::new(n);
    let mut tracker = MaxTracker::new();
    let mut current = usize::MAX;
    for (u, v) in pairs {
        if u != current {
            space.dijkstra(g, u, f64::INFINITY);
            current = u;
        }
        let d = space.reached(v).unwrap_or(f64::INFINITY);
        tracker.offer(u, v, d / ps.dist(u, v));
    }
    Ok(DilationReport {
        max_dilation: tracker.best,
        witness: tracker.witness,
        checked_pairs: tracker.checked,
        mode: DilationMode::Sampled { seed, sample_count },
    })
}

/// Outcome of checking a WSPD against its defining properties.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WspdAudit {
    pub pair_count: usize,
    /// Whether coverage was checked point pair by point pair.
    pub exhaustive_coverage: bool,
    /// `sum |A||B|` over all pairs; must equal `n(n-1)/2`.
    pub covered_pair_total: u64,
    /// Point pairs covered zero or several times, with their count.
    pub coverage_violations: Vec<(usize, usize, u32)>,
    /// Pairs with `min_dist < s * max(diam_a, diam_b)`.
    pub separation_violations: Vec<usize>,
    /// Pairs breaking `min <= ell <= max` or, for `s > 4`, the 3/2 and 5/4 bounds.
    pub sandwich_violations: Vec<usize>,
}

impl WspdAudit {
    pub fn passed(&self, n: usize) -> bool {
        self.covered_pair_total == (n as u64) * (n as u64).saturating_sub(1) / 2
            && self.coverage_violations.is_empty()
            && self.separation_violations.is_empty()
            && self.sandwich_violations.is_empty()
    }
}

/// Builds the WSPD of `ps` with separation `s` and audits it.
pub fn audit_wspd(ps: &PointSet, s: f64) -> Result<WspdAudit> {
    let tree = build_split_tree(ps)?;
    let wspd = compute_wspd(&tree, s)?;
    Ok(audit_wspd_parts(&tree, &wspd, COVERAGE_AUDIT_CAP))
}

pub fn audit_wspd_parts(tree: &SplitTree, wspd: &Wspd, coverage_cap: usize) -> WspdAudit {
    let n = tree.point_count();
    let s = wspd.separation();
    let tol = 1e-12;
    let mut audit = WspdAudit { pair_count: wspd.pair_count(), ..WspdAudit::default() };
    for (i, p) in wspd.pairs().iter().enumerate() {
        let (a, b) = (p.node_a as usize, p.node_b as usize);
        audit.covered_pair_total += (tree.node(a).len() * tree.node(b).len()) as u64;
        if p.min_dist < s * p.diam_a(tree).max(p.diam_b(tree)) {
            audit.separation_violations.push(i);
        }
        let mut ok = p.min_dist <= p.ell && p.ell <= p.max_dist;
        if s > 4.0 {
            ok &= p.max_dist <= 1.5 * p.min_dist * (1.0 + tol);
            ok &= p.ell <= 1.25 * p.min_dist * (1.0 + tol);
        }
        if !ok {
            audit.sandwich_violations.push(i);
        }
    }
    if n <= coverage_cap {
        audit.exhaustive_coverage = true;
        let mut count = vec![0u32; n * n];
        for p in wspd.pairs() {
            for &x in tree.points(p.node_a as usize) {
                for &y in tree.points(p.node_b as usize) {
                    let (u, v) = (x.min(y) as usize, x.max(y) as usize);
                    count[u * n + v] += 1;
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if count[u * n + v] != 1 {
                    audit.coverage_violations.push((u, v, count[u * n + v]));
                }
            }
        }
    }
    audit
}

/// Outcome of mapping spanner edges to the WSPD pairs covering them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OneEdgeAudit {
    pub edges_checked: usize,
    /// Edges with no covering pair, or with more than one.
    pub coverage_errors: Vec<(usize, usize, usize)>,
    /// Pairs covering more than one edge, with two of those edges.
    pub shared: Vec<(usize, (usize, usize), (usize, usize))>,
}

impl OneEdgeAudit {
    pub fn passed(&self) -> bool {
        self.coverage_errors.is_empty() && self.shared.is_empty()
    }
}

/// Indices of the WSPD pairs containing the point pair `(u, v)`.
pub fn covering_pairs(tree: &SplitTree, wspd: &Wspd, by_node: &[Vec<u32>], u: usize, v: usize) -> Vec<usize> {
    let mut found = Vec::new();
    let mut node = tree.root();
    loop {
        for &pi in &by_node[node] {
            let p = wspd.pair(pi as usize);
            let other = if p.node_a as usize == node { p.node_b } else { p.node_a } as usize;
            if tree.contains(other, v) {
                found.push(pi as usize);
            }
        }
        match tree.node(node).children() {
            Some((a, b)) => node = if tree.contains(a, u) { a } else { b },
            None => break,
        }
    }
    found
}

/// Pair indices grouped by the tree nodes they reference.
pub fn pairs_by_node(tree: &SplitTree, wspd: &Wspd) -> Vec<Vec<u32>> {
    let mut by_node = vec![Vec::new(); tree.node_count()];
    for (i, p) in wspd.pairs().iter().enumerate() {
        by_node[p.node_a as usize].push(i as u32);
        by_node[p.node_b as usize].push(i as u32);
    }
    by_node
}

/// Checks that every edge lies in exactly one WSPD pair and that no pair
/// holds two edges.
pub fn audit_one_edge_per_pair(edges: &[(usize, usize)], tree: &SplitTree, wspd: &Wspd) -> OneEdgeAudit {
    let by_node = pairs_by_node(tree, wspd);
    let mut owner: HashMap<usize, (usize, usize)> = HashMap::with_capacity(edges.len());
    let mut audit = OneEdgeAudit { edges_checked: edges.len(), ..OneEdgeAudit::default() };
    for &(u, v) in edges {
        let found = covering_pairs(tree, wspd, &by_node, u, v);
        if found.len() != 1 {
            audit.coverage_errors.push((u, v, found.len()));
            continue;
        }
        if let Some(&prev) = owner.get(&found[0]) {
            audit.shared.push((found[0], prev, (u, v)));
        } else {
            owner.insert(found[0], (u, v));
        }
    }
    audit
}
