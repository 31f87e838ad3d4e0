//! Linear-space greedy spanner construction over a WSPD.
//!
//! Instead of scanning all `n^2` point pairs, the builder keeps one candidate
//! edge per well-separated pair in a priority queue: the closest point pair
//! of that WSPD pair that currently lacks a t-path. Pairs enter the queue in
//! order of their circle distance, and after each edge insertion only the
//! queued pairs the new edge could possibly help are recomputed. The output
//! is identical to the quadratic greedy algorithm under the same tie-break
//! (length, then endpoint indices).

use std::cell::Cell;
use std::collections::HashMap;

use crate::error::{Result, SpannerError};
use crate::geometry::{dist, PointSet};
use crate::graph::SpannerGraph;
use crate::queue::{CandidateEntry, CandidateKey, PairQueue};
use crate::search::{disk_lower_bound, SearchSpace, FP_SLACK};
use crate::wspd::{build_split_tree, compute_wspd, separation_for_stretch, SplitTree, Wspd};

/// Relative slack on the queue-fill guard. Treating a pair slightly early is
/// always safe; treating it late is not.
pub const GUARD_SLACK: f64 = FP_SLACK;

/// Which queued pairs get their candidate recomputed after an edge insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PruneRule {
    /// Pairs with a node circle within `t|uv|` of `u` or `v`.
    Basic,
    /// Pairs for which a path through the new edge could still be a t-path,
    /// judged by circle-to-circle distances.
    Sharpened,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyConfig {
    pub t: f64,
    /// Search toward the far node's circle with A* instead of plain Dijkstra.
    pub use_astar: bool,
    /// Skip sources already covered by a saved path of the pair.
    pub use_saved_path_skip: bool,
    /// Settle far-side targets from an already settled nearby target by the
    /// triangle inequality.
    pub use_target_cover: bool,
    /// Try a cheap weighted search for short-enough paths before the exact
    /// search; only targets it cannot settle go on to the exact search.
    pub use_quick_search: bool,
    pub prune_rule: PruneRule,
    /// Before recomputing an affected pair, check whether its current
    /// candidate still lacks a t-path; if so the candidate is unchanged.
    pub recheck_candidate: bool,
    pub record_counters: bool,
    /// Record which pairs each queue fill treated.
    pub record_trace: bool,
}

impl GreedyConfig {
    /// All optimizations on.
    pub fn new(t: f64) -> Self {
        GreedyConfig {
            t,
            use_astar: true,
            use_saved_path_skip: true,
            use_target_cover: true,
            use_quick_search: true,
            prune_rule: PruneRule::Sharpened,
            recheck_candidate: true,
            record_counters: true,
            record_trace: false,
        }
    }

    /// The unoptimized algorithm: Dijkstra, no skipping, basic pruning.
    pub fn plain(t: f64) -> Self {
        GreedyConfig {
            use_astar: false,
            use_saved_path_skip: false,
            use_target_cover: false,
            use_quick_search: false,
            prune_rule: PruneRule::Basic,
            recheck_candidate: false,
            ..GreedyConfig::new(t)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 1.0) || !self.t.is_finite() {
            return Err(SpannerError::InvalidStretch(self.t));
        }
        Ok(())
    }
}

/// Shortest path found so far by a search on one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SavedPath {
    pub source: u32,
    pub target: u32,
    pub length: f64,
}

/// Per-pair memory carried between candidate recomputations.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairRuntimeState {
    pub saved_path: Option<SavedPath>,
    /// Bit per position in the smaller node's point list.
    covered: Vec<u64>,
    covered_count: u32,
    pub exhausted: bool,
}

impl PairRuntimeState {
    pub fn covered_count(&self) -> usize {
        self.covered_count as usize
    }

    #[inline]
    fn is_covered(&self, k: usize) -> bool {
        self.covered.get(k / 64).is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    fn cover(&mut self, k: usize, len: usize) {
        if self.covered.is_empty() {
            self.covered = vec![0; len.div_ceil(64)];
        }
        self.covered[k / 64] |= 1 << (k % 64);
        self.covered_count += 1;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildCounters {
    pub closest_pair_calls: u64,
    /// Full candidate recomputations triggered by edge insertions.
    pub recomputations: u64,
    /// Single-pair checks of a queued candidate.
    pub candidate_rechecks: u64,
    pub sssp_runs: u64,
    pub skipped_by_coverage: u64,
    /// Queued pairs that the prune rule excluded from recomputation.
    pub pairs_pruned_by_distance: u64,
    pub peak_queue_size: u64,
    /// Peak of live pair states plus covered sources held by them.
    pub peak_live_state: u64,
    pub heap_pops: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildReport {
    /// `(u, v, |uv|)` in insertion order, `u < v`.
    pub edges_in_order: Vec<(u32, u32, f64)>,
    pub counters: BuildCounters,
    pub pair_count: usize,
    /// Pairs treated by each queue fill, when tracing.
    pub fill_rounds: Vec<Vec<u32>>,
}

/// Read-only inputs of a closest-pair computation.
#[derive(Clone, Copy)]
pub struct PairContext<'a> {
    pub ps: &'a PointSet,
    pub tree: &'a SplitTree,
    pub wspd: &'a Wspd,
    pub graph: &'a SpannerGraph,
    pub cfg: &'a GreedyConfig,
}

/// Scratch space for the bichromatic closest-pair-without-t-path search.
#[derive(Debug, Clone)]
pub struct ClosestPairEngine {
    search: SearchSpace,
    mark: Vec<u32>,
    epoch: u32,
    lens: Vec<f64>,
    undecided: Vec<u32>,
    /// Known path-length upper bounds from the current source to each target.
    bounds: Vec<f64>,
    /// Source visiting order for the current pair.
    order: Vec<u32>,
    /// Earlier searched sources of the current pair, with their target bounds.
    pivots: Vec<u32>,
    pivot_bounds: Vec<f64>,
}

const NOT_RELEVANT: f64 = -1.0;
const COVERED: f64 = -2.0;
/// Searched sources kept per pair for settling later sources' targets.
const MAX_PIVOTS: usize = 8;
/// Pop budget of the quick search.
const QUICK_BUDGET: u32 = 256;

fn quick_weight(t: f64) -> f64 {
    t * t
}

impl ClosestPairEngine {
    pub fn new(n: usize) -> Self {
        ClosestPairEngine {
            search: SearchSpace::new(n),
            mark: vec![0; n],
            epoch: 0,
            lens: Vec::new(),
            undecided: Vec::new(),
            bounds: Vec::new(),
            order: Vec::new(),
            pivots: Vec::new(),
            pivot_bounds: Vec::new(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch >= u32::MAX - 2 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 0;
        }
        self.epoch += 2;
        self.epoch
    }

    /// Closest `(a, b)` in `A x B` with `delta(a, b) > t|ab|` in the
    /// context's graph, or `None` if every pair has a t-path.
    ///
    /// Searches run from each point of the smaller node, nearest the far node
    /// first. Sources covered by the pair's saved path are skipped. With
    /// target cover on, a target is settled without being reached when a
    /// settled target next to it, or an earlier source's path to it, already
    /// gives a t-path. All of this is only sound while every point pair
    /// closer than the pair's circle distance has a t-path, which the greedy
    /// builder guarantees for every pair it has treated.
    pub fn closest_pair(
        &mut self,
        ctx: &PairContext<'_>,
        pair: usize,
        state: &mut PairRuntimeState,
        counters: &mut BuildCounters,
    ) -> Option<CandidateKey> {
        counters.closest_pair_calls += 1;
        let (ps, tree, cfg) = (ctx.ps, ctx.tree, ctx.cfg);
        let t = cfg.t;
        let p = ctx.wspd.pair(pair);
        let (na, nb) = (p.node_a as usize, p.node_b as usize);
        let (src_node, dst_node) = if tree.node(na).len() <= tree.node(nb).len() { (na, nb) } else { (nb, na) };
        let sources = tree.points(src_node);
        let targets = tree.points(dst_node);
        let far_center = tree.center(dst_node);
        let far_radius = tree.radius(dst_node);
        let mut best: Option<CandidateKey> = None;
        let cover = cfg.use_target_cover;
        self.lens.resize(targets.len(), 0.0);
        self.bounds.resize(targets.len(), f64::INFINITY);
        self.pivots.clear();
        self.pivot_bounds.clear();
        let mut order = std::mem::take(&mut self.order);
        order.clear();
        order.extend(0..sources.len() as u32);
        let gap = |k: u32| dist(ps.point(sources[k as usize] as usize), far_center);
        order.sort_by(|&x, &y| gap(x).total_cmp(&gap(y)).then(x.cmp(&y)));
        let pops_before = self.search.pops();

        for &k in &order {
            let k = k as usize;
            let a = sources[k] as usize;
            if state.is_covered(k) {
                counters.skipped_by_coverage += 1;
                continue;
            }
            let pa = ps.point(a);
            let to_center = dist(pa, far_center);
            if cfg.use_saved_path_skip {
                if let Some(sp) = state.saved_path {
                    let lhs = t * ps.dist(a, sp.source as usize)
                        + sp.length
                        + t * (dist(ps.point(sp.target as usize), far_center) + far_radius);
                    let rhs = t * (to_center - far_radius);
                    if lhs * (1.0 + FP_SLACK) <= rhs {
                        state.cover(k, sources.len());
                        counters.skipped_by_coverage += 1;
                        continue;
                    }
                }
            }
            if let Some(b) = best {
                if (to_center - far_radius) * (1.0 - FP_SLACK) > b.length {
                    continue;
                }
            }

            // Targets that could still improve on the best candidate, less
            // those an earlier source already reaches within t|ab|.
            let epoch = self.next_epoch();
            self.undecided.clear();
            let mut hops = [0.0; MAX_PIVOTS];
            for (hop, &pv) in hops.iter_mut().zip(&self.pivots) {
                *hop = t * ps.dist(a, pv as usize);
            }
            let hops = &hops[..self.pivots.len()];
            let mut far = 0.0f64;
            let mut relevant = 0;
            for (j, &b) in targets.iter().enumerate() {
                let len = ps.dist(a, b as usize);
                let key = CandidateKey::new(len, a, b as usize);
                self.bounds[j] = f64::INFINITY;
                if best.is_none_or(|bk| key.order(&bk).is_lt()) {
                    relevant += 1;
                    let via = hops
                        .iter()
                        .enumerate()
                        .map(|(i, &hop)| hop + self.pivot_bounds[i * targets.len() + j])
                        .fold(f64::INFINITY, f64::min);
                    if cover && via * (1.0 + FP_SLACK) <= t * len {
                        self.lens[j] = COVERED;
                        self.bounds[j] = via;
                        continue;
                    }
                    self.lens[j] = len;
                    self.mark[b as usize] = epoch;
                    self.undecided.push(j as u32);
                    far = far.max(len);
                } else {
                    self.lens[j] = NOT_RELEVANT;
                }
            }
            if self.undecided.is_empty() {
                if relevant > 0 {
                    counters.skipped_by_coverage += 1;
                }
                continue;
            }
            let mut bound = t * far * (1.0 + FP_SLACK);

            // Any path of length at most t|ab| settles b, shortest or not. A
            // weighted search heads straight for the far node and usually
            // finds one within a few hundred pops.
            let mut quick_shortest: Option<(u32, f64)> = None;
            if cfg.use_quick_search {
                counters.sssp_runs += 1;
                let (mark, undecided, lens, bounds) =
                    (&mut self.mark, &mut self.undecided, &mut self.lens, &mut self.bounds);
                let mut budget = QUICK_BUDGET;
                self.search.search_weighted(
                    ctx.graph,
                    a,
                    bound,
                    quick_weight(t),
                    |v| disk_lower_bound(ps.point(v), far_center, far_radius),
                    |v, g| {
                        budget -= 1;
                        if mark[v] == epoch && g <= t * ps.dist(a, v) {
                            if quick_shortest.is_none_or(|(_, s)| g < s) {
                                quick_shortest = Some((v as u32, g));
                            }
                            let pv = ps.point(v);
                            undecided.retain(|&j| {
                                let b = targets[j as usize] as usize;
                                let via = if b == v { g } else { g + t * dist(pv, ps.point(b)) };
                                if b == v || (cover && via * (1.0 + FP_SLACK) <= t * lens[j as usize]) {
                                    mark[b] = epoch + 1;
                                    lens[j as usize] = COVERED;
                                    bounds[j as usize] = via;
                                    return false;
                                }
                                true
                            });
                        }
                        undecided.is_empty() || budget == 0
                    },
                );
                far = undecided.iter().map(|&j| lens[j as usize]).fold(0.0, f64::max);
                bound = t * far * (1.0 + FP_SLACK);
            }

            let (mark, undecided, lens, bounds) =
                (&mut self.mark, &mut self.undecided, &mut self.lens, &mut self.bounds);
            let exact = !undecided.is_empty();
            let remaining = Cell::new(undecided.len());
            let max_g = Cell::new(0.0f64);
            // Settles a relevant target popped with final distance `g`. With
            // target cover on, `g + t|vb| <= t|ab|` also settles `b`, since `v`
            // and `b` are closer than the frontier and so have a t-path.
            let mut settle = |v: usize, g: f64| {
                if mark[v] == epoch + 1 {
                    max_g.set(max_g.get().max(g));
                }
                if mark[v] != epoch {
                    return;
                }
                mark[v] = epoch + 1;
                remaining.set(remaining.get() - 1);
                max_g.set(max_g.get().max(g));
                if cover {
                    let pv = ps.point(v);
                    undecided.retain(|&j| {
                        let b = targets[j as usize] as usize;
                        if mark[b] != epoch {
                            return false;
                        }
                        let len = lens[j as usize];
                        let via = g + t * dist(pv, ps.point(b));
                        if via * (1.0 + FP_SLACK) <= t * len {
                            mark[b] = epoch + 1;
                            lens[j as usize] = COVERED;
                            bounds[j as usize] = via;
                            remaining.set(remaining.get() - 1);
                            return false;
                        }
                        true
                    });
                }
            };
            if !exact {
                // The quick search settled everything.
            } else if cfg.use_astar {
                counters.sssp_runs += 1;
                self.search.search(
                    ctx.graph,
                    a,
                    bound,
                    |v| disk_lower_bound(ps.point(v), far_center, far_radius),
                    |v, g, f| {
                        if remaining.get() == 0 && f > max_g.get() * (1.0 + FP_SLACK) {
                            return true;
                        }
                        settle(v, g);
                        false
                    },
                );
            } else {
                counters.sssp_runs += 1;
                self.search.search(
                    ctx.graph,
                    a,
                    bound,
                    |_| 0.0,
                    |v, g, _| {
                        settle(v, g);
                        remaining.get() == 0
                    },
                );
            }

            let keep = cover && self.pivots.len() < MAX_PIVOTS;
            if keep {
                self.pivots.push(a as u32);
            }
            let mut shortest = quick_shortest;
            for (j, &b) in targets.iter().enumerate() {
                let reached = self.search.reached(b as usize);
                if let Some(g) = reached {
                    if shortest.is_none_or(|(_, s)| g < s) {
                        shortest = Some((b, g));
                    }
                }
                if keep {
                    self.pivot_bounds.push(reached.map_or(self.bounds[j], |g| g.min(self.bounds[j])));
                }
                let len = self.lens[j];
                if len < 0.0 || reached.is_some_and(|g| g <= t * len) {
                    continue;
                }
                let key = CandidateKey::new(len, a, b as usize);
                if best.is_none_or(|bk| key.order(&bk).is_lt()) {
                    best = Some(key);
                }
            }
            if let Some((b, g)) = shortest {
                if state.saved_path.is_none_or(|sp| g < sp.length) {
                    state.saved_path = Some(SavedPath { source: a as u32, target: b, length: g });
                }
            }
        }
        self.order = order;
        counters.heap_pops += self.search.pops() - pops_before;
        if best.is_none() {
            state.exhausted = true;
        }
        best
    }

    /// Whether `u` and `v` are joined by a path of length at most `t|uv|`.
    pub fn has_t_path(&mut self, ctx: &PairContext<'_>, u: usize, v: usize, counters: &mut BuildCounters) -> bool {
        counters.sssp_runs += 1;
        let ps = ctx.ps;
        let bound = ctx.cfg.t * ps.dist(u, v);
        let pops_before = self.search.pops();
        let found = if ctx.cfg.use_astar {
            let target = ps.point(v);
            self.search.path_within(ctx.graph, u, v, bound, |x| disk_lower_bound(ps.point(x), target, 0.0))
        } else {
            self.search.path_within(ctx.graph, u, v, bound, |_| 0.0)
        };
        counters.heap_pops += self.search.pops() - pops_before;
        found
    }
}

/// Stateful greedy construction; [`greedy_spanner_build`] drives it to the end.
pub struct GreedyBuilder<'a> {
    ps: &'a PointSet,
    cfg: GreedyConfig,
    tree: SplitTree,
    wspd: Wspd,
    order: Vec<u32>,
    cursor: usize,
    /// Bit per pair, set once the pair has been treated by a queue fill.
    treated: Vec<u64>,
    graph: SpannerGraph,
    queue: PairQueue,
    states: HashMap<u32, PairRuntimeState>,
    engine: ClosestPairEngine,
    live_covered: u64,
    report: BuildReport,
}

impl<'a> GreedyBuilder<'a> {
    pub fn new(ps: &'a PointSet, cfg: GreedyConfig) -> Result<Self> {
        cfg.validate()?;
        let tree = build_split_tree(ps)?;
        let wspd = compute_wspd(&tree, separation_for_stretch(cfg.t))?;
        let order = crate::wspd::pair_order(wspd.pairs());
        let m = wspd.pair_count();
        Ok(GreedyBuilder {
            ps,
            cfg,
            tree,
            wspd,
            order,
            cursor: 0,
            treated: vec![0; m.div_ceil(64)],
            graph: SpannerGraph::new(ps.len()),
            queue: PairQueue::new(m),
            states: HashMap::new(),
            engine: ClosestPairEngine::new(ps.len()),
            live_covered: 0,
            report: BuildReport { pair_count: m, ..BuildReport::default() },
        })
    }

    pub fn tree(&self) -> &SplitTree {
        &self.tree
    }

    pub fn wspd(&self) -> &Wspd {
        &self.wspd
    }

    pub fn graph(&self) -> &SpannerGraph {
        &self.graph
    }

    pub fn queue(&self) -> &PairQueue {
        &self.queue
    }

    pub fn config(&self) -> &GreedyConfig {
        &self.cfg
    }

    /// Position in the sorted pair order of the next untreated pair.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Pair indices in treatment order.
    pub fn sorted_pairs(&self) -> &[u32] {
        &self.order
    }

    pub fn report(&self) -> &BuildReport {
        &self.report
    }

    pub fn state(&self, pair: usize) -> Option<&PairRuntimeState> {
        self.states.get(&(pair as u32))
    }

    pub fn is_treated(&self, pair: usize) -> bool {
        self.treated[pair / 64] >> (pair % 64) & 1 == 1
    }

    /// Runs the closest-pair search for `pair` against the current graph,
    /// updating the pair's runtime state if it is queued. Untreated pairs
    /// are searched without source or target cover.
    pub fn closest_pair(&mut self, pair: usize) -> Option<CandidateKey> {
        let mut state = self.states.remove(&(pair as u32)).unwrap_or_default();
        let before = state.covered_count;
        let mut cfg = self.cfg;
        if !self.is_treated(pair) {
            cfg.use_saved_path_skip = false;
            cfg.use_target_cover = false;
        }
        let ctx = PairContext { ps: self.ps, tree: &self.tree, wspd: &self.wspd, graph: &self.graph, cfg: &cfg };
        let res = self.engine.closest_pair(&ctx, pair, &mut state, &mut self.report.counters);
        if self.queue.contains(pair) {
            self.live_covered += (state.covered_count - before) as u64;
            self.states.insert(pair as u32, state);
        }
        res
    }

    /// Treats pairs in sorted order while the next pair's circle distance
    /// does not exceed the queue minimum.
    pub fn fill_queue(&mut self) {
        let mut treated = Vec::new();
        while self.cursor < self.order.len() {
            let i = self.order[self.cursor] as usize;
            if let Some(min) = self.queue.peek_min() {
                if self.wspd.pair(i).min_dist > min.key.length * (1.0 + GUARD_SLACK) {
                    break;
                }
            }
            self.treated[i / 64] |= 1 << (i % 64);
            let mut state = PairRuntimeState::default();
            let ctx =
                PairContext { ps: self.ps, tree: &self.tree, wspd: &self.wspd, graph: &self.graph, cfg: &self.cfg };
            let res = self.engine.closest_pair(&ctx, i, &mut state, &mut self.report.counters);
            if let Some(key) = res {
                self.queue.insert(CandidateEntry { pair: i as u32, key });
                self.live_covered += state.covered_count as u64;
                self.states.insert(i as u32, state);
            }
            if self.cfg.record_trace {
                treated.push(i as u32);
            }
            self.cursor += 1;
        }
        if self.cfg.record_trace {
            self.report.fill_rounds.push(treated);
        }
        self.note_peaks();
    }

    fn note_peaks(&mut self) {
        let c = &mut self.report.counters;
        c.peak_queue_size = c.peak_queue_size.max(self.queue.len() as u64);
        c.peak_live_state = c.peak_live_state.max(self.states.len() as u64 + self.live_covered);
    }

    /// Queued pairs whose candidate may change after inserting edge `(u, v)`
    /// of pair `i`.
    pub fn affected_pairs(&self, i: usize, u: usize, v: usize) -> Vec<usize> {
        affected_pairs(&self.tree, &self.wspd, self.ps, &self.queue, self.cfg.t, self.cfg.prune_rule, i, u, v)
    }

    /// Extracts the next greedy edge, adds it, refreshes affected pairs and
    /// refills the queue. Returns the edge, or `None` when done.
    pub fn step(&mut self) -> Option<(usize, usize)> {
        let entry = self.queue.extract_min()?;
        let (u, v) = (entry.key.u as usize, entry.key.v as usize);
        let i = entry.pair as usize;
        if let Some(st) = self.states.remove(&entry.pair) {
            self.live_covered -= st.covered_count as u64;
        }
        self.graph.push_edge(u, v, entry.key.length);
        self.report.edges_in_order.push((u as u32, v as u32, entry.key.length));

        let affected = self.affected_pairs(i, u, v);
        self.report.counters.pairs_pruned_by_distance += (self.queue.len() - affected.len()) as u64;
        for j in affected {
            let current = self.queue.get(j).expect("affected pairs are queued").key;
            if self.cfg.recheck_candidate {
                self.report.counters.candidate_rechecks += 1;
                let ctx =
                    PairContext { ps: self.ps, tree: &self.tree, wspd: &self.wspd, graph: &self.graph, cfg: &self.cfg };
                let (c, d) = (current.u as usize, current.v as usize);
                if !self.engine.has_t_path(&ctx, c, d, &mut self.report.counters) {
                    continue;
                }
            }
            self.report.counters.recomputations += 1;
            match self.closest_pair(j) {
                None => {
                    self.queue.remove(j);
                    if let Some(st) = self.states.remove(&(j as u32)) {
                        self.live_covered -= st.covered_count as u64;
                    }
                }
                Some(key) => {
                    if key != current {
                        self.queue.increase_key(j, key);
                    }
                }
            }
        }
        self.fill_queue();
        Some((u, v))
    }

    pub fn finish(self) -> (SpannerGraph, BuildReport) {
        let mut report = self.report;
        if !self.cfg.record_counters {
            report.counters = BuildCounters::default();
        }
        (self.graph, report)
    }

    /// Runs the whole construction.
    pub fn run(mut self) -> (SpannerGraph, BuildReport) {
        self.fill_queue();
        while self.step().is_some() {}
        self.finish()
    }
}

/// Pairs with a live queue entry that the insertion of edge `(u, v)`, the
/// candidate of pair `i`, might give a new t-path. Found by a linear scan
/// over the queue.
#[allow(clippy::too_many_arguments)]
pub fn affected_pairs(
    tree: &SplitTree,
    wspd: &Wspd,
    ps: &PointSet,
    queue: &PairQueue,
    t: f64,
    rule: PruneRule,
    i: usize,
    u: usize,
    v: usize,
) -> Vec<usize> {
    let (pu, pv) = (ps.point(u), ps.point(v));
    let uv = dist(pu, pv);
    let pi = wspd.pair(i);
    let (ai, bi) = (pi.node_a as usize, pi.node_b as usize);
    // Any path through (u, v) is at least as long as the circle gaps plus |uv|.
    let length = pi.ell.min(uv);
    let reach = t * uv * (1.0 + FP_SLACK);
    queue
        .entries()
        .iter()
        .map(|e| e.pair as usize)
        .filter(|&j| {
            let pj = wspd.pair(j);
            let (aj, bj) = (pj.node_a as usize, pj.node_b as usize);
            match rule {
                PruneRule::Basic => [aj, bj]
                    .iter()
                    .any(|&x| tree.point_to_circle(pu, x) <= reach || tree.point_to_circle(pv, x) <= reach),
                PruneRule::Sharpened => {
                    let limit = t * pj.max_dist * (1.0 + FP_SLACK);
                    tree.circle_min(ai, aj) + length + tree.circle_min(bj, bi) <= limit
                        || tree.circle_min(ai, bj) + length + tree.circle_min(aj, bi) <= limit
                }
            }
        })
        .collect()
}

/// Builds the greedy t-spanner of `ps`.
pub fn greedy_spanner_build(ps: &PointSet, cfg: GreedyConfig) -> Result<(SpannerGraph, BuildReport)> {
    Ok(GreedyBuilder::new(ps, cfg)?.run())
}
