//! Bounded shortest-path engines: truncated Dijkstra and A* toward a disk.
//!
//! Both engines run on a reusable [`SearchSpace`] whose per-vertex arrays are
//! invalidated by bumping an epoch counter, so a search costs time
//! proportional to the vertices it touches rather than to `n`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use crate::error::{Result, SpannerError};
use crate::geometry::{dist, PointSet};
use crate::graph::SpannerGraph;

/// Relative slack applied to A* lower bounds and search radii so that
/// rounding in the heuristic can never hide a vertex inside the bound.
pub(crate) const FP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    f: f64,
    g: f64,
    v: u32,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    // Reversed: BinaryHeap is a max-heap.
    fn cmp(&self, other: &Self) -> Ordering {
        other.f.total_cmp(&self.f).then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Scratch memory for repeated searches on graphs with up to `n` vertices.
#[derive(Debug, Clone, Default)]
pub struct SearchSpace {
    dist: Vec<f64>,
    stamp: Vec<u32>,
    epoch: u32,
    heap: BinaryHeap<HeapEntry>,
    touched: Vec<u32>,
    pops: u64,
}

impl SearchSpace {
    pub fn new(n: usize) -> Self {
        SearchSpace {
            dist: vec![f64::INFINITY; n],
            stamp: vec![0; n],
            epoch: 0,
            heap: BinaryHeap::new(),
            touched: Vec::new(),
            pops: 0,
        }
    }

    fn begin(&mut self, n: usize) {
        if self.dist.len() < n {
            self.dist.resize(n, f64::INFINITY);
            self.stamp.resize(n, 0);
        }
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.heap.clear();
        self.touched.clear();
    }

    /// Tentative distance of `v` from the last search's source, if reached.
    ///
    /// Every returned value is the length of an actual path. It is exact
    /// for vertices whose lower bound (distance plus heuristic) stayed within
    /// the search bound.
    #[inline]
    pub fn reached(&self, v: usize) -> Option<f64> {
        (self.stamp[v] == self.epoch).then(|| self.dist[v])
    }

    /// Vertices reached by the last search, in first-reached order.
    pub fn touched(&self) -> impl Iterator<Item = usize> + '_ {
        self.touched.iter().map(|&v| v as usize)
    }

    /// Total heap pops over the lifetime of this space.
    pub fn pops(&self) -> u64 {
        self.pops
    }

    /// Best-first search from `source` ordered by `g + heuristic(v)`.
    ///
    /// Vertices whose lower bound exceeds `bound` are never recorded. The
    /// heuristic must be a lower bound on the remaining distance to every
    /// vertex the caller cares about; it need not be consistent, since
    /// improved vertices are simply reopened.
    pub fn run<H>(&mut self, g: &SpannerGraph, source: usize, bound: f64, heuristic: H)
    where
        H: Fn(usize) -> f64,
    {
        self.search(g, source, bound, heuristic, |_, _, _| false);
    }

    /// Like [`run`](Self::run), but calls `on_pop(v, g, f)` for every
    /// non-stale heap pop before `v` is expanded; returning `true` stops
    /// the search.
    pub fn search<H, P>(&mut self, g: &SpannerGraph, source: usize, bound: f64, heuristic: H, mut on_pop: P)
    where
        H: Fn(usize) -> f64,
        P: FnMut(usize, f64, f64) -> bool,
    {
        self.begin(g.vertex_count());
        let h0 = heuristic(source);
        if h0 > bound {
            return;
        }
        self.record(source, 0.0);
        self.heap.push(HeapEntry { f: h0, g: 0.0, v: source as u32 });
        while let Some(HeapEntry { f, g: gv, v }) = self.heap.pop() {
            self.pops += 1;
            if f > bound {
                break;
            }
            let v = v as usize;
            if gv > self.dist[v] {
                continue;
            }
            if on_pop(v, gv, f) {
                break;
            }
            for &(w, len) in g.neighbors(v) {
                let w = w as usize;
                let ng = gv + len;
                if self.stamp[w] == self.epoch && ng >= self.dist[w] {
                    continue;
                }
                let nf = ng + heuristic(w);
                if nf > bound {
                    continue;
                }
                self.record(w, ng);
                self.heap.push(HeapEntry { f: nf, g: ng, v: w as u32 });
            }
        }
    }

    /// Weighted best-first search: ordered by `g + weight * heuristic(v)`,
    /// but a vertex is only dropped when `g + heuristic(v)` exceeds `bound`.
    /// Labels are lengths of real paths, not necessarily shortest ones.
    /// `on_pop(v, g)` returning `true` stops the search.
    pub fn search_weighted<H, P>(
        &mut self,
        g: &SpannerGraph,
        source: usize,
        bound: f64,
        weight: f64,
        heuristic: H,
        mut on_pop: P,
    ) where
        H: Fn(usize) -> f64,
        P: FnMut(usize, f64) -> bool,
    {
        self.begin(g.vertex_count());
        let h0 = heuristic(source);
        if h0 > bound {
            return;
        }
        self.record(source, 0.0);
        self.heap.push(HeapEntry { f: weight * h0, g: 0.0, v: source as u32 });
        while let Some(HeapEntry { g: gv, v, .. }) = self.heap.pop() {
            self.pops += 1;
            let v = v as usize;
            if gv > self.dist[v] {
                continue;
            }
            if on_pop(v, gv) {
                break;
            }
            for &(w, len) in g.neighbors(v) {
                let w = w as usize;
                let ng = gv + len;
                if self.stamp[w] == self.epoch && ng >= self.dist[w] {
                    continue;
                }
                let h = heuristic(w);
                if ng + h > bound {
                    continue;
                }
                self.record(w, ng);
                self.heap.push(HeapEntry { f: ng + weight * h, g: ng, v: w as u32 });
            }
        }
    }

    /// Whether some path from `source` to `target` has length at most
    /// `bound`. Stops as soon as one is found. `heuristic` must lower-bound
    /// the remaining distance to `target`.
    pub fn path_within<H>(&mut self, g: &SpannerGraph, source: usize, target: usize, bound: f64, heuristic: H) -> bool
    where
        H: Fn(usize) -> f64,
    {
        if source == target {
            return true;
        }
        self.begin(g.vertex_count());
        let limit = bound * (1.0 + FP_SLACK);
        self.record(source, 0.0);
        self.heap.push(HeapEntry { f: heuristic(source), g: 0.0, v: source as u32 });
        while let Some(HeapEntry { f, g: gv, v }) = self.heap.pop() {
            self.pops += 1;
            if f > limit {
                break;
            }
            let v = v as usize;
            if gv > self.dist[v] {
                continue;
            }
            for &(w, len) in g.neighbors(v) {
                let w = w as usize;
                let ng = gv + len;
                if w == target && ng <= bound {
                    return true;
                }
                if self.stamp[w] == self.epoch && ng >= self.dist[w] {
                    continue;
                }
                let nf = ng + heuristic(w);
                if nf > limit {
                    continue;
                }
                self.record(w, ng);
                self.heap.push(HeapEntry { f: nf, g: ng, v: w as u32 });
            }
        }
        false
    }

    #[inline]
    fn record(&mut self, v: usize, d: f64) {
        if self.stamp[v] != self.epoch {
            self.stamp[v] = self.epoch;
            self.touched.push(v as u32);
        }
        self.dist[v] = d;
    }

    /// Truncated Dijkstra: afterwards `reached(v)` is exact for every `v`
    /// with distance at most `bound`, and `None` for every other vertex.
    pub fn dijkstra(&mut self, g: &SpannerGraph, source: usize, bound: f64) {
        self.run(g, source, bound, |_| 0.0);
    }

    /// A* toward the disk `(center, radius)`: afterwards `reached(v)` is
    /// exact for every vertex inside the disk with distance at most `bound`.
    pub fn astar_to_disk(
        &mut self,
        g: &SpannerGraph,
        ps: &PointSet,
        source: usize,
        center: &[f64],
        radius: f64,
        bound: f64,
    ) {
        let h = |v: usize| disk_lower_bound(ps.point(v), center, radius);
        self.run(g, source, bound * (1.0 + FP_SLACK), h);
    }
}

/// Deflated distance from `p` to the disk `(center, radius)`; zero inside.
#[inline]
pub(crate) fn disk_lower_bound(p: &[f64], center: &[f64], radius: f64) -> f64 {
    let d = dist(p, center);
    (d - radius - FP_SLACK * (d + radius)).max(0.0)
}

fn check_search_args(g: &SpannerGraph, source: usize, bound: f64) -> Result<()> {
    if source >= g.vertex_count() {
        return Err(SpannerError::VertexOutOfRange { vertex: source, n: g.vertex_count() });
    }
    if bound.is_nan() || bound < 0.0 {
        return Err(SpannerError::InvalidArgument(format!("search bound must be >= 0, got {bound}")));
    }
    Ok(())
}

/// Exact shortest-path distances from `source` to every vertex within `bound`.
pub fn bounded_sssp(g: &SpannerGraph, source: usize, bound: f64) -> Result<BTreeMap<usize, f64>> {
    check_search_args(g, source, bound)?;
    let mut space = SearchSpace::new(g.vertex_count());
    space.dijkstra(g, source, bound);
    Ok(space.touched().filter_map(|v| space.reached(v).filter(|&d| d <= bound).map(|d| (v, d))).collect())
}

/// Exact shortest-path distances from `source` to every vertex `v` with
/// `|v center| <= radius` and distance at most `bound`, found with A*.
pub fn astar_to_region(
    g: &SpannerGraph,
    ps: &PointSet,
    source: usize,
    center: &[f64],
    radius: f64,
    bound: f64,
) -> Result<BTreeMap<usize, f64>> {
    check_search_args(g, source, bound)?;
    if ps.len() != g.vertex_count() {
        return Err(SpannerError::InvalidArgument(format!(
            "graph has {} vertices but point set has {}",
            g.vertex_count(),
            ps.len()
        )));
    }
    if center.len() != ps.dim() {
        return Err(SpannerError::DimensionMismatch { expected: ps.dim(), found: center.len() });
    }
    if radius.is_nan() || radius < 0.0 {
        return Err(SpannerError::InvalidArgument(format!("radius must be >= 0, got {radius}")));
    }
    let mut space = SearchSpace::new(g.vertex_count());
    space.astar_to_disk(g, ps, source, center, radius, bound);
    Ok(space
        .touched()
        .filter(|&v| dist(ps.point(v), center) <= radius)
        .filter_map(|v| space.reached(v).filter(|&d| d <= bound).map(|d| (v, d)))
        .collect())
}
