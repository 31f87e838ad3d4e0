//! Reference and comparison spanners: the quadratic greedy algorithm, the
//! Θ-graph and the WSPD spanner.

use std::f64::consts::PI;

use crate::error::{Result, SpannerError};
use crate::geometry::PointSet;
use crate::graph::SpannerGraph;
use crate::queue::CandidateKey;
use crate::search::SearchSpace;
use crate::wspd::{build_split_tree, compute_wspd};

/// Largest input [`greedy_naive`] accepts by default.
pub const NAIVE_DEFAULT_CAP: usize = 5000;

/// The original greedy algorithm: scan all point pairs by increasing
/// length (ties by endpoint indices) and add `(u, v)` whenever the current
/// graph has no path of length at most `t|uv|` between them.
pub fn greedy_naive(ps: &PointSet, t: f64) -> Result<SpannerGraph> {
    greedy_naive_with_cap(ps, t, NAIVE_DEFAULT_CAP)
}

pub fn greedy_naive_with_cap(ps: &PointSet, t: f64, cap: usize) -> Result<SpannerGraph> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(SpannerError::InvalidStretch(t));
    }
    let n = ps.len();
    if n > cap {
        return Err(SpannerError::CapExceeded { what: "greedy-naive", n, cap });
    }
    let mut pairs: Vec<CandidateKey> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            pairs.push(CandidateKey::new(ps.dist(u, v), u, v));
        }
    }
    pairs.sort_unstable_by(|a, b| a.order(b));
    let mut g = SpannerGraph::new(n);
    let mut space = SearchSpace::new(n);
    for key in pairs {
        let (u, v) = (key.u as usize, key.v as usize);
        if !space.path_within(&g, u, v, t * key.length, |_| 0.0) {
            g.push_edge(u, v, key.length);
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaConfig {
    /// Number of cones around each point.
    pub k: usize,
}

/// Cone of direction `(dx, dy)`; cone `c` covers angles `[c, c + 1) * 2π/k`.
fn cone_of(dx: f64, dy: f64, k: usize) -> usize {
    let mut angle = dy.atan2(dx);
    if angle < 0.0 {
        angle += 2.0 * PI;
    }
    ((angle / (2.0 * PI / k as f64)) as usize).min(k - 1)
}

/// Uniform bucket grid over a planar point set.
struct Grid {
    x0: f64,
    y0: f64,
    cell: f64,
    cols: usize,
    rows: usize,
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl Grid {
    fn new(ps: &PointSet) -> Grid {
        let n = ps.len();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in ps.iter() {
            x0 = x0.min(p[0]);
            y0 = y0.min(p[1]);
            x1 = x1.max(p[0]);
            y1 = y1.max(p[1]);
        }
        let extent = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        let per_side = ((n as f64 / 2.0).sqrt().ceil() as usize).max(1);
        let cell = extent / per_side as f64;
        let cols = (((x1 - x0) / cell) as usize + 1).max(1);
        let rows = (((y1 - y0) / cell) as usize + 1).max(1);
        let mut grid = Grid { x0, y0, cell, cols, rows, starts: vec![0; cols * rows + 1], items: vec![0; n] };
        for p in ps.iter() {
            let c = grid.cell_of(p);
            grid.starts[c + 1] += 1;
        }
        for c in 0..cols * rows {
            grid.starts[c + 1] += grid.starts[c];
        }
        let mut fill = grid.starts.clone();
        for (i, p) in ps.iter().enumerate() {
            let c = grid.cell_of(p);
            grid.items[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        grid
    }

    fn coords(&self, p: &[f64]) -> (usize, usize) {
        let cx = (((p[0] - self.x0) / self.cell) as usize).min(self.cols - 1);
        let cy = (((p[1] - self.y0) / self.cell) as usize).min(self.rows - 1);
        (cx, cy)
    }

    fn cell_of(&self, p: &[f64]) -> usize {
        let (cx, cy) = self.coords(p);
        cy * self.cols + cx
    }

    fn bucket(&self, cx: usize, cy: usize) -> &[u32] {
        let c = cy * self.cols + cx;
        &self.items[self.starts[c] as usize..self.starts[c + 1] as usize]
    }

    /// Calls `f` on every bucket at Chebyshev ring distance `r` from `(cx, cy)`.
    fn ring(&self, cx: usize, cy: usize, r: usize, mut f: impl FnMut(&[u32])) {
        let (cx, cy, r) = (cx as isize, cy as isize, r as isize);
        for y in cy - r..=cy + r {
            if y < 0 || y >= self.rows as isize {
                continue;
            }
            let step = if y == cy - r || y == cy + r { 1 } else { (2 * r).max(1) };
            let mut x = cx - r;
            while x <= cx + r {
                if x >= 0 && x < self.cols as isize {
                    f(self.bucket(x as usize, y as usize));
                }
                x += step;
            }
        }
    }

    fn max_ring(&self) -> usize {
        self.cols.max(self.rows)
    }
}

/// Θ-graph in the plane: every point connects to the point of each cone
/// whose projection onto the cone bisector is smallest (ties by index).
/// Undirected duplicates are merged.
pub fn theta_graph(ps: &PointSet, cfg: ThetaConfig) -> Result<SpannerGraph> {
    if ps.dim() != 2 {
        return Err(SpannerError::UnsupportedDimension(ps.dim()));
    }
    let k = cfg.k;
    if k < 2 {
        return Err(SpannerError::InvalidConeCount(k));
    }
    let n = ps.len();
    let width = 2.0 * PI / k as f64;
    let bisectors: Vec<(f64, f64)> = (0..k)
        .map(|c| {
            let a = (c as f64 + 0.5) * width;
            (a.cos(), a.sin())
        })
        .collect();
    // Projection of any in-cone point is at least its distance times this.
    let cos_half = (width / 2.0).cos();
    let grid = Grid::new(ps);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(n * k);
    let mut best: Vec<Option<(f64, u32)>> = vec![None; k];
    for p in 0..n {
        let pp = ps.point(p);
        best.iter_mut().for_each(|b| *b = None);
        let (cx, cy) = grid.coords(pp);
        for r in 0..=grid.max_ring() {
            if r >= 2 && cos_half > 1e-12 {
                let reach = (r - 1) as f64 * grid.cell * cos_half;
                if best.iter().all(|b| b.is_some_and(|(proj, _)| proj < reach)) {
                    break;
                }
            }
            grid.ring(cx, cy, r, |bucket| {
                for &q in bucket {
                    if q as usize == p {
                        continue;
                    }
                    let pq = ps.point(q as usize);
                    let (dx, dy) = (pq[0] - pp[0], pq[1] - pp[1]);
                    let c = cone_of(dx, dy, k);
                    let proj = dx * bisectors[c].0 + dy * bisectors[c].1;
                    let cand = (proj, q);
                    if best[c].is_none_or(|b| cand.0 < b.0 || (cand.0 == b.0 && cand.1 < b.1)) {
                        best[c] = Some(cand);
                    }
                }
            });
        }
        for &(_, q) in best.iter().flatten() {
            let (a, b) = (p as u32, q);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut g = SpannerGraph::new(n);
    for (u, v) in edges {
        g.push_edge(u as usize, v as usize, ps.dist(u as usize, v as usize));
    }
    Ok(g)
}

/// One edge per well-separated pair, joining the lowest-index point of each
/// side. The list has exactly one entry per pair and may repeat edges.
pub fn wspd_spanner_edges(ps: &PointSet, t: f64) -> Result<Vec<(usize, usize)>> {
    if !(t > 1.0) || !t.is_finite() {
        return Err(SpannerError::InvalidStretch(t));
    }
    let tree = build_split_tree(ps)?;
    let wspd = compute_wspd(&tree, wspd_spanner_separation(t))?;
    Ok(wspd
        .pairs()
        .iter()
        .map(|p| {
            let a = *tree.points(p.node_a as usize).iter().min().unwrap() as usize;
            let b = *tree.points(p.node_b as usize).iter().min().unwrap() as usize;
            (a.min(b), a.max(b))
        })
        .collect())
}

/// Separation constant for the WSPD spanner with stretch `t`.
///
/// For a pair with diameters at most `|ab| / s`, the representative edge
/// plus t-paths inside both sides has length at most
/// `|ab| (1 + 2(t + 1) / s)`, which is `t|ab|` exactly at this `s`. The
/// greedy separation `2t / (t - 1)` is too small for this construction.
pub fn wspd_spanner_separation(t: f64) -> f64 {
    2.0 * (t + 1.0) / (t - 1.0)
}

/// The WSPD spanner with duplicate representative edges merged.
pub fn wspd_spanner(ps: &PointSet, t: f64) -> Result<SpannerGraph> {
    let mut edges = wspd_spanner_edges(ps, t)?;
    edges.sort_unstable();
    edges.dedup();
    SpannerGraph::from_edges(ps, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec, PointKind};
    use crate::verify::max_dilation_exact;
    use crate::wspd::compute_wspd;

    fn brute_theta(ps: &PointSet, k: usize) -> Vec<(usize, usize)> {
        let width = 2.0 * PI / k as f64;
        let mut edges = Vec::new();
        for p in 0..ps.len() {
            let mut best: Vec<Option<(f64, usize)>> = vec![None; k];
            for q in 0..ps.len() {
                if q == p {
                    continue;
                }
                let (dx, dy) = (ps.point(q)[0] - ps.point(p)[0], ps.point(q)[1] - ps.point(p)[1]);
                let c = cone_of(dx, dy, k);
                let a = (c as f64 + 0.5) * width;
                let proj = dx * a.cos() + dy * a.sin();
                if best[c].is_none_or(|(bp, bq)| proj < bp || (proj == bp && q < bq)) {
                    best[c] = Some((proj, q));
                }
            }
            for (_, q) in best.into_iter().flatten() {
                edges.push((p.min(q), p.max(q)));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    #[test]
    fn naive_small_cases() {
        let ps = PointSet::from_xy(&[[0.0, 0.0], [0.0, 2.0]]).unwrap();
        assert_eq!(greedy_naive(&ps, 2.0).unwrap().sorted_edges(), vec![(0, 1)]);
        let ps = PointSet::from_xy(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]).unwrap();
        assert_eq!(greedy_naive(&ps, 2.0).unwrap().sorted_edges(), vec![(0, 1), (1, 2)]);
        // Equilateral triangle: a two-hop path has dilation exactly 2.
        let h = 3f64.sqrt() / 2.0;
        let ps = PointSet::from_xy(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]).unwrap();
        assert_eq!(greedy_naive(&ps, 1.9).unwrap().edge_count(), 3);
    }

    #[test]
    fn naive_errors() {
        let ps = generate(&GeneratorSpec::new(PointKind::Uniform, 30, 0)).unwrap();
        assert!(matches!(greedy_naive(&ps, 1.0), Err(SpannerError::InvalidStretch(_))));
        assert!(matches!(greedy_naive_with_cap(&ps, 2.0, 20), Err(SpannerError::CapExceeded { n: 30, cap: 20, .. })));
    }

    #[test]
    fn theta_small_cases() {
        let one = PointSet::from_xy(&[[1.0, 1.0]]).unwrap();
        assert_eq!(theta_graph(&one, ThetaConfig { k: 6 }).unwrap().edge_count(), 0);
        let two = PointSet::from_xy(&[[0.0, 0.0], [1.0, 3.0]]).unwrap();
        for k in 2..12 {
            assert_eq!(theta_graph(&two, ThetaConfig { k }).unwrap().sorted_edges(), vec![(0, 1)]);
        }
        assert!(matches!(theta_graph(&two, ThetaConfig { k: 1 }), Err(SpannerError::InvalidConeCount(1))));
        let ps3 = PointSet::from_flat(3, vec![0.0, 0.0, 0.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(theta_graph(&ps3, ThetaConfig { k: 6 }), Err(SpannerError::UnsupportedDimension(3))));
    }

    #[test]
    fn cone_boundaries_are_half_open() {
        assert_eq!(cone_of(1.0, 0.0, 6), 0);
        assert_eq!(cone_of(1.0, -1e-12, 6), 5);
        assert_eq!(cone_of(-1.0, 0.0, 4), 2);
        assert_eq!(cone_of(0.0, 1.0, 4), 1);
        assert_eq!(cone_of(0.0, -1.0, 4), 3);
    }

    #[test]
    fn theta_matches_brute_force() {
        for (kind, n, seed) in
            [(PointKind::Uniform, 300, 1), (PointKind::Clustered, 300, 2), (PointKind::Gamma, 250, 3)]
        {
            let ps = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
            for k in [2, 3, 4, 6, 9, 16] {
                let g = theta_graph(&ps, ThetaConfig { k }).unwrap();
                assert_eq!(g.sorted_edges(), brute_theta(&ps, k), "{kind} k={k}");
            }
        }
        // A lattice has many equal projections.
        let mut pts = Vec::new();
        for x in 0..12 {
            for y in 0..12 {
                pts.push([x as f64, y as f64]);
            }
        }
        let ps = PointSet::from_xy(&pts).unwrap();
        for k in [4, 6, 8] {
            assert_eq!(theta_graph(&ps, ThetaConfig { k }).unwrap().sorted_edges(), brute_theta(&ps, k));
        }
    }

    #[test]
    fn theta_density_at_n1000() {
        let ps = generate(&GeneratorSpec::new(PointKind::Uniform, 1000, 4)).unwrap();
        let g = theta_graph(&ps, ThetaConfig { k: 6 }).unwrap();
        let per_point = g.edge_count() as f64 / 1000.0;
        assert!((3.5..=4.6).contains(&per_point), "{per_point}");
    }

    #[test]
    fn wspd_spanner_has_one_edge_per_pair() {
        let two = PointSet::from_xy(&[[0.0, 0.0], [5.0, 5.0]]).unwrap();
        assert_eq!(wspd_spanner(&two, 2.0).unwrap().sorted_edges(), vec![(0, 1)]);
        for seed in 0..3 {
            let ps = generate(&GeneratorSpec::new(PointKind::Uniform, 200, seed)).unwrap();
            let tree = build_split_tree(&ps).unwrap();
            let m = compute_wspd(&tree, wspd_spanner_separation(1.5)).unwrap().pair_count();
            assert_eq!(wspd_spanner_edges(&ps, 1.5).unwrap().len(), m);
        }
    }

    #[test]
    fn wspd_spanner_meets_stretch() {
        for (kind, n, t, seed) in [
            (PointKind::Uniform, 400, 2.0, 1),
            (PointKind::Uniform, 300, 1.5, 2),
            (PointKind::Clustered, 400, 1.2, 3),
            (PointKind::Gamma, 300, 1.1, 4),
        ] {
            let ps = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
            let g = wspd_spanner(&ps, t).unwrap();
            let report = max_dilation_exact(&g, &ps).unwrap();
            assert!(report.within(t, 1e-9), "{kind} t={t}: {report:?}");
        }
    }
}
