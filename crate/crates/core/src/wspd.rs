//! Fair split tree and well-separated pair decomposition.
//!
//! Every tree node owns a contiguous range of one permuted index array, so
//! each node exposes its member points as an explicit slice without copying.
//! Node geometry is summarized by the circle circumscribing its bounding box,
//! and all pair metrics are measured between those circles.

use crate::error::{Result, SpannerError};
use crate::geometry::{dist, PointSet};

/// Node of a [`SplitTree`]. Geometry lives in the tree's flat arrays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitTreeNode {
    start: u32,
    end: u32,
    children: Option<[u32; 2]>,
    radius: f64,
}

impl SplitTreeNode {
    pub fn len(&self) -> usize {
        (self.end - self.start) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn children(&self) -> Option<(usize, usize)> {
        self.children.map(|[a, b]| (a as usize, b as usize))
    }

    /// Radius of the circle around the bounding box (half its diagonal).
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.radius
    }
}

/// Fair split tree: each internal node is cut by the hyperplane through the
/// midpoint of the longest side of its bounding box. Node 0 is the root.
#[derive(Debug, Clone)]
pub struct SplitTree {
    dim: usize,
    order: Vec<u32>,
    position: Vec<u32>,
    nodes: Vec<SplitTreeNode>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    center: Vec<f64>,
}

impl SplitTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn point_count(&self) -> usize {
        self.order.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn root(&self) -> usize {
        0
    }

    #[inline]
    pub fn node(&self, id: usize) -> &SplitTreeNode {
        &self.nodes[id]
    }

    /// Indices of the points stored at `id`.
    #[inline]
    pub fn points(&self, id: usize) -> &[u32] {
        let n = &self.nodes[id];
        &self.order[n.start as usize..n.end as usize]
    }

    #[inline]
    pub fn contains(&self, id: usize, point: usize) -> bool {
        let n = &self.nodes[id];
        let p = self.position[point];
        n.start <= p && p < n.end
    }

    pub fn bbox(&self, id: usize) -> (&[f64], &[f64]) {
        let r = id * self.dim..(id + 1) * self.dim;
        (&self.lo[r.clone()], &self.hi[r])
    }

    #[inline]
    pub fn center(&self, id: usize) -> &[f64] {
        &self.center[id * self.dim..(id + 1) * self.dim]
    }

    #[inline]
    pub fn radius(&self, id: usize) -> f64 {
        self.nodes[id].radius
    }

    /// Distance between the centers of the circles of two nodes.
    #[inline]
    pub fn center_distance(&self, a: usize, b: usize) -> f64 {
        dist(self.center(a), self.center(b))
    }

    /// Shortest distance between the circles of two nodes, clamped at zero.
    #[inline]
    pub fn circle_min(&self, a: usize, b: usize) -> f64 {
        (self.center_distance(a, b) - self.radius(a) - self.radius(b)).max(0.0)
    }

    /// Longest distance between the circles of two nodes.
    #[inline]
    pub fn circle_max(&self, a: usize, b: usize) -> f64 {
        self.center_distance(a, b) + self.radius(a) + self.radius(b)
    }

    /// Distance from a point to the circle of a node; zero inside.
    #[inline]
    pub fn point_to_circle(&self, p: &[f64], id: usize) -> f64 {
        (dist(p, self.center(id)) - self.radius(id)).max(0.0)
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(0usize, 0usize)];
        while let Some((id, d)) = stack.pop() {
            best = best.max(d);
            if let Some((a, b)) = self.nodes[id].children() {
                stack.push((a, d + 1));
                stack.push((b, d + 1));
            }
        }
        best
    }

    /// Sum of the sizes of all node point lists.
    pub fn total_list_length(&self) -> usize {
        self.nodes.iter().map(SplitTreeNode::len).sum()
    }
}

/// Builds the fair split tree of `ps`.
///
/// Points lying exactly on a splitting hyperplane go to the lower child.
pub fn build_split_tree(ps: &PointSet) -> Result<SplitTree> {
    let n = ps.len();
    let dim = ps.dim();
    if n == 0 {
        return Err(SpannerError::EmptyPointSet);
    }
    let mut tree = SplitTree {
        dim,
        order: (0..n as u32).collect(),
        position: vec![0; n],
        nodes: Vec::with_capacity(2 * n - 1),
        lo: Vec::with_capacity((2 * n - 1) * dim),
        hi: Vec::with_capacity((2 * n - 1) * dim),
        center: Vec::with_capacity((2 * n - 1) * dim),
    };
    tree.push_node(ps, 0, n as u32);
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let node = tree.nodes[id];
        if node.len() == 1 {
            continue;
        }
        let (axis, width) = {
            let (lo, hi) = tree.bbox(id);
            (0..dim)
                .map(|k| (k, hi[k] - lo[k]))
                .fold((0, f64::NEG_INFINITY), |best, c| if c.1 > best.1 { c } else { best })
        };
        if width <= 0.0 {
            let pts = tree.points(id);
            return Err(SpannerError::DuplicatePoint {
                first: pts[0].min(pts[1]) as usize,
                second: pts[0].max(pts[1]) as usize,
            });
        }
        let lo = tree.lo[id * dim + axis];
        let hi = tree.hi[id * dim + axis];
        let mid = lo + 0.5 * (hi - lo);
        let range = node.start as usize..node.end as usize;
        let mut split = partition(&mut tree.order[range.clone()], |p| ps.point(p as usize)[axis] <= mid);
        if split == range.len() {
            // The midpoint rounded onto the upper face; cut just below it.
            split = partition(&mut tree.order[range.clone()], |p| ps.point(p as usize)[axis] < hi);
        }
        debug_assert!(split > 0 && split < range.len());
        let cut = node.start + split as u32;
        let left = tree.push_node(ps, node.start, cut);
        let right = tree.push_node(ps, cut, node.end);
        tree.nodes[id].children = Some([left as u32, right as u32]);
        stack.push(right);
        stack.push(left);
    }
    for (pos, &p) in tree.order.iter().enumerate() {
        tree.position[p as usize] = pos as u32;
    }
    Ok(tree)
}

/// Stable-enough in-place partition; returns the number of elements for
/// which `pred` holds, which end up at the front.
fn partition(xs: &mut [u32], pred: impl Fn(u32) -> bool) -> usize {
    let mut k = 0;
    for i in 0..xs.len() {
        if pred(xs[i]) {
            xs.swap(i, k);
            k += 1;
        }
    }
    k
}

impl SplitTree {
    fn push_node(&mut self, ps: &PointSet, start: u32, end: u32) -> usize {
        let dim = self.dim;
        let id = self.nodes.len();
        let first = ps.point(self.order[start as usize] as usize);
        let mut lo = first.to_vec();
        let mut hi = first.to_vec();
        for &p in &self.order[start as usize + 1..end as usize] {
            for (k, &c) in ps.point(p as usize).iter().enumerate() {
                lo[k] = lo[k].min(c);
                hi[k] = hi[k].max(c);
            }
        }
        let radius = 0.5 * dist(&lo, &hi);
        for k in 0..dim {
            self.center.push(lo[k] + 0.5 * (hi[k] - lo[k]));
        }
        self.lo.extend_from_slice(&lo);
        self.hi.extend_from_slice(&hi);
        self.nodes.push(SplitTreeNode { start, end, children: None, radius });
        id
    }
}

/// One well-separated pair `{A, B}` with its precomputed circle metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WspdPair {
    pub node_a: u32,
    pub node_b: u32,
    /// Shortest distance between the two circles.
    pub min_dist: f64,
    /// Longest distance between the two circles.
    pub max_dist: f64,
    /// Distance between the circle centers.
    pub ell: f64,
}

impl WspdPair {
    pub fn diam_a(&self, tree: &SplitTree) -> f64 {
        tree.node(self.node_a as usize).diameter()
    }

    pub fn diam_b(&self, tree: &SplitTree) -> f64 {
        tree.node(self.node_b as usize).diameter()
    }
}

/// An s-well-separated pair decomposition over a split tree.
#[derive(Debug, Clone)]
pub struct Wspd {
    pub(crate) separation: f64,
    pub(crate) pairs: Vec<WspdPair>,
}

impl Wspd {
    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn pairs(&self) -> &[WspdPair] {
        &self.pairs
    }

    pub fn pair(&self, i: usize) -> &WspdPair {
        &self.pairs[i]
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Indices of all pairs, sorted by `min_dist` with ties in index order.
    pub fn pairs_sorted_by_min(&self) -> Vec<usize> {
        pairs_sorted_by_min(&self.pairs)
    }
}

/// Separation constant used for a spanner with stretch factor `t`.
pub fn separation_for_stretch(t: f64) -> f64 {
    2.0 * t / (t - 1.0)
}

fn make_pair(tree: &SplitTree, a: usize, b: usize) -> WspdPair {
    let ell = tree.center_distance(a, b);
    let (ra, rb) = (tree.radius(a), tree.radius(b));
    WspdPair { node_a: a as u32, node_b: b as u32, min_dist: (ell - ra - rb).max(0.0), max_dist: ell + ra + rb, ell }
}

#[inline]
fn is_well_separated(tree: &SplitTree, p: &WspdPair, s: f64) -> bool {
    let diam = tree.radius(p.node_a as usize).max(tree.radius(p.node_b as usize)) * 2.0;
    p.min_dist >= s * diam
}

/// Computes the s-well-separated pair decomposition of the tree's points.
///
/// Memory grows roughly as `s^d n`, so very large `s` is expensive.
pub fn compute_wspd(tree: &SplitTree, s: f64) -> Result<Wspd> {
    if s.is_nan() || s <= 0.0 {
        return Err(SpannerError::InvalidSeparation(s));
    }
    let mut pairs = Vec::new();
    let mut stack: Vec<(u32, u32)> = Vec::new();
    let mut internal = vec![tree.root()];
    while let Some(id) = internal.pop() {
        if let Some((a, b)) = tree.node(id).children() {
            internal.push(b);
            internal.push(a);
            stack.push((a as u32, b as u32));
            while let Some((x, y)) = stack.pop() {
                let (x, y) = (x as usize, y as usize);
                let cand = make_pair(tree, x, y);
                if is_well_separated(tree, &cand, s) {
                    pairs.push(cand);
                    continue;
                }
                let (big, other) = if tree.radius(x) >= tree.radius(y) { (x, y) } else { (y, x) };
                let (c1, c2) = tree.node(big).children().expect("a node with positive radius has children");
                stack.push((c2 as u32, other as u32));
                stack.push((c1 as u32, other as u32));
            }
        }
    }
    Ok(Wspd { separation: s, pairs })
}

/// Permutation of pair indices by nondecreasing `min_dist`, ties by index.
pub fn pairs_sorted_by_min(pairs: &[WspdPair]) -> Vec<usize> {
    pair_order(pairs).into_iter().map(|i| i as usize).collect()
}

/// Same permutation as [`pairs_sorted_by_min`], at half the memory.
pub(crate) fn pair_order(pairs: &[WspdPair]) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..pairs.len() as u32).collect();
    idx.sort_unstable_by(|&i, &j| pairs[i as usize].min_dist.total_cmp(&pairs[j as usize].min_dist).then(i.cmp(&j)));
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, GeneratorSpec, PointKind};

    fn pair_with_min(min_dist: f64) -> WspdPair {
        WspdPair { node_a: 0, node_b: 0, min_dist, max_dist: min_dist, ell: min_dist }
    }

    #[test]
    fn single_point_is_one_leaf() {
        let ps = PointSet::from_xy(&[[1.0, 2.0]]).unwrap();
        let tree = build_split_tree(&ps).unwrap();
        assert_eq!(tree.node_count(), 1);
        assert!(tree.node(0).is_leaf());
        assert_eq!(tree.radius(0), 0.0);
        assert_eq!(compute_wspd(&tree, 4.0).unwrap().pair_count(), 0);
    }

    #[test]
    fn two_points() {
        let ps = PointSet::from_xy(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        let tree = build_split_tree(&ps).unwrap();
        assert_eq!(tree.node_count(), 3);
        let (a, b) = tree.node(0).children().unwrap();
        assert!(tree.node(a).is_leaf() && tree.node(b).is_leaf());
        assert_eq!(tree.radius(0), 2.5);
        assert_eq!(tree.center(0), &[1.5, 2.0]);
        for s in [0.5, 4.0, 1e6] {
            let w = compute_wspd(&tree, s).unwrap();
            assert_eq!(w.pair_count(), 1);
            let p = w.pair(0);
            assert_eq!((p.min_dist, p.max_dist, p.ell), (5.0, 5.0, 5.0));
            let mut sides = [tree.points(p.node_a as usize)[0], tree.points(p.node_b as usize)[0]];
            sides.sort();
            assert_eq!(sides, [0, 1]);
        }
    }

    #[test]
    fn split_ties_go_low() {
        // x-extent 2, midpoint 1: the point at x = 1 joins the lower child.
        let ps = PointSet::from_xy(&[[0.0, 0.0], [1.0, 0.5], [2.0, 0.0]]).unwrap();
        let tree = build_split_tree(&ps).unwrap();
        let (a, b) = tree.node(0).children().unwrap();
        let mut low = tree.points(a).to_vec();
        low.sort();
        assert_eq!(low, vec![0, 1]);
        assert_eq!(tree.points(b), &[2]);
    }

    #[test]
    fn tree_invariants_and_shape() {
        let ps = generate(&GeneratorSpec::new(PointKind::Uniform, 100, 5)).unwrap();
        let tree = build_split_tree(&ps).unwrap();
        assert_eq!(tree.node_count(), 199);
        for id in 0..tree.node_count() {
            let node = tree.node(id);
            let (lo, hi) = tree.bbox(id);
            for &p in tree.points(id) {
                let c = ps.point(p as usize);
                for k in 0..2 {
                    assert!(lo[k] <= c[k] && c[k] <= hi[k]);
                }
                assert!(tree.contains(id, p as usize));
                assert!(dist(c, tree.center(id)) <= tree.radius(id) * (1.0 + 1e-12));
            }
            for k in 0..2 {
                assert!(tree.points(id).iter().any(|&p| ps.point(p as usize)[k] == lo[k]));
                assert!(tree.points(id).iter().any(|&p| ps.point(p as usize)[k] == hi[k]));
            }
            match node.children() {
                None => assert_eq!(node.len(), 1),
                Some((a, b)) => {
                    let mut joined: Vec<u32> = tree.points(a).iter().chain(tree.points(b)).copied().collect();
                    let mut own = tree.points(id).to_vec();
                    joined.sort();
                    own.sort();
                    assert_eq!(joined, own);
                }
            }
        }
        let log_n = (100f64).log2();
        assert!(tree.total_list_length() as f64 <= 4.0 * 100.0 * log_n);
        assert!(tree.depth() as f64 <= 3.0 * log_n, "depth {}", tree.depth());
    }

    #[test]
    fn rejects_bad_separation() {
        let ps = PointSet::from_xy(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        let tree = build_split_tree(&ps).unwrap();
        assert!(compute_wspd(&tree, 0.0).is_err());
        assert!(compute_wspd(&tree, -1.0).is_err());
        assert!(compute_wspd(&tree, f64::NAN).is_err());
    }

    #[test]
    fn pair_count_near_reported_value() {
        // About 2000 pairs for 100 uniform points at t = 2 (s = 4).
        let mut total = 0;
        for seed in 0..10 {
            let ps = generate(&GeneratorSpec::new(PointKind::Uniform, 100, seed)).unwrap();
            let tree = build_split_tree(&ps).unwrap();
            total += compute_wspd(&tree, separation_for_stretch(2.0)).unwrap().pair_count();
        }
        let mean = total as f64 / 10.0;
        assert!((1000.0..=4000.0).contains(&mean), "mean m = {mean}");
    }

    #[test]
    fn sorted_by_min_examples() {
        assert_eq!(pairs_sorted_by_min(&[pair_with_min(1.0)]), vec![0]);
        let p = [pair_with_min(3.0), pair_with_min(1.0), pair_with_min(2.0)];
        assert_eq!(pairs_sorted_by_min(&p), vec![1, 2, 0]);
        let ties = [pair_with_min(2.0), pair_with_min(1.0), pair_with_min(2.0), pair_with_min(1.0)];
        assert_eq!(pairs_sorted_by_min(&ties), vec![1, 3, 0, 2]);
    }

    #[test]
    fn separation_formula() {
        assert_eq!(separation_for_stretch(2.0), 4.0);
        assert!((separation_for_stretch(1.1) - 22.0).abs() < 1e-9);
    }
}
