//! Undirected geometric graph over a point set.

use crate::error::{Result, SpannerError};
use crate::geometry::PointSet;

/// Undirected weighted graph whose edge lengths are the Euclidean distances
/// of their endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct SpannerGraph {
    adjacency: Vec<Vec<(u32, f64)>>,
    edge_count: usize,
}

/// Size, degree and weight summary of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub edge_count: usize,
    pub max_degree: usize,
    pub total_weight: f64,
}

impl SpannerGraph {
    pub fn new(vertex_count: usize) -> Self {
        SpannerGraph { adjacency: vec![Vec::new(); vertex_count], edge_count: 0 }
    }

    /// Builds a graph from an edge list, computing lengths from `ps`.
    pub fn from_edges(ps: &PointSet, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SpannerGraph::new(ps.len());
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.add_edge(u, v, ps.dist(u, v))?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(u32, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].iter().any(|&(w, _)| w as usize == b)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(SpannerError::VertexOutOfRange { vertex: v, n: self.vertex_count() });
        }
        Ok(())
    }

    /// Adds the undirected edge `(u, v)` with length `w`.
    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(SpannerError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(SpannerError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.push_edge(u, v, w);
        Ok(())
    }

    /// Adds an edge the caller knows to be new and loop-free.
    pub(crate) fn push_edge(&mut self, u: usize, v: usize, w: f64) {
        debug_assert!(u != v && !self.has_edge(u, v));
        self.adjacency[u].push((v as u32, w));
        self.adjacency[v].push((u as u32, w));
        self.edge_count += 1;
    }

    /// All edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&(v, _)| u < v as usize).map(move |&(v, _)| (u, v as usize)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn stats(&self) -> GraphStats {
        let max_degree = self.adjacency.iter().map(Vec::len).max().unwrap_or(0);
        // Sum in sorted edge order so the total does not depend on insertion order.
        let total_weight = self
            .sorted_edges()
            .iter()
            .map(|&(u, v)| {
                self.adjacency[u].iter().find(|&&(w, _)| w as usize == v).map(|&(_, len)| len).unwrap_or(0.0)
            })
            .sum();
        GraphStats { edge_count: self.edge_count, max_degree, total_weight }
    }
}
