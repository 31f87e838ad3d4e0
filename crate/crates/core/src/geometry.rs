//! Points in R^d and Euclidean distances.

use std::cmp::Ordering;

use crate::error::{Result, SpannerError};

/// Euclidean distance between two coordinate slices of equal length.
///
/// This is the single distance routine used by every construction, so that
/// the same pair of points always yields bit-identical lengths regardless of
/// argument order.
#[inline]
pub fn dist(p: &[f64], q: &[f64]) -> f64 {
    debug_assert_eq!(p.len(), q.len());
    let mut acc = 0.0;
    for (a, b) in p.iter().zip(q) {
        let d = a - b;
        acc += d * d;
    }
    acc.sqrt()
}

/// Checked distance between two coordinate slices.
pub fn distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(SpannerError::DimensionMismatch { expected: p.len(), found: q.len() });
    }
    Ok(dist(p, q))
}

/// A single point with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(SpannerError::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(SpannerError::NonFiniteCoordinate { index: 0 });
        }
        Ok(Point { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn distance(&self, other: &Point) -> Result<f64> {
        distance(&self.coords, &other.coords)
    }
}

impl From<[f64; 2]> for Point {
    fn from(c: [f64; 2]) -> Self {
        Point { coords: c.to_vec() }
    }
}

/// An indexed set of distinct points sharing one dimension.
///
/// Coordinates are stored flat, point-major. Negative zero is normalized to
/// positive zero so that exact equality and sorting agree.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    /// Builds a point set from flat point-major coordinates.
    pub fn from_flat(dim: usize, mut coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(SpannerError::ZeroDimension);
        }
        if coords.len() % dim != 0 {
            return Err(SpannerError::DimensionMismatch { expected: dim, found: coords.len() % dim });
        }
        if coords.is_empty() {
            return Err(SpannerError::EmptyPointSet);
        }
        for (i, c) in coords.iter_mut().enumerate() {
            if !c.is_finite() {
                return Err(SpannerError::NonFiniteCoordinate { index: i / dim });
            }
            *c += 0.0;
        }
        let ps = PointSet { dim, coords };
        if let Some((first, second)) = ps.find_duplicate() {
            return Err(SpannerError::DuplicatePoint { first, second });
        }
        Ok(ps)
    }

    pub fn from_points(points: &[Point]) -> Result<Self> {
        let dim = points.first().ok_or(SpannerError::EmptyPointSet)?.dim();
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.dim() != dim {
                return Err(SpannerError::DimensionMismatch { expected: dim, found: p.dim() });
            }
            coords.extend_from_slice(p.coords());
        }
        Self::from_flat(dim, coords)
    }

    /// Convenience constructor for planar points.
    pub fn from_xy(points: &[[f64; 2]]) -> Result<Self> {
        Self::from_flat(2, points.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn flat(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean distance between points `i` and `j`.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        dist(self.point(i), self.point(j))
    }

    fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_unstable_by(|&a, &b| lex_cmp(self.point(a), self.point(b)).then(a.cmp(&b)));
        order.windows(2).find_map(|w| (self.point(w[0]) == self.point(w[1])).then(|| (w[0].min(w[1]), w[0].max(w[1]))))
    }
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}
