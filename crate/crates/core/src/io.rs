//! Plain-text point and edge files.
//!
//! Points: a header line `d n`, then `n` lines of `d` space-separated floats
//! printed in shortest round-trip form (`{:?}`). Edges: a header line `n m`, then `m`
//! lines `u v` with `u < v`, sorted lexicographically.

use std::fmt::Write as _;

use crate::error::{Result, SpannerError};
use crate::geometry::PointSet;

pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::with_capacity(ps.len() * 40);
    writeln!(out, "{} {}", ps.dim(), ps.len()).unwrap();
    for p in ps.iter() {
        for (k, c) in p.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{c:?}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, message: impl Into<String>) -> SpannerError {
    SpannerError::Parse { line, message: message.into() }
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>) -> Result<(usize, usize)> {
    let (no, line) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(no, "header must have exactly two integers"));
    }
    let a = fields[0].parse().map_err(|_| parse_err(no, format!("bad integer '{}'", fields[0])))?;
    let b = fields[1].parse().map_err(|_| parse_err(no, format!("bad integer '{}'", fields[1])))?;
    Ok((a, b))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (dim, n) = header(&mut lines)?;
    let mut coords = Vec::with_capacity(dim * n);
    for _ in 0..n {
        let (no, line) = lines.next().ok_or_else(|| parse_err(0, format!("expected {n} points")))?;
        let before = coords.len();
        for f in line.split_whitespace() {
            let c: f64 = f.parse().map_err(|_| parse_err(no, format!("bad number '{f}'")))?;
            coords.push(c);
        }
        if coords.len() - before != dim {
            return Err(parse_err(no, format!("expected {dim} coordinates")));
        }
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "trailing data after points"));
    }
    PointSet::from_flat(dim, coords)
}

/// Formats edges normalized to `u < v` and sorted.
pub fn format_edges(n: usize, edges: &[(usize, usize)]) -> String {
    let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    sorted.sort_unstable();
    let mut out = String::with_capacity(sorted.len() * 14 + 16);
    writeln!(out, "{} {}", n, sorted.len()).unwrap();
    for (u, v) in sorted {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Parses an edge file; returns the vertex count and the edges as written.
pub fn parse_edges(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (no, line) = lines.next().ok_or_else(|| parse_err(0, format!("expected {m} edges")))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(no, "edge line must have two indices"));
        }
        let u: usize = fields[0].parse().map_err(|_| parse_err(no, "bad vertex index"))?;
        let v: usize = fields[1].parse().map_err(|_| parse_err(no, "bad vertex index"))?;
        if u >= n || v >= n {
            return Err(parse_err(no, format!("vertex index out of range for n = {n}")));
        }
        edges.push((u, v));
    }
    if let Some((no, _)) = lines.next() {
        return Err(parse_err(no, "trailing data after edges"));
    }
    Ok((n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edges_are_normalized_and_sorted() {
        let text = format_edges(4, &[(3, 1), (0, 2), (0, 1)]);
        assert_eq!(text, "4 3\n0 1\n0 2\n1 3\n");
        assert_eq!(parse_edges(&text).unwrap(), (4, vec![(0, 1), (0, 2), (1, 3)]));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_points("").is_err());
        assert!(parse_points("2 2\n0 0\n").is_err());
        assert!(parse_points("2 1\n0 x\n").is_err());
        assert!(parse_points("2 1\n0 0 0\n").is_err());
        assert!(parse_points("2 1\n0 0\n1 1\n").is_err());
        assert!(parse_points("2 2\n0 0\n0 0\n").is_err());
        assert!(parse_edges("3 1\n0 3\n").is_err());
        assert!(parse_edges("3 2\n0 1\n").is_err());
        assert!(parse_edges("3\n").is_err());
    }

    #[test]
    fn small_points_file() {
        let ps = PointSet::from_xy(&[[0.1, 2.0], [1e-300, -3.5]]).unwrap();
        assert_eq!(format_points(&ps), "2 2\n0.1 2.0\n1e-300 -3.5\n");
    }

    proptest! {
        #[test]
        fn points_round_trip(coords in proptest::collection::vec(-1e12f64..1e12, 2..60)) {
            let even = coords.len() / 2 * 2;
            if let Ok(ps) = PointSet::from_flat(2, coords[..even].to_vec()) {
                let back = parse_points(&format_points(&ps)).unwrap();
                prop_assert_eq!(back, ps);
            }
        }
    }
}
