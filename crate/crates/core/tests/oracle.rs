//! The WSPD greedy build against the quadratic algorithm and against a
//! direct transcription of the queue-based algorithm.

use spanner_core::wspd::separation_for_stretch;
use spanner_core::*;

type Key = (f64, usize, usize);

fn key_lt(a: &Key, b: &Key) -> bool {
    a.0 < b.0 || (a.0 == b.0 && (a.1, a.2) < (b.1, b.2))
}

/// Closest point pair of a WSPD pair without t-path, by one fresh bounded
/// Dijkstra per point pair.
fn brute_closest(ps: &PointSet, tree: &SplitTree, wspd: &Wspd, g: &SpannerGraph, t: f64, j: usize) -> Option<Key> {
    let p = wspd.pair(j);
    let mut best: Option<Key> = None;
    for &a in tree.points(p.node_a as usize) {
        for &b in tree.points(p.node_b as usize) {
            let (a, b) = (a as usize, b as usize);
            let len = ps.dist(a, b);
            let reached = bounded_sssp(g, a, t * len).unwrap();
            if reached.get(&b).is_none_or(|&d| d > t * len) {
                let key = (len, a.min(b), a.max(b));
                if best.is_none_or(|bk| key_lt(&key, &bk)) {
                    best = Some(key);
                }
            }
        }
    }
    best
}

struct Reference {
    edges: Vec<(u32, u32, f64)>,
    fills: Vec<Vec<u32>>,
}

fn reference_build(ps: &PointSet, t: f64) -> Reference {
    let tree = build_split_tree(ps).unwrap();
    let wspd = compute_wspd(&tree, separation_for_stretch(t)).unwrap();
    let order = wspd.pairs_sorted_by_min();
    let mut g = SpannerGraph::new(ps.len());
    let mut queue: Vec<(Key, usize)> = Vec::new();
    let mut next = 0;
    let mut out = Reference { edges: Vec::new(), fills: Vec::new() };

    let queue_min = |q: &[(Key, usize)]| -> Option<usize> {
        (0..q.len()).min_by(|&x, &y| {
            let (a, b) = (&q[x], &q[y]);
            a.0 .0.total_cmp(&b.0 .0).then((a.0 .1, a.0 .2, a.1).cmp(&(b.0 .1, b.0 .2, b.1)))
        })
    };
    let fill = |g: &SpannerGraph, queue: &mut Vec<(Key, usize)>, next: &mut usize, fills: &mut Vec<Vec<u32>>| {
        let mut treated = Vec::new();
        while *next < order.len() {
            let i = order[*next];
            if let Some(k) = queue_min(queue) {
                if wspd.pair(i).min_dist > queue[k].0 .0 {
                    break;
                }
            }
            if let Some(key) = brute_closest(ps, &tree, &wspd, g, t, i) {
                queue.push((key, i));
            }
            treated.push(i as u32);
            *next += 1;
        }
        fills.push(treated);
    };

    fill(&g, &mut queue, &mut next, &mut out.fills);
    while let Some(k) = queue_min(&queue) {
        let ((len, u, v), _) = queue.swap_remove(k);
        g.add_edge(u, v, len).unwrap();
        out.edges.push((u as u32, v as u32, len));
        let reach = t * len;
        let mut kept = Vec::new();
        for (key, j) in queue.drain(..) {
            let p = wspd.pair(j);
            let near = [p.node_a as usize, p.node_b as usize].iter().any(|&x| {
                tree.point_to_circle(ps.point(u), x) <= reach || tree.point_to_circle(ps.point(v), x) <= reach
            });
            if !near {
                kept.push((key, j));
            } else if let Some(nk) = brute_closest(ps, &tree, &wspd, &g, t, j) {
                kept.push((nk, j));
            }
        }
        queue = kept;
        fill(&g, &mut queue, &mut next, &mut out.fills);
    }
    out
}

#[test]
fn matches_transcribed_algorithm() {
    for (kind, n, t, seed) in [
        (PointKind::Uniform, 60, 2.0, 1),
        (PointKind::Uniform, 90, 1.2, 2),
        (PointKind::Clustered, 100, 1.5, 3),
        (PointKind::Clustered, 70, 1.1, 4),
        (PointKind::Gamma, 80, 3.0, 5),
    ] {
        let ps = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
        let reference = reference_build(&ps, t);
        for base in [GreedyConfig::new(t), GreedyConfig::plain(t)] {
            let cfg = GreedyConfig { record_trace: true, ..base };
            let (_, report) = greedy_spanner_build(&ps, cfg).unwrap();
            assert_eq!(report.edges_in_order, reference.edges, "{kind} n={n} t={t}");
            assert_eq!(report.fill_rounds, reference.fills, "{kind} n={n} t={t}");
        }
    }
}

#[test]
fn matches_naive_on_random_sets() {
    for seed in 0..4u64 {
        for kind in [PointKind::Uniform, PointKind::Clustered, PointKind::Gamma] {
            for (n, t) in [(25, 1.05), (120, 1.1), (200, 1.5), (300, 2.0), (150, 4.0)] {
                let ps = generate(&GeneratorSpec::new(kind, n, seed * 100 + n as u64)).unwrap();
                let naive = greedy_naive(&ps, t).unwrap().sorted_edges();
                let (g, _) = greedy_spanner_build(&ps, GreedyConfig::new(t)).unwrap();
                assert_eq!(g.sorted_edges(), naive, "{kind} n={n} t={t} seed={seed}");
            }
        }
    }
}

#[test]
fn matches_naive_with_many_equal_distances() {
    let mut lattice = Vec::new();
    for x in 0..14 {
        for y in 0..14 {
            lattice.push([x as f64, y as f64]);
        }
    }
    let line: Vec<[f64; 2]> = (0..60).map(|i| [i as f64 * 0.5, 0.0]).collect();
    let mut circle = Vec::new();
    for i in 0..48 {
        let a = i as f64 * std::f64::consts::TAU / 48.0;
        circle.push([a.cos() * 10.0, a.sin() * 10.0]);
    }
    circle.push([0.0, 0.0]);
    for pts in [lattice, line, circle] {
        let ps = PointSet::from_xy(&pts).unwrap();
        for t in [1.1, 1.5, 2.0, 2.5] {
            let naive = greedy_naive(&ps, t).unwrap().sorted_edges();
            for cfg in [GreedyConfig::new(t), GreedyConfig::plain(t)] {
                let (g, _) = greedy_spanner_build(&ps, cfg).unwrap();
                assert_eq!(g.sorted_edges(), naive, "t={t}");
            }
        }
    }
}

#[test]
fn prune_rules_agree() {
    for seed in 0..20 {
        let kind = [PointKind::Uniform, PointKind::Clustered][seed as usize % 2];
        let n = 50 + (seed as usize * 37) % 150;
        let t = [1.1, 1.5, 2.0][seed as usize % 3];
        let ps = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
        let basic = GreedyConfig { prune_rule: PruneRule::Basic, ..GreedyConfig::new(t) };
        let sharp = GreedyConfig { prune_rule: PruneRule::Sharpened, ..GreedyConfig::new(t) };
        let a = greedy_spanner_build(&ps, basic).unwrap().0.sorted_edges();
        let b = greedy_spanner_build(&ps, sharp).unwrap().0.sorted_edges();
        assert_eq!(a, b, "seed {seed}");
    }
}

#[test]
fn three_dimensional_points() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    let flat: Vec<f64> = (0..3 * 150).map(|_| rng.random_range(0.0..6.0)).collect();
    let ps = PointSet::from_flat(3, flat).unwrap();
    for t in [1.2, 2.0] {
        let naive = greedy_naive(&ps, t).unwrap().sorted_edges();
        let (g, _) = greedy_spanner_build(&ps, GreedyConfig::new(t)).unwrap();
        assert_eq!(g.sorted_edges(), naive);
    }
}
