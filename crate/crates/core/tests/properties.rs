use proptest::prelude::*;
use spanner_core::io::{format_edges, format_points, parse_edges, parse_points};
use spanner_core::verify::{audit_one_edge_per_pair, audit_wspd};
use spanner_core::wspd::separation_for_stretch;
use spanner_core::*;

#[test]
fn greedy_output_is_a_t_spanner() {
    for (kind, n, t, seed) in [
        (PointKind::Uniform, 600, 2.0, 1),
        (PointKind::Uniform, 400, 1.1, 2),
        (PointKind::Clustered, 600, 1.5, 3),
        (PointKind::Clustered, 300, 1.05, 4),
        (PointKind::Gamma, 500, 1.25, 5),
        (PointKind::Gamma, 200, 5.0, 6),
    ] {
        let ps = generate(&GeneratorSpec::new(kind, n, seed)).unwrap();
        let (g, _) = greedy_spanner_build(&ps, GreedyConfig::new(t)).unwrap();
        let report = max_dilation_exact(&g, &ps).unwrap();
        assert!(report.within(t, 1e-9), "{kind} n={n} t={t}: {report:?}");
    }
}

#[test]
fn wspd_audits_pass() {
    for seed in 0..6 {
        for kind in [PointKind::Uniform, PointKind::Clustered, PointKind::Gamma] {
            let ps = generate(&GeneratorSpec::new(kind, 60 + 40 * seed as usize, seed)).unwrap();
            for t in [1.1, 1.5, 2.0] {
                let audit = audit_wspd(&ps, separation_for_stretch(t)).unwrap();
                assert!(audit.passed(ps.len()), "{audit:?}");
                let (g, _) = greedy_spanner_build(&ps, GreedyConfig::new(t)).unwrap();
                let tree = build_split_tree(&ps).unwrap();
                let wspd = compute_wspd(&tree, separation_for_stretch(t)).unwrap();
                assert!(audit_one_edge_per_pair(&g.sorted_edges(), &tree, &wspd).passed());
            }
        }
    }
}

#[test]
fn build_outputs_survive_file_round_trip() {
    let ps = generate(&GeneratorSpec::new(PointKind::Gamma, 300, 8)).unwrap();
    let back = parse_points(&format_points(&ps)).unwrap();
    assert_eq!(back.flat(), ps.flat());
    let (g, _) = greedy_spanner_build(&back, GreedyConfig::new(1.5)).unwrap();
    let text = format_edges(back.len(), &g.sorted_edges());
    let (n, edges) = parse_edges(&text).unwrap();
    assert_eq!(n, 300);
    let g2 = SpannerGraph::from_edges(&back, &edges).unwrap();
    assert_eq!(g2.stats(), g.stats());
}

fn small_grid_sets() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::btree_set((0u8..9, 0u8..9), 2..40)
        .prop_map(|s| s.into_iter().map(|(x, y)| [x as f64 * 0.5, y as f64]).collect())
}

fn small_real_sets() -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 2..60)
        .prop_map(|v| v.into_iter().map(|(x, y)| [x, y]).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn fast_equals_naive_on_grids(pts in small_grid_sets(), t in prop::sample::select(vec![1.1, 1.3, 1.5, 2.0, 3.0])) {
        let ps = PointSet::from_xy(&pts).unwrap();
        let naive = greedy_naive(&ps, t).unwrap().sorted_edges();
        let (g, _) = greedy_spanner_build(&ps, GreedyConfig::new(t)).unwrap();
        prop_assert_eq!(g.sorted_edges(), naive);
    }

    #[test]
    fn fast_equals_naive_on_real_coordinates(pts in small_real_sets(), t in 1.01f64..4.0) {
        let Ok(ps) = PointSet::from_xy(&pts) else { return Ok(()); };
        let naive = greedy_naive(&ps, t).unwrap().sorted_edges();
        let (g, report) = greedy_spanner_build(&ps, GreedyConfig::new(t)).unwrap();
        prop_assert_eq!(g.sorted_edges(), naive);
        prop_assert!(report.counters.peak_queue_size <= report.pair_count as u64);
        let dil = max_dilation_exact(&g, &ps).unwrap();
        prop_assert!(dil.within(t, 1e-9));
    }
}
