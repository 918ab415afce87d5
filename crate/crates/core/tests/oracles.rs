mod common;

use keypartx::community::{detect_communities, detect_communities_view, directed_modularity, modularity, DirectedView};
use keypartx::reduce::{k_core, reduce, remove_isolates, ReduceParams};

#[test]
fn modularity_matches_double_sum() {
    let mut r = common::rng(10);
    for _ in 0..100 {
        let g = common::random_graph(&mut r, 7, 4);
        let view = DirectedView::from_graph(&g);
        if view.m == 0.0 {
            continue;
        }
        for p in common::set_partitions(view.len()).iter().step_by(7) {
            for gamma in [0.5, 1.0, 2.0] {
                let fast = modularity(&view, p, gamma);
                let slow = common::modularity_double_sum(&view, p, gamma);
                assert!((fast - slow).abs() < 1e-9, "{fast} vs {slow}");
            }
        }
    }
}

#[test]
fn reported_quality_matches_recomputation() {
    let mut r = common::rng(11);
    for _ in 0..50 {
        let g = common::random_graph(&mut r, 10, 4);
        if g.edge_count() == 0 {
            continue;
        }
        let view = DirectedView::from_graph(&g);
        let p = detect_communities(&g, 1.0, 1).unwrap();
        let q = directed_modularity(&view, &p, 1.0).unwrap();
        assert!((q - p.quality).abs() < 1e-9);
        assert!((p.normalized - p.quality / view.m).abs() < 1e-12);
        assert!(p.normalized <= 1.0 + 1e-12);
    }
}

#[test]
fn same_seed_same_result() {
    let mut r = common::rng(12);
    for _ in 0..30 {
        let g = common::random_graph(&mut r, 10, 4);
        if g.edge_count() == 0 {
            continue;
        }
        let a = detect_communities(&g, 1.0, 99).unwrap();
        let b = detect_communities(&g, 1.0, 99).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn two_triangles_split_at_bridge() {
    let view = common::two_triangles_bridge();
    let p = detect_communities_view(&view, 1.0, 42).unwrap();
    assert_eq!(p.communities(), vec![vec!["v0", "v1", "v2"], vec!["v3", "v4", "v5"]]);
    let (best, _) = common::brute_force_best(&view, 1.0);
    assert!((p.quality - best).abs() < 1e-9);
}

#[test]
fn partition_count_is_bell() {
    for (n, b) in [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203), (7, 877)] {
        assert_eq!(common::bell(n), b);
        assert_eq!(common::set_partitions(n).len(), b);
    }
}

#[test]
fn k_core_matches_subset_search() {
    let mut r = common::rng(13);
    for _ in 0..40 {
        let g = common::random_graph(&mut r, 10, 3);
        for k in 0..=4 {
            let nodes: std::collections::BTreeSet<String> = k_core(&g, k).nodes().map(|(l, _)| l.to_string()).collect();
            assert_eq!(nodes, common::k_core_oracle(&g, k), "k={k}");
        }
    }
}

#[test]
fn reduction_leaves_no_isolates() {
    let mut r = common::rng(14);
    for _ in 0..40 {
        let g = common::random_graph(&mut r, 12, 4);
        let out = reduce(&g, ReduceParams { k_weight: 2, k_core: 1 });
        let degrees = out.distinct_degrees();
        assert!(out.nodes().all(|(l, _)| degrees.get(l).copied().unwrap_or(0) >= 1));
        assert_eq!(remove_isolates(&out), out);
    }
}
