mod common;

use common::{brute_isomorphic, random_edge_labeled, random_graph};
use gwl::ged::{
    apply_edit_path, edit_cost_from_assignment, exact_ged, gwlt_assignment, gwlt_distance,
    gwlt_hierarchy, gwlt_pair, tree_metric_assignment, Assignment, EditCostModel,
};
use gwl::isomorphism::{are_isomorphic, find_isomorphism};
use gwl::refinement::{refine_to_fixpoint, ClusteringParams, ColorHierarchy, UpdateSpec};
use gwl::Graph;
use num_rational::Ratio;
use pathfinding::prelude::{kuhn_munkres_min, Matrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIG: i64 = 1_000_000;

/// Minimum cost of a full assignment with one dummy per vertex: matching `u`
/// and `v` costs their tree distance, leaving a vertex unmatched costs its
/// distance to the root.
fn hungarian_tree_cost(h: &ColorHierarchy, vg: &[usize], vh: &[usize]) -> i64 {
    let (n1, n2) = (vg.len(), vh.len());
    let n = n1 + n2;
    if n == 0 {
        return 0;
    }
    let leaf = |v: usize| h.leaf_of(v);
    let m = Matrix::from_fn(n, n, |(i, j)| match (i < n1, j < n2) {
        (true, true) => h.tree_distance(leaf(vg[i]), leaf(vh[j])) as i64,
        (true, false) if j - n2 == i => h.depth(leaf(vg[i])) as i64,
        (false, true) if i - n1 == j => h.depth(leaf(vh[j])) as i64,
        (false, false) => 0,
        _ => BIG,
    });
    kuhn_munkres_min(&m).0
}

fn assert_valid(a: &Assignment, n1: usize, n2: usize) {
    let mut g: Vec<_> = a.matched.iter().map(|p| p.0).chain(a.deleted.iter().copied()).collect();
    let mut h: Vec<_> = a.matched.iter().map(|p| p.1).chain(a.inserted.iter().copied()).collect();
    g.sort_unstable();
    h.sort_unstable();
    assert_eq!(g, (0..n1).collect::<Vec<_>>());
    assert_eq!(h, (0..n2).collect::<Vec<_>>());
    assert_eq!(a.matched.len(), n1.min(n2));
}

fn graph(max_n: usize, edge_labels: bool) -> impl Strategy<Value = Graph> {
    (0usize..=max_n, 0.1f64..0.8, 1u32..3, any::<u64>()).prop_map(move |(n, p, l, s)| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        if edge_labels {
            random_edge_labeled(&mut rng, n, p, l)
        } else {
            random_graph(&mut rng, n, p, l)
        }
    })
}

fn specs() -> [UpdateSpec; 3] {
    [
        UpdateSpec::Wl,
        UpdateSpec::KMeans(ClusteringParams::new(2)),
        UpdateSpec::KMeans(ClusteringParams::new(3)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn tree_assignment_is_optimal(g1 in graph(8, false), g2 in graph(8, false), k in 2usize..4) {
        let graphs = [g1.clone(), g2.clone()];
        let (union, h) = gwlt_hierarchy(&graphs, &UpdateSpec::KMeans(ClusteringParams::new(k)), None);
        let vg: Vec<_> = union.range(0).collect();
        let vh: Vec<_> = union.range(1).collect();
        let a = tree_metric_assignment(&h, &vg, &vh).unwrap();
        prop_assert_eq!(a.tree_cost(&h) as i64, hungarian_tree_cost(&h, &vg, &vh));
        assert_valid(&gwlt_assignment(&union, &h, 0, 1).unwrap(), g1.vertex_count(), g2.vertex_count());
    }

    #[test]
    fn tree_distance_is_a_metric(g in graph(12, false), picks in prop::collection::vec(any::<prop::sample::Index>(), 3)) {
        let r = refine_to_fixpoint(&g, g.vertex_labels(), &mut UpdateSpec::Wl.build());
        let h = &r.hierarchy;
        let colors: Vec<_> = h.colors().collect();
        let [a, b, c] = [0, 1, 2].map(|i| colors[picks[i].index(colors.len())]);
        let d = |x, y| h.tree_distance(x, y);
        prop_assert_eq!(d(a, a), 0);
        prop_assert_eq!(d(a, b) == 0, a == b);
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert!(d(a, c) <= d(a, b) + d(b, c));
    }

    #[test]
    fn gwlt_bounds_exact_ged(g1 in graph(6, false), g2 in graph(6, false)) {
        let unit = EditCostModel::<u32>::default();
        let exact = exact_ged(&g1, &g2, &unit).unwrap();
        for spec in specs() {
            let (d, path) = gwlt_pair(&g1, &g2, &spec, &unit).unwrap();
            prop_assert!(d >= exact, "{spec:?}: {d} < {exact}");
            let out = apply_edit_path(&g1, &path).unwrap();
            prop_assert_eq!(out.permuted(&path.correspondence), g2.clone());
            prop_assert!(are_isomorphic(&out, &g2));
        }
    }

    #[test]
    fn gwlt_bounds_exact_ged_with_edge_labels(g1 in graph(5, true), g2 in graph(5, true)) {
        let unit = EditCostModel::<u32>::default();
        let exact = exact_ged(&g1, &g2, &unit).unwrap();
        let (d, path) = gwlt_pair(&g1, &g2, &UpdateSpec::Wl, &unit).unwrap();
        prop_assert!(d >= exact);
        let out = apply_edit_path(&g1, &path).unwrap();
        prop_assert_eq!(out.permuted(&path.correspondence), g2.clone());
    }

    #[test]
    fn rational_costs_bound_too(g1 in graph(5, false), g2 in graph(5, false)) {
        let costs = EditCostModel {
            vertex_insert: Ratio::new(3i64, 2),
            vertex_delete: Ratio::new(3, 2),
            vertex_relabel: Ratio::new(1, 1),
            edge_insert: Ratio::new(1, 3),
            edge_delete: Ratio::new(1, 3),
            edge_relabel: Ratio::new(1, 2),
        };
        let exact = exact_ged(&g1, &g2, &costs).unwrap();
        let (d, _) = gwlt_pair(&g1, &g2, &UpdateSpec::Wl, &costs).unwrap();
        prop_assert!(d >= exact);
    }

    #[test]
    fn gwlt_is_symmetric(g1 in graph(8, false), g2 in graph(8, false)) {
        let graphs = [g1, g2];
        let (union, h) = gwlt_hierarchy(&graphs, &UpdateSpec::KMeans(ClusteringParams::new(2)), None);
        let unit = EditCostModel::<u32>::default();
        prop_assert_eq!(
            gwlt_distance(&graphs, &union, &h, 0, 1, &unit).unwrap(),
            gwlt_distance(&graphs, &union, &h, 1, 0, &unit).unwrap()
        );
    }

    #[test]
    fn copies_have_distance_zero(g in graph(9, false), perm_seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let copy = g.permuted(&perm);
        let unit = EditCostModel::<u32>::default();
        // identical copies pair every vertex with its twin; a permuted copy
        // only pairs vertices inside stable color classes, which need not be
        // an isomorphism
        let (d, _) = gwlt_pair(&g, &g, &UpdateSpec::Wl, &unit).unwrap();
        prop_assert_eq!(d, 0);
        prop_assert!(are_isomorphic(&g, &copy));
        let map = find_isomorphism(&g, &copy).unwrap();
        prop_assert_eq!(g.permuted(&map), copy);
    }

    #[test]
    fn isomorphism_agrees_with_brute_force(g1 in graph(6, false), g2 in graph(6, false)) {
        prop_assert_eq!(are_isomorphic(&g1, &g2), brute_isomorphic(&g1, &g2));
    }
}

#[test]
fn identity_assignment_is_an_upper_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 5, 0.5, 2);
        let h = random_graph(&mut rng, 5, 0.5, 2);
        let a = Assignment {
            matched: (0..5).map(|v| (v, v)).collect(),
            ..Default::default()
        };
        let unit = EditCostModel::<u32>::default();
        assert!(edit_cost_from_assignment(&g, &h, &a, &unit) >= exact_ged(&g, &h, &unit).unwrap());
    }
}

#[test]
fn triangle_and_path() {
    let k3 = Graph::unlabeled(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let p3 = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
    let unit = EditCostModel::<f64>::default();
    assert_eq!(exact_ged(&p3, &k3, &unit).unwrap(), 1.0);
    let (d, _) = gwlt_pair(&p3, &k3, &UpdateSpec::Wl, &unit).unwrap();
    assert_eq!(d, 1.0);
}

#[test]
fn assignment_scales_with_vertex_count() {
    // two large sparse graphs: the assignment itself must stay cheap
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 20_000;
    let graphs: Vec<Graph> = (0..2)
        .map(|_| {
            let labels = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let mut edges: Vec<(usize, usize)> = (0..2 * n)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::new(labels, edges).unwrap()
        })
        .collect();
    let (union, h) = gwlt_hierarchy(&graphs, &UpdateSpec::KMeans(ClusteringParams::new(4)), Some(4));
    let start = std::time::Instant::now();
    let a = gwlt_assignment(&union, &h, 0, 1).unwrap();
    assert_eq!(a.matched.len(), n);
    assert!(start.elapsed().as_secs_f64() < 5.0);
}
