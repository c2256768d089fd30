mod common;

use common::{naive_wl, random_edge_labeled, random_graph};
use gwl::kernels::{
    dataset_features, gram, gram_from_features, oa_kernel, subtree_kernel, GramMatrix, KernelKind,
};
use gwl::refinement::{refine_to_depth, ClusteringParams, UpdateSpec};
use gwl::{disjoint_union, Dataset, Graph};
use nalgebra::DMatrix;
use pathfinding::prelude::{kuhn_munkres, Matrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Direct double sum over vertex pairs and iterations.
fn naive_subtree(c1: &[Vec<usize>], c2: &[Vec<usize>]) -> u64 {
    c1.iter()
        .zip(c2)
        .map(|(a, b)| {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| u64::from(x == y)))
                .sum::<u64>()
        })
        .sum()
}

/// Maximum weight vertex assignment, weight = number of iterations in which
/// the two vertices share a color.
fn hungarian_oa(c1: &[Vec<usize>], c2: &[Vec<usize>]) -> u64 {
    let (n1, n2) = (c1[0].len(), c2[0].len());
    let (rows, cols, swap) = if n1 <= n2 { (n1, n2, false) } else { (n2, n1, true) };
    if rows == 0 {
        return 0;
    }
    let weight = |u: usize, v: usize| -> i64 {
        let (u, v) = if swap { (v, u) } else { (u, v) };
        c1.iter().zip(c2).filter(|(a, b)| a[u] == b[v]).count() as i64
    };
    let m = Matrix::from_fn(rows, cols, |(i, j)| weight(i, j));
    kuhn_munkres(&m).0 as u64
}

fn pair_colorings(g1: &Graph, g2: &Graph, h: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut c = naive_wl(&[g1.clone(), g2.clone()], h);
    let c2 = c.pop().unwrap();
    (c.pop().unwrap(), c2)
}

fn pair_dataset(g1: &Graph, g2: &Graph) -> Dataset {
    Dataset::new("pair", vec![g1.clone(), g2.clone()], vec![0, 1]).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0usize..=max_n, 0.1f64..0.8, 1u32..4, any::<u64>(), any::<bool>()).prop_map(
        |(n, p, l, s, labeled_edges)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            if labeled_edges {
                random_edge_labeled(&mut rng, n, p, l)
            } else {
                random_graph(&mut rng, n, p, l)
            }
        },
    )
}

fn same_edge_kind(g1: &Graph, g2: &Graph) -> bool {
    g1.has_edge_labels() == g2.has_edge_labels()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn wl_subtree_kernel_matches_double_sum(g1 in small_graph(10), g2 in small_graph(10), h in 0usize..5) {
        prop_assume!(same_edge_kind(&g1, &g2));
        let ds = pair_dataset(&g1, &g2);
        let (_, _, f) = dataset_features(&ds, &UpdateSpec::Wl, h).unwrap();
        let (c1, c2) = pair_colorings(&g1, &g2, h);
        prop_assert_eq!(subtree_kernel(&f[0], &f[1]), naive_subtree(&c1, &c2));
        prop_assert_eq!(subtree_kernel(&f[0], &f[0]), naive_subtree(&c1, &c1));
    }

    #[test]
    fn kmeans_subtree_kernel_matches_double_sum(g1 in small_graph(10), g2 in small_graph(10), h in 0usize..5, k in 2usize..4) {
        prop_assume!(same_edge_kind(&g1, &g2));
        let ds = pair_dataset(&g1, &g2);
        let spec = UpdateSpec::KMeans(ClusteringParams::new(k));
        let (r, union, f) = dataset_features(&ds, &spec, h).unwrap();
        // double sum over the refinement's own colorings
        let split = |m: usize| -> Vec<Vec<usize>> {
            r.colorings.iter().map(|c| c.colors[union.range(m)].to_vec()).collect()
        };
        prop_assert_eq!(subtree_kernel(&f[0], &f[1]), naive_subtree(&split(0), &split(1)));
    }

    #[test]
    fn oa_kernel_matches_hungarian(g1 in small_graph(10), g2 in small_graph(10), h in 0usize..5) {
        prop_assume!(same_edge_kind(&g1, &g2));
        let union = disjoint_union(&[g1.clone(), g2.clone()]);
        let r = refine_to_depth(&union.graph, union.graph.vertex_labels(), &mut UpdateSpec::Wl.build(), h);
        let (c1, c2) = pair_colorings(&g1, &g2, h);
        prop_assert_eq!(oa_kernel(&r.hierarchy, &r.colorings, &union, 0, 1), hungarian_oa(&c1, &c2));
    }

    #[test]
    fn kmeans_oa_kernel_matches_hungarian(g1 in small_graph(9), g2 in small_graph(9), h in 0usize..5) {
        prop_assume!(same_edge_kind(&g1, &g2));
        let union = disjoint_union(&[g1.clone(), g2.clone()]);
        let spec = UpdateSpec::KMeans(ClusteringParams::new(2));
        let r = refine_to_depth(&union.graph, union.graph.vertex_labels(), &mut spec.build(), h);
        let split = |m: usize| -> Vec<Vec<usize>> {
            r.colorings.iter().map(|c| c.colors[union.range(m)].to_vec()).collect()
        };
        prop_assert_eq!(oa_kernel(&r.hierarchy, &r.colorings, &union, 0, 1), hungarian_oa(&split(0), &split(1)));
    }

    #[test]
    fn oa_self_similarity(g in small_graph(12), h in 0usize..6, k in 2usize..4) {
        let union = disjoint_union(std::slice::from_ref(&g));
        let spec = UpdateSpec::KMeans(ClusteringParams::new(k));
        let r = refine_to_depth(&union.graph, union.graph.vertex_labels(), &mut spec.build(), h);
        prop_assert_eq!(oa_kernel(&r.hierarchy, &r.colorings, &union, 0, 0), ((h + 1) * g.vertex_count()) as u64);
    }

    #[test]
    fn features_sum_to_vertex_count_per_iteration(g in small_graph(12), h in 0usize..5) {
        let ds = Dataset::new("one", vec![g.clone()], vec![0]).unwrap();
        let (r, _, f) = dataset_features(&ds, &UpdateSpec::Wl, h).unwrap();
        let colors = r.hierarchy.color_count() as u64;
        for i in 0..=h as u64 {
            let total: u64 = f[0].entries().iter().filter(|(key, _)| key / colors == i).map(|e| e.1).sum();
            prop_assert_eq!(total, g.vertex_count() as u64);
        }
        prop_assert!(f[0].entries().iter().all(|&(key, n)| key >= 1 && n > 0));
    }
}

#[test]
fn self_kernel_grows_until_stable() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let g = random_graph(&mut rng, 10, 0.3, 2);
        let ds = Dataset::new("one", vec![g.clone()], vec![0]).unwrap();
        let full = gwl::refinement::refine_to_fixpoint(&g, g.vertex_labels(), &mut UpdateSpec::Wl.build());
        let stable = full.stable_at.unwrap();
        let values: Vec<u64> = (0..=stable + 2)
            .map(|h| {
                let (_, _, f) = dataset_features(&ds, &UpdateSpec::Wl, h).unwrap();
                subtree_kernel(&f[0], &f[0])
            })
            .collect();
        for h in 1..values.len() {
            assert!(values[h] > values[h - 1]);
        }
        // past the fixpoint each extra iteration adds the stable self-similarity
        let step = values[stable + 1] - values[stable];
        assert_eq!(values[stable + 2] - values[stable + 1], step);
    }
}

fn min_eigenvalue(k: &GramMatrix<f64>) -> f64 {
    let n = k.size();
    let m = DMatrix::from_fn(n, n, |i, j| k.get(i, j));
    m.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
}

#[test]
fn gram_matrices_are_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let graphs: Vec<Graph> = (0..50)
        .map(|i| random_graph(&mut rng, 4 + i % 12, 0.3, 3))
        .collect();
    let ds = Dataset::new("random", graphs, vec![0; 50]).unwrap();
    for spec in [UpdateSpec::Wl, UpdateSpec::KMeans(ClusteringParams::new(2))] {
        for kind in [KernelKind::Subtree, KernelKind::OptimalAssignment] {
            for normalize in [false, true] {
                let k: GramMatrix<f64> = gram(&ds, kind, &spec, 4, normalize).unwrap();
                for i in 0..k.size() {
                    assert!(k.get(i, i) >= 0.0);
                    for j in 0..k.size() {
                        assert_eq!(k.get(i, j), k.get(j, i));
                    }
                }
                let tol = 1e-8 * k.trace();
                let min = min_eigenvalue(&k);
                assert!(min >= -tol, "{kind:?} {spec:?} normalize={normalize}: {min}");
            }
        }
    }
}

#[test]
fn gram_is_independent_of_thread_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let graphs: Vec<Graph> = (0..20).map(|_| random_graph(&mut rng, 9, 0.3, 2)).collect();
    let ds = Dataset::new("random", graphs, vec![0; 20]).unwrap();
    let spec = UpdateSpec::KMeans(ClusteringParams::new(3).with_seed(4));
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| gram::<f64>(&ds, KernelKind::Subtree, &spec, 3, true).unwrap())
    };
    assert_eq!(run(1), run(8));
}

#[test]
fn f32_and_f64_agree_on_integer_kernels() {
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let graphs: Vec<Graph> = (0..6).map(|_| random_graph(&mut rng, 7, 0.4, 2)).collect();
    let ds = Dataset::new("random", graphs, vec![0; 6]).unwrap();
    let (_, _, f) = dataset_features(&ds, &UpdateSpec::Wl, 3).unwrap();
    let a: GramMatrix<f32> = gram_from_features(&f, KernelKind::Subtree);
    let b: GramMatrix<f64> = gram_from_features(&f, KernelKind::Subtree);
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(f64::from(a.get(i, j)), b.get(i, j));
        }
    }
}
