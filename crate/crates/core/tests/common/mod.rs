#![allow(dead_code)]

use std::collections::BTreeMap;

use gwl::Graph;
use rand::Rng;

/// Erdős–Rényi graph with labels drawn from `0..labels`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, labels: u32) -> Graph {
    let vertex_labels = (0..n).map(|_| rng.gen_range(0..labels.max(1))).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(vertex_labels, edges).unwrap()
}

pub fn random_edge_labeled<R: Rng>(rng: &mut R, n: usize, p: f64, labels: u32) -> Graph {
    let g = random_graph(rng, n, p, labels);
    let edge_labels = g.edges().iter().map(|_| rng.gen_range(0..2)).collect();
    Graph::with_edge_labels(g.vertex_labels().to_vec(), g.edges().to_vec(), edge_labels).unwrap()
}

/// Old color plus sorted (edge label, neighbor color) pairs.
type Signature = (usize, Vec<(Option<u32>, usize)>);

/// Classical color refinement written from scratch: every iteration a vertex
/// gets the dictionary index of (old color, sorted neighbor colors), with the
/// dictionary shared by all graphs. Returns `colors[graph][iteration][vertex]`.
pub fn naive_wl(graphs: &[Graph], h: usize) -> Vec<Vec<Vec<usize>>> {
    let mut dict: BTreeMap<Signature, usize> = BTreeMap::new();
    let mut out: Vec<Vec<Vec<usize>>> = graphs
        .iter()
        .map(|g| {
            vec![g
                .vertex_labels()
                .iter()
                .map(|&l| {
                    let n = dict.len();
                    *dict.entry((l as usize, Vec::new())).or_insert(n)
                })
                .collect()]
        })
        .collect();
    for _ in 0..h {
        // color names are only compared within one iteration
        dict.clear();
        let next: Vec<Vec<usize>> = graphs
            .iter()
            .zip(&out)
            .map(|(g, cs)| {
                let c = cs.last().unwrap();
                (0..g.vertex_count())
                    .map(|v| {
                        let mut sig: Vec<(Option<u32>, usize)> = g
                            .incident(v)
                            .iter()
                            .map(|&(u, e)| (g.edge_label(e), c[u]))
                            .collect();
                        sig.sort_unstable();
                        (c[v], sig)
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .map(|sigs| {
                sigs.into_iter()
                    .map(|s| {
                        let n = dict.len();
                        *dict.entry(s).or_insert(n)
                    })
                    .collect()
            })
            .collect();
        for (cs, c) in out.iter_mut().zip(next) {
            cs.push(c);
        }
    }
    out
}

/// Partition of `0..n` as sorted blocks, independent of color names.
pub fn blocks(colors: &[usize]) -> Vec<Vec<usize>> {
    let mut by: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        by.entry(c).or_default().push(v);
    }
    let mut b: Vec<_> = by.into_values().collect();
    b.sort();
    b
}

/// Stable partition of the classical refinement on a single graph.
pub fn naive_stable_blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let c = naive_wl(std::slice::from_ref(g), n.max(1));
    blocks(c[0].last().unwrap())
}

/// Exhaustive isomorphism test over all vertex permutations.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if g.permuted(&perm) == *h {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
