//! Synthetic two-class datasets of block graphs expanded from a pair of seed
//! graphs with equal degree multisets.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::dataset::Dataset;
use crate::graph::{Graph, VertexId};
use crate::refinement::{refine_to_fixpoint, WlUpdate};

/// Attempts allowed for finding a suitable seed pair.
pub const SEED_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DatagenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no distinguishable seed pair found in {0} attempts")]
    SeedBudgetExhausted(usize),
    #[error("{requested} noise edges requested but only {available} non-edges exist")]
    TooManyNoiseEdges { requested: usize, available: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockGenParams {
    /// Vertices per seed graph.
    pub b: usize,
    /// Vertices replacing each seed vertex.
    pub r: usize,
    pub p: f64,
    /// Noise edges per graph.
    pub m: usize,
    pub graphs_per_class: usize,
    pub rng_seed: u64,
}

impl BlockGenParams {
    pub fn new(p: f64, m: usize) -> Self {
        Self {
            b: 16,
            r: 8,
            p,
            m,
            graphs_per_class: 200,
            rng_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), DatagenError> {
        let bad = |m: &str| Err(DatagenError::InvalidParams(m.to_owned()));
        if self.b < 4 {
            return bad("b must be at least 4");
        }
        if self.r < 1 {
            return bad("r must be at least 1");
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad("p must lie in (0, 1]");
        }
        if self.graphs_per_class < 1 {
            return bad("graphs_per_class must be positive");
        }
        Ok(())
    }

    /// `S_<p>_<m>`, e.g. `S_1.0_20`.
    pub fn name(&self) -> String {
        format!("S_{:?}_{}", self.p, self.m)
    }
}

/// Parameters for a named preset: `S_<p>_<m>` with the default sizes, or one
/// of the larger sets `L1` to `L4`.
pub fn preset(name: &str) -> Result<BlockGenParams, DatagenError> {
    let unknown = || DatagenError::UnknownPreset(name.to_owned());
    let large = |m, total: usize, b, r| BlockGenParams {
        b,
        r,
        p: 1.0,
        m,
        graphs_per_class: total / 2,
        rng_seed: 0,
    };
    match name {
        "L1" => return Ok(large(200, 10_000, 25, 10)),
        "L2" => return Ok(large(100, 20_000, 25, 10)),
        "L3" => return Ok(large(200, 20_000, 10, 15)),
        "L4" => return Ok(large(400, 20_000, 25, 10)),
        _ => {}
    }
    let rest = name.strip_prefix("S_").ok_or_else(unknown)?;
    let (p, m) = rest.rsplit_once('_').ok_or_else(unknown)?;
    let p: f64 = p.parse().map_err(|_| unknown())?;
    let m: usize = m.parse().map_err(|_| unknown())?;
    let params = BlockGenParams::new(p, m);
    params.validate()?;
    Ok(params)
}

/// Uniformly random labeled tree on `n` vertices from a random Prüfer
/// sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(VertexId, VertexId)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(VertexId, VertexId)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(Reverse(s));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a.min(b), a.max(b)));
    edges
}

fn tree_plus_edge<R: Rng>(b: usize, rng: &mut R) -> Graph {
    let mut edges = random_tree(b, rng);
    let present: HashSet<_> = edges.iter().copied().collect();
    let candidates: Vec<_> = (0..b)
        .flat_map(|u| (u + 1..b).map(move |v| (u, v)))
        .filter(|e| !present.contains(e))
        .collect();
    edges.push(candidates[rng.gen_range(0..candidates.len())]);
    Graph::unlabeled(b, edges).expect("valid seed graph")
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degree_sequence();
    d.sort_unstable();
    d
}

/// Whether the stable colorings of `g` and `h` have different color
/// histograms, which implies that they are not isomorphic.
pub fn wl_distinguishes(g: &Graph, h: &Graph) -> bool {
    let union = crate::dataset::disjoint_union(&[g.clone(), h.clone()]);
    let r = refine_to_fixpoint(&union.graph, union.graph.vertex_labels(), &mut WlUpdate);
    let histogram = |range: std::ops::Range<usize>| {
        let mut c: Vec<_> = range.map(|v| r.hierarchy.leaf_of(v)).collect();
        c.sort_unstable();
        c
    };
    histogram(union.range(0)) != histogram(union.range(1))
}

/// Two seed graphs on `b` vertices, each a random tree plus one edge, with
/// equal degree multisets. Pairs that color refinement cannot tell apart are
/// rejected, so the result is never isomorphic.
pub fn generate_seed_pair<R: Rng>(b: usize, rng: &mut R) -> Result<(Graph, Graph), DatagenError> {
    if b < 4 {
        return Err(DatagenError::InvalidParams("b must be at least 4".into()));
    }
    for _ in 0..SEED_ATTEMPTS {
        let g = tree_plus_edge(b, rng);
        let h = tree_plus_edge(b, rng);
        if sorted_degrees(&g) == sorted_degrees(&h) && wl_distinguishes(&g, &h) {
            return Ok((g, h));
        }
    }
    Err(DatagenError::SeedBudgetExhausted(SEED_ATTEMPTS))
}

/// Replaces each seed vertex `s` by the block `s*r .. (s+1)*r`, links pairs
/// inside a block and across blocks of adjacent seed vertices with probability
/// `p`, then adds `m` edges drawn uniformly from the remaining non-edges.
pub fn expand_block_graph<R: Rng>(
    seed: &Graph,
    r: usize,
    p: f64,
    m: usize,
    rng: &mut R,
) -> Result<Graph, DatagenError> {
    let n = seed.vertex_count() * r;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for s in 0..seed.vertex_count() {
        for i in 0..r {
            for j in i + 1..r {
                if rng.gen_bool(p) {
                    edges.push((s * r + i, s * r + j));
                }
            }
        }
    }
    for &(s, t) in seed.edges() {
        for i in 0..r {
            for j in 0..r {
                if rng.gen_bool(p) {
                    edges.push((s * r + i, t * r + j));
                }
            }
        }
    }

    let available = n * n.saturating_sub(1) / 2 - edges.len();
    if m > available {
        return Err(DatagenError::TooManyNoiseEdges {
            requested: m,
            available,
        });
    }
    let mut present: HashSet<(VertexId, VertexId)> = edges.iter().copied().collect();
    if available >= 2 * m {
        let mut added = 0;
        while added < m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && present.insert((u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v)));
                added += 1;
            }
        }
    } else {
        let non_edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|e| !present.contains(e))
            .collect();
        let mut picked = sample(rng, non_edges.len(), m).into_vec();
        picked.sort_unstable();
        edges.extend(picked.into_iter().map(|i| non_edges[i]));
    }
    Ok(Graph::unlabeled(n, edges).expect("generated edges are valid"))
}

fn graph_rng(rng_seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed.wrapping_add(index as u64));
    rng.set_stream(1);
    rng
}

/// Two classes of `graphs_per_class` expansions each, class 0 from the first
/// seed and class 1 from the second. Graph `i` uses its own random stream, so
/// the output does not depend on the number of worker threads.
pub fn generate_dataset(params: &BlockGenParams) -> Result<Dataset, DatagenError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let (s0, s1) = generate_seed_pair(params.b, &mut rng)?;
    let total = 2 * params.graphs_per_class;
    let graphs: Vec<Graph> = (0..total)
        .into_par_iter()
        .map(|i| {
            let seed = if i < params.graphs_per_class { &s0 } else { &s1 };
            expand_block_graph(seed, params.r, params.p, params.m, &mut graph_rng(params.rng_seed, i))
        })
        .collect::<Result<_, _>>()?;
    let classes = (0..total)
        .map(|i| i64::from(i >= params.graphs_per_class))
        .collect();
    Ok(Dataset::new(params.name(), graphs, classes).expect("consistent dataset"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::are_isomorphic;

    #[test]
    fn prufer_known_sequence() {
        // the sequence [3, 3, 3] encodes the star centered at 3
        let mut e = prufer_decode(5, &[3, 3, 3]);
        e.sort_unstable();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn seed_pair_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (g, h) = generate_seed_pair(16, &mut rng).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (16, 16));
        assert_eq!((h.vertex_count(), h.edge_count()), (16, 16));
        assert_eq!(sorted_degrees(&g), sorted_degrees(&h));
        assert!(!are_isomorphic(&g, &h));
    }

    #[test]
    fn identity_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (g, _) = generate_seed_pair(6, &mut rng).unwrap();
        assert_eq!(expand_block_graph(&g, 1, 1.0, 0, &mut rng).unwrap(), g);
    }

    #[test]
    fn full_expansion_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (g, _) = generate_seed_pair(16, &mut rng).unwrap();
        let x = expand_block_graph(&g, 8, 1.0, 0, &mut rng).unwrap();
        assert_eq!(x.vertex_count(), 128);
        assert_eq!(x.edge_count(), 16 * 28 + 16 * 64);
        let y = expand_block_graph(&g, 8, 1.0, 20, &mut rng).unwrap();
        assert_eq!(y.edge_count(), 16 * 28 + 16 * 64 + 20);
    }

    #[test]
    fn noise_limits() {
        let g = Graph::unlabeled(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // 6 pairs, 4 edges: two non-edges remain
        assert_eq!(expand_block_graph(&g, 1, 1.0, 2, &mut rng).unwrap().edge_count(), 6);
        assert_eq!(
            expand_block_graph(&g, 1, 1.0, 3, &mut rng),
            Err(DatagenError::TooManyNoiseEdges {
                requested: 3,
                available: 2
            })
        );
    }

    #[test]
    fn presets() {
        let s = preset("S_1.0_20").unwrap();
        assert_eq!((s.p, s.m, s.b, s.r, s.graphs_per_class), (1.0, 20, 16, 8, 200));
        assert_eq!(s.name(), "S_1.0_20");
        let l3 = preset("L3").unwrap();
        assert_eq!((l3.m, l3.b, l3.r, l3.graphs_per_class), (200, 10, 15, 10_000));
        assert!(preset("S_2.0_0").is_err());
        assert!(preset("X").is_err());
    }

    #[test]
    fn dataset_shape_and_determinism() {
        let mut params = BlockGenParams::new(1.0, 0);
        params.graphs_per_class = 3;
        params.rng_seed = 11;
        let a = generate_dataset(&params).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(a.class_labels(), &[0, 0, 0, 1, 1, 1]);
        assert!(a.graphs().iter().all(|g| g.vertex_count() == 128));
        let b = generate_dataset(&params).unwrap();
        assert_eq!(a.graphs(), b.graphs());
    }
}
