//! Seeded random instance generators. Every generator is a pure function of
//! its parameters and a single 64-bit seed.

use crate::graph::{edge, Edge, Graph, Part, TripartiteGraph, WeightedTripartiteGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph with maximum degree at most `d`, built by rejection
/// sampling of candidate edges up to a budget of `n*d/4` edges (or a cap of
/// `20 * budget` attempts, whichever comes first). Partial results are
/// accepted; the degree bound always holds.
pub fn gen_random_bounded(n: usize, d: usize, seed: u64) -> Graph {
    assert!(d < n.max(1), "degree bound d must be at most n-1");
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::empty(n);
    if n < 2 || d == 0 {
        return g;
    }
    let budget = n * d / 4;
    let cap = 20 * budget;
    let mut attempts = 0;
    while g.m() < budget && attempts < cap {
        attempts += 1;
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v || g.has_edge(u, v) {
            continue;
        }
        if g.degree(u) >= d || g.degree(v) >= d {
            continue;
        }
        g.add_edge(u, v);
    }
    g
}

/// Split `0..n` into three contiguous blocks and label them A, B, C.
pub fn contiguous_parts(n: usize) -> Vec<Part> {
    let a = n.div_ceil(3);
    let b = (n - a).div_ceil(2);
    (0..n)
        .map(|v| {
            if v < a {
                Part::A
            } else if v < a + b {
                Part::B
            } else {
                Part::C
            }
        })
        .collect()
}

/// Random tripartite graph with maximum degree at most `d` on contiguous
/// A/B/C blocks; only cross-part candidate edges are sampled.
pub fn gen_random_tripartite(n: usize, d: usize, seed: u64) -> TripartiteGraph {
    assert!(d < n.max(1), "degree bound d must be at most n-1");
    let parts = contiguous_parts(n);
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::empty(n);
    if n >= 2 && d > 0 {
        let budget = n * d / 4;
        let cap = 20 * budget;
        let mut attempts = 0;
        while g.m() < budget && attempts < cap {
            attempts += 1;
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            if u == v || parts[u as usize] == parts[v as usize] || g.has_edge(u, v) {
                continue;
            }
            if g.degree(u) >= d || g.degree(v) >= d {
                continue;
            }
            g.add_edge(u, v);
        }
    }
    TripartiteGraph::new(g, parts).expect("cross-part sampling keeps the graph tripartite")
}

/// Random bounded-degree tripartite graph guaranteed to contain a triangle:
/// one triangle with a vertex per part is planted before the random fill.
/// Returns the graph and one edge of the planted triangle.
pub fn gen_planted_triangle(n: usize, d: usize, seed: u64) -> (TripartiteGraph, Edge) {
    assert!(n >= 3, "need at least one vertex per part");
    assert!(d >= 2, "planting a triangle needs degree 2");
    let parts = contiguous_parts(n);
    let mut rng = rng_from_seed(seed);
    let mut side = |p: Part| {
        let s: Vec<u32> = (0..n as u32).filter(|&v| parts[v as usize] == p).collect();
        s[rng.gen_range(0..s.len())]
    };
    let (a, b, c) = (side(Part::A), side(Part::B), side(Part::C));
    let mut g = Graph::empty(n);
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(a, c);
    let budget = (n * d / 4).max(g.m());
    let cap = 20 * budget;
    let mut attempts = 0;
    while g.m() < budget && attempts < cap {
        attempts += 1;
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v || parts[u as usize] == parts[v as usize] || g.has_edge(u, v) {
            continue;
        }
        if g.degree(u) >= d || g.degree(v) >= d {
            continue;
        }
        g.add_edge(u, v);
    }
    let tg = TripartiteGraph::new(g, parts).expect("planted graph is tripartite");
    (tg, edge(b, c))
}

/// Random weighted tripartite graph with integer weights drawn uniformly
/// from `[-w_bound, w_bound]`.
pub fn gen_weighted_tripartite(
    n: usize,
    d: usize,
    w_bound: i64,
    seed: u64,
) -> WeightedTripartiteGraph {
    assert!(w_bound >= 0);
    let tg = gen_random_tripartite(n, d, seed);
    let mut rng = rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
    let weights: BTreeMap<Edge, i64> = tg
        .graph()
        .edges()
        .map(|e| (e, rng.gen_range(-w_bound..=w_bound)))
        .collect();
    WeightedTripartiteGraph::new(tg, weights).expect("every edge weighted")
}

/// Complete tripartite graph over given side sizes, weights supplied by a
/// callback on `(u, v)`; handy for building exhaustive test instances.
pub fn complete_weighted_tripartite(
    sizes: [usize; 3],
    mut weight: impl FnMut(u32, u32) -> i64,
) -> WeightedTripartiteGraph {
    let n = sizes.iter().sum();
    let mut parts = Vec::with_capacity(n);
    for (i, p) in Part::ALL.into_iter().enumerate() {
        parts.extend(std::iter::repeat_n(p, sizes[i]));
    }
    let mut g = Graph::empty(n);
    let mut weights = BTreeMap::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if parts[u as usize] != parts[v as usize] {
                g.add_edge(u, v);
                weights.insert((u, v), weight(u, v));
            }
        }
    }
    let tg = TripartiteGraph::new(g, parts).expect("complete tripartite");
    WeightedTripartiteGraph::new(tg, weights).expect("every edge weighted")
}
