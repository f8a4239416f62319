//! Brute-force reference implementations. Everything here is meant to be
//! obviously correct and unapologetically slow; the pipeline is checked
//! against these on every contract it claims.

use crate::graph::{edge, Edge, Graph, WeightedTripartiteGraph};
use crate::matrix::BitMatrix;
use std::collections::BTreeMap;
use thiserror::Error;

/// Brute-force cycle enumeration is capped at this length.
pub const MAX_CYCLE_LEN: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("cycle length {0} outside supported range 3..={MAX_CYCLE_LEN}")]
    CycleLengthOutOfRange(usize),
}

/// Canonical form of a simple cycle given as a closed vertex sequence:
/// rotate so the smallest vertex comes first, then pick the direction whose
/// tuple is lexicographically smaller.
pub fn canonical_cycle(cycle: &[u32]) -> Vec<u32> {
    assert!(cycle.len() >= 3);
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let fwd: Vec<u32> = (0..k).map(|i| cycle[(start + i) % k]).collect();
    let bwd: Vec<u32> = (0..k).map(|i| cycle[(start + k - i) % k]).collect();
    if fwd <= bwd {
        fwd
    } else {
        bwd
    }
}

/// Duplicate-free list of canonical simple cycles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleList {
    cycles: Vec<Vec<u32>>,
}

impl CycleList {
    pub fn from_canonical(mut cycles: Vec<Vec<u32>>) -> CycleList {
        cycles.sort();
        cycles.dedup();
        CycleList { cycles }
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.cycles.iter().map(Vec::as_slice)
    }

    pub fn contains(&self, cycle: &[u32]) -> bool {
        let c = canonical_cycle(cycle);
        self.cycles.binary_search(&c).is_ok()
    }

    /// Edges used by any listed cycle.
    pub fn edge_set(&self) -> std::collections::BTreeSet<Edge> {
        let mut out = std::collections::BTreeSet::new();
        for c in &self.cycles {
            for i in 0..c.len() {
                out.insert(edge(c[i], c[(i + 1) % c.len()]));
            }
        }
        out
    }
}

/// All triangles, found by per-edge sorted-neighborhood intersection.
pub fn enumerate_triangles(g: &Graph) -> CycleList {
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        for w in g.common_neighbors(u, v) {
            if w > v {
                out.push(vec![u, v, w]);
            }
        }
    }
    CycleList::from_canonical(out)
}

/// For every edge of `g`, whether it lies in some triangle.
pub fn all_edge_triangle(g: &Graph) -> BTreeMap<Edge, bool> {
    g.edges()
        .map(|(u, v)| ((u, v), !g.common_neighbors(u, v).is_empty()))
        .collect()
}

/// All simple cycles of exactly `k` vertices, canonical, via DFS from each
/// minimal vertex. Supported for `3 <= k <= 8`.
pub fn enumerate_k_cycles(g: &Graph, k: usize) -> Result<CycleList, OracleError> {
    if !(3..=MAX_CYCLE_LEN).contains(&k) {
        return Err(OracleError::CycleLengthOutOfRange(k));
    }
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(k);
    let mut on_path = vec![false; g.n()];
    for s in 0..g.n() as u32 {
        path.push(s);
        on_path[s as usize] = true;
        dfs_cycles(g, s, k, &mut path, &mut on_path, &mut out);
        on_path[s as usize] = false;
        path.pop();
    }
    Ok(CycleList::from_canonical(out))
}

fn dfs_cycles(
    g: &Graph,
    s: u32,
    k: usize,
    path: &mut Vec<u32>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<Vec<u32>>,
) {
    let last = *path.last().unwrap();
    if path.len() == k {
        // close the cycle; report each once by direction: second < last
        if path[1] < path[k - 1] && g.has_edge(last, s) {
            out.push(path.clone());
        }
        return;
    }
    for &next in g.neighbors(last) {
        if next <= s || on_path[next as usize] {
            continue;
        }
        path.push(next);
        on_path[next as usize] = true;
        dfs_cycles(g, s, k, path, on_path, out);
        on_path[next as usize] = false;
        path.pop();
    }
}

pub fn count_k_cycles(g: &Graph, k: usize) -> Result<usize, OracleError> {
    Ok(enumerate_k_cycles(g, k)?.len())
}

/// Length of a shortest cycle, or `None` for forests. BFS from every vertex;
/// each non-tree edge seen closes a walk of length `d(u)+d(v)+1` which
/// contains a cycle no longer than that, and some start on a shortest cycle
/// attains it.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n as u32 {
        dist.fill(u32::MAX);
        parent.fill(u32::MAX);
        dist[s as usize] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                // walks through u can only get longer than the best cycle
                if dist[u as usize] as usize * 2 >= b {
                    continue;
                }
            }
            for &v in g.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    parent[v as usize] = u;
                    queue.push_back(v);
                } else if parent[u as usize] != v && parent[v as usize] != u {
                    let len = (dist[u as usize] + dist[v as usize] + 1) as usize;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

/// Exhaustive zero-weight triangle search over `A x B x C`.
pub fn zero_triangle_brute(wg: &WeightedTripartiteGraph) -> Option<(u32, u32, u32)> {
    use crate::graph::Part;
    let tg = wg.tripartite();
    let (aa, bb, cc) = (tg.side(Part::A), tg.side(Part::B), tg.side(Part::C));
    for &a in &aa {
        for &b in &bb {
            let Some(wab) = wg.weight(a, b) else { continue };
            for &c in &cc {
                let (Some(wbc), Some(wac)) = (wg.weight(b, c), wg.weight(a, c)) else {
                    continue;
                };
                if wab + wbc + wac == 0 {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Triangle detection by degree splitting: endpoints of degree below
/// `m^(1/3 - delta)` are scanned exhaustively, and the subgraph induced on
/// the remaining high-degree vertices goes through a boolean matrix product.
pub fn triangle_detect_degree_split(g: &Graph, delta: f64) -> bool {
    assert!((0.0..1.0 / 3.0).contains(&delta), "delta must be in [0, 1/3)");
    let m = g.m();
    if m == 0 {
        return false;
    }
    let threshold = (m as f64).powf(1.0 / 3.0 - delta);
    let low = |v: u32| (g.degree(v) as f64) < threshold;

    // triangles with a low-degree vertex
    for (u, v) in g.edges() {
        for p in [u, v] {
            if low(p) {
                let q = if p == u { v } else { u };
                for &w in g.neighbors(p) {
                    if w != q && g.has_edge(q, w) {
                        return true;
                    }
                }
                break;
            }
        }
    }

    // triangles entirely inside the high-degree induced subgraph
    let high: Vec<u32> = (0..g.n() as u32).filter(|&v| !low(v)).collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in high.iter().enumerate() {
        index[v as usize] = i;
    }
    let h = high.len();
    let mut adj = BitMatrix::new(h, h);
    for (i, &v) in high.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = index[w as usize];
            if j != usize::MAX {
                adj.set(i, j);
            }
        }
    }
    let two_paths = adj.multiply(&adj);
    for (i, &v) in high.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = index[w as usize];
            if j != usize::MAX && j > i && two_paths.get(i, j) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::graph::Graph;

    pub(crate) fn cycle_graph(n: usize) -> Graph {
        Graph::from_edges(
            n,
            (0..n as u32).map(|i| (i, (i + 1) % n as u32)),
        )
        .unwrap()
    }

    fn complete_graph(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b);
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                g.add_edge(u, a as u32 + v);
            }
        }
        g
    }

    /// Independent triangle count: trace of the cubed adjacency matrix / 6.
    fn trace_cube_triangles(g: &Graph) -> usize {
        let n = g.n();
        let mut a = vec![vec![0u32; n]; n];
        for (u, v) in g.edges() {
            a[u as usize][v as usize] = 1;
            a[v as usize][u as usize] = 1;
        }
        let mut a2 = vec![vec![0u64; n]; n];
        for i in 0..n {
            for (t, a_t) in a.iter().enumerate() {
                if a[i][t] == 1 {
                    for j in 0..n {
                        a2[i][j] += a_t[j] as u64;
                    }
                }
            }
        }
        let mut trace = 0u64;
        for i in 0..n {
            for j in 0..n {
                if a[i][j] == 1 {
                    trace += a2[i][j];
                }
            }
        }
        (trace / 6) as usize
    }

    #[test]
    fn triangle_graph_has_one_triangle() {
        let g = cycle_graph(3);
        let tri = enumerate_triangles(&g);
        assert_eq!(tri.len(), 1);
        assert!(tri.contains(&[0, 1, 2]));
        assert!(enumerate_triangles(&cycle_graph(4)).is_empty());
    }

    #[test]
    fn triangle_count_matches_trace_cube() {
        let g = gen::gen_random_bounded(50, 7, 42);
        assert_eq!(enumerate_triangles(&g).len(), trace_cube_triangles(&g));
    }

    #[test]
    fn all_edge_triangle_small_cases() {
        let tri = cycle_graph(3);
        assert!(all_edge_triangle(&tri).values().all(|&b| b));
        let star = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        assert!(all_edge_triangle(&star).values().all(|&b| !b));
    }

    #[test]
    fn all_edge_triangle_agrees_with_enumeration() {
        let g = gen::gen_random_bounded(60, 7, 5);
        let listed = enumerate_triangles(&g).edge_set();
        for ((u, v), flag) in all_edge_triangle(&g) {
            assert_eq!(flag, listed.contains(&(u, v)), "edge ({u},{v})");
        }
    }

    #[test]
    fn k_cycle_counts_small_cases() {
        assert_eq!(count_k_cycles(&cycle_graph(5), 5).unwrap(), 1);
        assert_eq!(count_k_cycles(&cycle_graph(5), 4).unwrap(), 0);
        assert_eq!(count_k_cycles(&complete_graph(4), 3).unwrap(), 4);
        assert_eq!(count_k_cycles(&complete_bipartite(3, 3), 4).unwrap(), 9);
        assert_eq!(
            enumerate_k_cycles(&cycle_graph(4), 9).unwrap_err(),
            OracleError::CycleLengthOutOfRange(9)
        );
    }

    #[test]
    fn k3_cycles_equal_triangles() {
        let g = gen::gen_random_bounded(48, 6, 77);
        assert_eq!(enumerate_k_cycles(&g, 3).unwrap(), enumerate_triangles(&g));
    }

    #[test]
    fn girth_small_cases() {
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(girth(&path), None);
        assert_eq!(girth(&cycle_graph(7)), Some(7));
        assert_eq!(girth(&complete_graph(4)), Some(3));
        assert_eq!(girth(&complete_bipartite(2, 3)), Some(4));
    }

    #[test]
    fn girth_agrees_with_cycle_counts() {
        for seed in 0..12 {
            let g = gen::gen_random_bounded(80, 4, seed);
            let by_count = (3..=MAX_CYCLE_LEN)
                .find(|&k| count_k_cycles(&g, k).unwrap() > 0);
            match (girth(&g), by_count) {
                (Some(gi), Some(k)) if gi <= MAX_CYCLE_LEN => {
                    assert_eq!(gi, k, "seed {seed}")
                }
                (Some(gi), None) => assert!(gi > MAX_CYCLE_LEN, "seed {seed}"),
                (None, found) => assert_eq!(found, None, "seed {seed}"),
                _ => {}
            }
        }
    }

    #[test]
    fn canonicalization_is_rotation_reflection_invariant() {
        let cycle = [7u32, 2, 9, 4, 11];
        let canon = canonical_cycle(&cycle);
        for rot in 0..cycle.len() {
            let mut r: Vec<u32> = (0..cycle.len())
                .map(|i| cycle[(rot + i) % cycle.len()])
                .collect();
            assert_eq!(canonical_cycle(&r), canon);
            r.reverse();
            assert_eq!(canonical_cycle(&r), canon);
        }
    }

    #[test]
    fn zero_triangle_small_cases() {
        let all_zero = gen::complete_weighted_tripartite([2, 2, 2], |_, _| 0);
        assert!(zero_triangle_brute(&all_zero).is_some());
        let all_one = gen::complete_weighted_tripartite([2, 2, 2], |_, _| 1);
        assert!(zero_triangle_brute(&all_one).is_none());
    }

    /// Second, independent brute force: hash-join on w(a,b) + w(a,c).
    fn zero_triangle_hash_join(wg: &WeightedTripartiteGraph) -> bool {
        use crate::graph::Part;
        use std::collections::HashMap;
        let tg = wg.tripartite();
        let mut by_weight: HashMap<i64, Vec<(u32, u32)>> = HashMap::new();
        for &b in &tg.side(Part::B) {
            for &c in &tg.side(Part::C) {
                if let Some(w) = wg.weight(b, c) {
                    by_weight.entry(w).or_default().push((b, c));
                }
            }
        }
        for &a in &tg.side(Part::A) {
            for &b in &tg.side(Part::B) {
                let Some(x) = wg.weight(a, b) else { continue };
                for &c in &tg.side(Part::C) {
                    let Some(y) = wg.weight(a, c) else { continue };
                    if let Some(pairs) = by_weight.get(&(-(x + y))) {
                        if pairs.contains(&(b, c)) {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn zero_triangle_agrees_with_hash_join() {
        for seed in 0..40 {
            let wg = gen::gen_weighted_tripartite(20, 6, 4, seed);
            assert_eq!(
                zero_triangle_brute(&wg).is_some(),
                zero_triangle_hash_join(&wg),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn degree_split_small_cases() {
        assert!(triangle_detect_degree_split(&cycle_graph(3), 0.0));
        assert!(!triangle_detect_degree_split(&cycle_graph(4), 0.0));
    }

    #[test]
    fn degree_split_agrees_with_enumeration() {
        for seed in 0..100 {
            let n = 40 + (seed as usize * 13) % 160;
            let d = 3 + (seed as usize) % 10;
            let g = gen::gen_random_bounded(n, d, seed);
            let expect = !enumerate_triangles(&g).is_empty();
            for delta in [0.0, 0.15, 0.3] {
                assert_eq!(
                    triangle_detect_degree_split(&g, delta),
                    expect,
                    "seed {seed} delta {delta}"
                );
            }
        }
    }
}
