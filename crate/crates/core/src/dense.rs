//! Dense-piece detection and removal.
//!
//! A graph with many short cycles must contain pairs of vertices whose
//! neighborhoods span many edges. This module samples short walks to find
//! such pairs, estimates the density between the two neighborhoods, reports
//! every edge lying in a triangle that uses one of the crossing edges (via a
//! degree split plus boolean matrix products), and removes the crossing
//! edges, iterating until no dense piece remains.

use crate::graph::{edge, Edge, Graph};
use crate::matrix::BitMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

/// Default matrix-multiplication exponent used in threshold formulas only;
/// the actual products are cubic and bit-packed.
pub const DEFAULT_OMEGA: f64 = 2.3728;
/// Default slack in the density exponent `gamma = (omega-1)/4 + epsilon`.
pub const DEFAULT_EPSILON: f64 = 0.05;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DenseError {
    #[error("max degree {max_degree} exceeds the bound for {n} vertices (needs max degree <= 2*sqrt(n))")]
    DegreeBound { max_degree: usize, n: usize },
}

/// Parameters of the dense-piece machinery. The sample counts and thresholds
/// are functions of the vertex count and must be re-derived when it changes.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePieceParams {
    /// Cycle length driving the walk length (`k - 2` vertices per walk).
    pub k: usize,
    /// Density exponent; dense means `~n^(1/2+gamma)` crossing edges.
    pub gamma: f64,
    /// Exponent used only in derived formulas.
    pub omega: f64,
    /// Slack in `gamma`.
    pub epsilon: f64,
    /// Degree-split exponent `(3 - omega)/4`.
    pub beta: f64,
    /// Walks sampled per search.
    pub path_samples: usize,
    /// Pairs sampled per density estimate.
    pub pair_samples: usize,
    /// Sampled hits required to accept a piece.
    pub hit_threshold: usize,
    /// Absolute minimum crossing-edge count for a piece (exact mode).
    pub density_floor: usize,
    /// Switch to exact counting when the sample budget reaches the
    /// population size.
    pub exact_fallback: bool,
    /// Removal-loop iteration cap; exceeding it is a warning, not an error.
    pub iteration_cap: usize,
}

impl DensePieceParams {
    /// Derive every count from `(n, k, omega, epsilon)`. Logarithms are
    /// base 2 and counts round up; every count is clamped to at least 1.
    pub fn derive(n: usize, k: usize, omega: f64, epsilon: f64) -> DensePieceParams {
        assert!(k >= 4, "dense-piece walks need cycle length k >= 4");
        assert!(
            epsilon > 0.0 && epsilon < (3.0 - omega) / 4.0,
            "epsilon must lie in (0, (3-omega)/4)"
        );
        let gamma = (omega - 1.0) / 4.0 + epsilon;
        debug_assert!(gamma < 0.5);
        let nf = (n.max(2)) as f64;
        let log_n = nf.log2();
        let samples_base = nf.powf(0.5 - gamma) * log_n;
        DensePieceParams {
            k,
            gamma,
            omega,
            epsilon,
            beta: (3.0 - omega) / 4.0,
            path_samples: ((100.0 * samples_base).ceil() as usize).max(1),
            pair_samples: ((200.0 * samples_base).ceil() as usize).max(1),
            hit_threshold: ((50.0 * log_n).ceil() as usize).max(1),
            density_floor: ((nf.powf(0.5 + gamma) / 200.0).ceil() as usize).max(1),
            exact_fallback: true,
            iteration_cap: ((200.0 * nf.powf(1.0 - gamma)).ceil() as usize).max(1),
        }
    }

    pub fn for_graph(n: usize, k: usize) -> DensePieceParams {
        DensePieceParams::derive(n, k, DEFAULT_OMEGA, DEFAULT_EPSILON)
    }
}

/// A vertex pair whose neighborhoods span many edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePiece {
    pub u: u32,
    pub w: u32,
    /// `N(u) ∪ N(w)`, sorted.
    pub piece: Vec<u32>,
    /// Edges of the graph between `N(u)` and `N(w)`, as unordered pairs of
    /// distinct vertices.
    pub crossing: BTreeSet<Edge>,
}

fn degree_check(g: &Graph) -> Result<(), DenseError> {
    // slack factor 2: the tripartite embedding doubles degrees while only
    // tripling the vertex count
    let d = g.max_degree();
    if d * d > 4 * g.n() {
        return Err(DenseError::DegreeBound {
            max_degree: d,
            n: g.n(),
        });
    }
    Ok(())
}

/// Edges between `xs` and `ys` present in `g`, as unordered pairs of
/// distinct vertices.
pub fn crossing_edges(g: &Graph, xs: &[u32], ys: &[u32]) -> BTreeSet<Edge> {
    let mut in_y = vec![false; g.n()];
    for &y in ys {
        in_y[y as usize] = true;
    }
    let mut out = BTreeSet::new();
    for &x in xs {
        for &nb in g.neighbors(x) {
            if in_y[nb as usize] {
                out.insert(edge(x, nb));
            }
        }
    }
    out
}

/// Decide whether `xs x ys` is dense: sample `pair_samples` uniform
/// independent pairs and accept on `hit_threshold` edge hits. When the
/// sample budget reaches the population size (and the fallback is enabled),
/// count exactly and compare against `density_floor`.
pub fn estimate_density(
    g: &Graph,
    xs: &[u32],
    ys: &[u32],
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
) -> bool {
    assert!(!xs.is_empty() && !ys.is_empty(), "X and Y must be nonempty");
    let population = xs.len().saturating_mul(ys.len());
    if params.exact_fallback && params.pair_samples >= population {
        return crossing_edges(g, xs, ys).len() >= params.density_floor;
    }
    let mut hits = 0;
    for _ in 0..params.pair_samples {
        let x = xs[rng.gen_range(0..xs.len())];
        let y = ys[rng.gen_range(0..ys.len())];
        if g.has_edge(x, y) {
            hits += 1;
            if hits >= params.hit_threshold {
                return true;
            }
        }
    }
    false
}

/// One attempt at sampling a uniform random walk of `length` vertices;
/// returns the walk only if it is a simple path. Non-simple walks and dead
/// ends are rejected, not retried.
pub fn sample_path(g: &Graph, length: usize, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    assert!(length >= 2, "a path needs at least two vertices");
    if g.n() == 0 {
        return None;
    }
    let mut walk = Vec::with_capacity(length);
    walk.push(rng.gen_range(0..g.n() as u32));
    for _ in 1..length {
        let last = *walk.last().unwrap();
        let ns = g.neighbors(last);
        if ns.is_empty() {
            return None;
        }
        walk.push(ns[rng.gen_range(0..ns.len())]);
    }
    for i in 0..walk.len() {
        for j in i + 1..walk.len() {
            if walk[i] == walk[j] {
                return None;
            }
        }
    }
    Some(walk)
}

/// Search for a dense piece: sample `(k-2)`-vertex walks and accept the
/// first pair of walk endpoints whose neighborhoods pass the density
/// estimate. Returns the piece with its exact crossing edges materialized.
pub fn find_dense_piece(
    g: &Graph,
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
) -> Result<Option<DensePiece>, DenseError> {
    degree_check(g)?;
    Ok(find_dense_piece_unchecked(g, params, rng))
}

fn find_dense_piece_unchecked(
    g: &Graph,
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
) -> Option<DensePiece> {
    let length = params.k - 2;
    for _ in 0..params.path_samples {
        let Some(walk) = sample_path(g, length, rng) else {
            continue;
        };
        let (u, w) = (walk[0], walk[length - 1]);
        let xs = g.neighbors(u);
        let ys = g.neighbors(w);
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        if estimate_density(g, xs, ys, params, rng) {
            return Some(make_piece(g, u, w));
        }
    }
    None
}

fn make_piece(g: &Graph, u: u32, w: u32) -> DensePiece {
    let xs = g.neighbors(u);
    let ys = g.neighbors(w);
    let mut piece: Vec<u32> = xs.iter().chain(ys.iter()).copied().collect();
    piece.sort_unstable();
    piece.dedup();
    DensePiece {
        u,
        w,
        piece,
        crossing: crossing_edges(g, xs, ys),
    }
}

/// All edges of `g` lying in a triangle that uses an edge between `xs` and
/// `ys`. Vertices with many neighbors in `X ∪ Y` are handled by three
/// boolean matrix products; the rest by a bucketed exhaustive scan of
/// neighbor pairs.
pub fn check_triangle_piece(
    g: &Graph,
    xs: &[u32],
    ys: &[u32],
    params: &DensePieceParams,
) -> BTreeSet<Edge> {
    let n = g.n();
    let mut result = BTreeSet::new();
    let mut xs: Vec<u32> = xs.to_vec();
    let mut ys: Vec<u32> = ys.to_vec();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();

    let mut in_x = vec![false; n];
    let mut in_y = vec![false; n];
    for &x in &xs {
        in_x[x as usize] = true;
    }
    for &y in &ys {
        in_y[y as usize] = true;
    }
    let mut union: Vec<u32> = xs.iter().chain(ys.iter()).copied().collect();
    union.sort_unstable();
    union.dedup();

    // edges of X x Y, as unordered pairs of distinct vertices
    let xy_edges = crossing_edges(g, &xs, &ys);
    if xy_edges.is_empty() {
        return result;
    }

    // degree of every vertex into X ∪ Y
    let mut deg_xy = vec![0usize; n];
    for &u in &union {
        for &v in g.neighbors(u) {
            deg_xy[v as usize] += 1;
        }
    }
    let threshold = (n.max(1) as f64).powf(0.5 - params.beta);
    let is_high = |v: u32| (deg_xy[v as usize] as f64) >= threshold;

    // low-degree apexes, bucketed by power-of-two degree
    let bucket_count = threshold.log2().ceil().max(1.0) as usize + 1;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); bucket_count];
    for v in 0..n as u32 {
        let d = deg_xy[v as usize];
        if d >= 2 && !is_high(v) {
            let b = (usize::BITS - 1 - d.leading_zeros()) as usize;
            buckets[b.min(bucket_count - 1)].push(v);
        }
    }
    for bucket in &buckets {
        for &v in bucket {
            let nbrs: Vec<u32> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&t| in_x[t as usize] || in_y[t as usize])
                .collect();
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    let e = edge(nbrs[i], nbrs[j]);
                    if xy_edges.contains(&e) {
                        result.insert(e);
                        result.insert(edge(v, nbrs[i]));
                        result.insert(edge(v, nbrs[j]));
                    }
                }
            }
        }
    }

    // high-degree apexes via matrix products
    let high: Vec<u32> = (0..n as u32).filter(|&v| is_high(v)).collect();
    if !high.is_empty() {
        let mut ix = vec![usize::MAX; n];
        let mut iy = vec![usize::MAX; n];
        let mut ih = vec![usize::MAX; n];
        for (i, &v) in xs.iter().enumerate() {
            ix[v as usize] = i;
        }
        for (i, &v) in ys.iter().enumerate() {
            iy[v as usize] = i;
        }
        for (i, &v) in high.iter().enumerate() {
            ih[v as usize] = i;
        }
        let fill = |rows: &[u32], row_of: &dyn Fn(u32) -> usize,
                    cols_of: &dyn Fn(u32) -> usize, cols: usize| {
            let mut m = BitMatrix::new(rows.len(), cols);
            for &r in rows {
                for &t in g.neighbors(r) {
                    let c = cols_of(t);
                    if c != usize::MAX {
                        m.set(row_of(r), c);
                    }
                }
            }
            m
        };
        let m_xh = fill(&xs, &|v| ix[v as usize], &|v| ih[v as usize], high.len());
        let m_hy = fill(&high, &|v| ih[v as usize], &|v| iy[v as usize], ys.len());
        let m_yx = fill(&ys, &|v| iy[v as usize], &|v| ix[v as usize], xs.len());
        let m_hx = fill(&high, &|v| ih[v as usize], &|v| ix[v as usize], xs.len());
        let m_xy = fill(&xs, &|v| ix[v as usize], &|v| iy[v as usize], ys.len());

        // X x Y edges whose apex is high: X->H times H->Y
        let p1 = m_xh.multiply(&m_hy);
        for &(p, q) in &xy_edges {
            let hit = |a: u32, b: u32| {
                in_x[a as usize]
                    && in_y[b as usize]
                    && p1.get(ix[a as usize], iy[b as usize])
            };
            if hit(p, q) || hit(q, p) {
                result.insert((p, q));
            }
        }
        // H x X edges in a triangle through Y: H->Y times Y->X
        let p2 = m_hy.multiply(&m_yx);
        // H x Y edges in a triangle through X: H->X times X->Y
        let p3 = m_hx.multiply(&m_xy);
        for (hi, &h) in high.iter().enumerate() {
            for &t in g.neighbors(h) {
                if ix[t as usize] != usize::MAX && p2.get(hi, ix[t as usize]) {
                    result.insert(edge(h, t));
                }
                if iy[t as usize] != usize::MAX && p3.get(hi, iy[t as usize]) {
                    result.insert(edge(h, t));
                }
            }
        }
    }
    result
}

/// Outcome of a removal loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseScrub {
    /// Edges certified to lie in a triangle of the input that uses a removed
    /// edge. Exactly the edges whose triangles the removal may have broken.
    pub reported: BTreeSet<Edge>,
    /// The input minus `removed`.
    pub scrubbed: Graph,
    /// Crossing edges of every accepted piece.
    pub removed: BTreeSet<Edge>,
    /// Pieces accepted (equals loop iterations that made progress).
    pub pieces: usize,
    /// Whether the loop stopped at the iteration cap instead of exhausting
    /// its samples; a warning, not a failure.
    pub hit_iteration_cap: bool,
}

/// Repeatedly find a dense piece, report all edges in triangles using one of
/// its crossing edges, and remove the crossing edges. On return, for every
/// edge `e` of the input: `e` is in a triangle of the input iff `e` is
/// reported or `e` is in a triangle of `scrubbed`.
pub fn remove_dense_pieces(
    g: &Graph,
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
) -> Result<DenseScrub, DenseError> {
    degree_check(g)?;
    Ok(remove_dense_pieces_unchecked(g, params, rng))
}

/// Removal loop without the degree-bound check; the pipeline validates its
/// input once up front (or was told to force past it).
pub(crate) fn remove_dense_pieces_unchecked(
    g: &Graph,
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
) -> DenseScrub {
    run_removal_loop(g, params, rng, |work, params, rng| {
        find_dense_piece_unchecked(work, params, rng)
            .map(|piece| (piece.u, piece.w, piece.crossing))
    })
}

/// Variant of the removal loop that targets triangles instead of k-cycles:
/// pieces are single-vertex neighborhoods `(N(v), N(v))` and the removed
/// edges are the intra-neighborhood ones.
pub fn reduce_triangle_count(
    g: &Graph,
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
) -> Result<DenseScrub, DenseError> {
    degree_check(g)?;
    Ok(run_removal_loop(g, params, rng, |work, params, rng| {
        for _ in 0..params.path_samples {
            let v = rng.gen_range(0..work.n() as u32);
            let ns = work.neighbors(v);
            if ns.is_empty() {
                continue;
            }
            if estimate_density(work, ns, ns, params, rng) {
                let crossing = crossing_edges(work, ns, ns);
                return Some((v, v, crossing));
            }
        }
        None
    }))
}

fn run_removal_loop(
    g: &Graph,
    params: &DensePieceParams,
    rng: &mut ChaCha8Rng,
    mut find: impl FnMut(&Graph, &DensePieceParams, &mut ChaCha8Rng) -> Option<(u32, u32, BTreeSet<Edge>)>,
) -> DenseScrub {
    let mut work = g.clone();
    let mut reported = BTreeSet::new();
    let mut removed = BTreeSet::new();
    let mut pieces = 0;
    let mut hit_iteration_cap = false;
    loop {
        if pieces >= params.iteration_cap {
            hit_iteration_cap = true;
            break;
        }
        let Some((u, w, crossing)) = find(&work, params, rng) else {
            break;
        };
        if crossing.is_empty() {
            break; // sampled acceptance without a witness edge: no progress possible
        }
        pieces += 1;
        let xs = work.neighbors(u).to_vec();
        let ys = work.neighbors(w).to_vec();
        reported.extend(check_triangle_piece(&work, &xs, &ys, params));
        for &(a, b) in &crossing {
            work.remove_edge(a, b);
            removed.insert((a, b));
        }
    }
    DenseScrub {
        reported,
        scrubbed: work,
        removed,
        pieces,
        hit_iteration_cap,
    }
}
