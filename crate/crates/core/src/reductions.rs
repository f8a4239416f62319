//! Instance transformations: edge-subdivision gadgets translating triangles
//! or short cycles into longer cycles, and the expansion of weighted
//! zero-triangle instances into unweighted triangle instances. Fresh
//! vertices are appended after the original id range and every gadget
//! records a provenance map so tests can push witnesses through.

use crate::graph::{Edge, Graph, Part, TripartiteGraph, WeightedTripartiteGraph};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("cycle length k must be at least 3, got {0}")]
    KTooSmall(usize),
    #[error("subdivision length must be at least {min}, got {t}")]
    SubdivisionLength { t: usize, min: usize },
}

/// What a gadget did and how source witnesses map to target witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub kind: String,
    pub forward_map: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<i64>,
}

/// Provenance of a subdivision: the fresh path vertices of each subdivided
/// edge, in order from the smaller endpoint to the larger.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SubdivisionMap {
    pub t: usize,
    pub edge_paths: BTreeMap<Edge, Vec<u32>>,
}

/// Replace every edge by a path of length `t` through `t - 1` fresh
/// degree-2 vertices; `t = 1` is the identity. Cycles of `r * t` vertices
/// in the output correspond one-to-one to `r`-cycles of the input.
pub fn subdivide_uniform(g: &Graph, t: usize) -> (Graph, SubdivisionMap) {
    assert!(t >= 1, "path length must be positive");
    let edges: Vec<Edge> = g.edges().collect();
    subdivide_edges(g.n(), &edges, &edges, t)
}

/// Subdivide only the B-C edges of a tripartite graph, leaving A-B and A-C
/// edges alone. With `t = k - 2` for odd `k`, the k-cycles of the output
/// correspond one-to-one to the triangles of the input.
pub fn subdivide_bc(tg: &TripartiteGraph, t: usize) -> (Graph, SubdivisionMap) {
    assert!(t >= 2, "side subdivision needs path length at least 2");
    let all: Vec<Edge> = tg.graph().edges().collect();
    let chosen: Vec<Edge> = all
        .iter()
        .copied()
        .filter(|&(u, v)| {
            let (pu, pv) = (tg.part(u), tg.part(v));
            pu != Part::A && pv != Part::A
        })
        .collect();
    subdivide_edges(tg.n(), &all, &chosen, t)
}

fn subdivide_edges(n: usize, all: &[Edge], chosen: &[Edge], t: usize) -> (Graph, SubdivisionMap) {
    let chosen_set: std::collections::BTreeSet<Edge> = chosen.iter().copied().collect();
    let fresh_per_edge = t - 1;
    let mut out = Graph::empty(n + chosen.len() * fresh_per_edge);
    let mut map = SubdivisionMap {
        t,
        edge_paths: BTreeMap::new(),
    };
    let mut next = n as u32;
    for &(u, v) in all {
        if !chosen_set.contains(&(u, v)) || fresh_per_edge == 0 {
            out.add_edge(u, v);
            continue;
        }
        let path: Vec<u32> = (0..fresh_per_edge as u32).map(|i| next + i).collect();
        next += fresh_per_edge as u32;
        let mut prev = u;
        for &mid in &path {
            out.add_edge(prev, mid);
            prev = mid;
        }
        out.add_edge(prev, v);
        map.edge_paths.insert((u, v), path);
    }
    (out, map)
}

/// Outcome of the triangle-to-k-cycle dispatcher.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleToKCycle {
    /// Graph whose k-cycles correspond one-to-one to the input's triangles.
    Reduced {
        graph: Graph,
        certificate: ReductionCertificate,
    },
    /// `k` is a power of two: no triangle-based gadget exists. The
    /// certificate describes the 4-cycle route instead.
    FourCycleRoute { certificate: ReductionCertificate },
}

fn smallest_odd_prime_divisor(k: usize) -> Option<usize> {
    let mut rest = k;
    while rest.is_multiple_of(2) {
        rest /= 2;
    }
    if rest == 1 {
        return None; // power of two
    }
    let mut p = 3;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            return Some(p);
        }
        p += 2;
    }
    Some(rest)
}

/// Translate triangles into k-cycles. If `k` has an odd prime divisor `p`,
/// chain the B-C subdivision (target `p`) with a uniform subdivision
/// (factor `k/p`). Powers of two are refused for triangle sources — the
/// returned certificate declares the 4-cycle route instead of silently
/// switching problems.
pub fn triangle_to_kcycle(
    tg: &TripartiteGraph,
    k: usize,
) -> Result<TriangleToKCycle, ReductionError> {
    if k < 3 {
        return Err(ReductionError::KTooSmall(k));
    }
    let Some(p) = smallest_odd_prime_divisor(k) else {
        return Ok(TriangleToKCycle::FourCycleRoute {
            certificate: ReductionCertificate {
                kind: "four-cycle-route".into(),
                forward_map: format!(
                    "k = {k} is a power of two: subdivide every edge of a 4-cycle instance \
                     into a path of length {}; its {k}-cycles correspond one-to-one to the \
                     4-cycles of the source",
                    k / 4
                ),
                k: Some(k),
                p: None,
                r: Some(4),
                t: Some(k / 4),
                w: None,
            },
        });
    };
    let stage1 = if p == 3 {
        tg.graph().clone()
    } else {
        subdivide_bc(tg, p - 2).0
    };
    let graph = if k / p == 1 {
        stage1
    } else {
        subdivide_uniform(&stage1, k / p).0
    };
    let certificate = ReductionCertificate {
        kind: if k == 3 {
            "identity".into()
        } else {
            "triangle-to-k-cycle".into()
        },
        forward_map: format!(
            "a triangle (a, b, c) becomes the {p}-cycle through the subdivided b-c path, \
             then each edge stretches by a factor of {}; the image is a {k}-cycle",
            k / p
        ),
        k: Some(k),
        p: Some(p),
        r: None,
        t: Some(k / p),
        w: None,
    };
    Ok(TriangleToKCycle::Reduced { graph, certificate })
}

/// Provenance of the zero-triangle expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroTriangleMap {
    pub w_bound: i64,
    /// New id of each A vertex.
    pub a_map: BTreeMap<u32, u32>,
    /// Block start of each B or C vertex; copy `i` (for `i` in
    /// `[-3W, 3W]`) lives at `start + (i + 3W)`.
    pub block_start: BTreeMap<u32, u32>,
}

impl ZeroTriangleMap {
    pub fn copy_id(&self, u: u32, value: i64) -> u32 {
        let start = self.block_start[&u];
        debug_assert!(value.abs() <= 3 * self.w_bound);
        start + (value + 3 * self.w_bound) as u32
    }
}

/// Expand a weighted tripartite instance into an unweighted graph with a
/// triangle iff the instance has a zero-weight triangle. Every `u` in
/// `B ∪ C` becomes `6W + 1` value-tagged copies; an `(a, b)` edge of weight
/// `x` attaches `a` to `b_x`, an `(a, c)` edge of weight `y` attaches `a`
/// to `c_(-y)`, and a `(b, c)` edge of weight `z` becomes the matching
/// `(b_i, c_(i+z))` over `i` in `[-2W, 2W]`.
pub fn zero_triangle_to_triangle(
    wg: &WeightedTripartiteGraph,
) -> (Graph, ZeroTriangleMap, ReductionCertificate) {
    let tg = wg.tripartite();
    let w = wg.weight_bound();
    let copies = (6 * w + 1) as u32;
    let mut a_map = BTreeMap::new();
    let mut block_start = BTreeMap::new();
    let mut next = 0u32;
    for v in 0..tg.n() as u32 {
        if tg.part(v) == Part::A {
            a_map.insert(v, next);
            next += 1;
        }
    }
    for v in 0..tg.n() as u32 {
        if tg.part(v) != Part::A {
            block_start.insert(v, next);
            next += copies;
        }
    }
    let map = ZeroTriangleMap {
        w_bound: w,
        a_map,
        block_start,
    };
    let mut out = Graph::empty(next as usize);
    for (u, v) in tg.graph().edges() {
        let weight = wg.weight(u, v).expect("weight per edge");
        let (pu, pv) = (tg.part(u), tg.part(v));
        match (pu, pv) {
            (Part::A, Part::B) | (Part::B, Part::A) => {
                let (a, b) = if pu == Part::A { (u, v) } else { (v, u) };
                out.add_edge(map.a_map[&a], map.copy_id(b, weight));
            }
            (Part::A, Part::C) | (Part::C, Part::A) => {
                let (a, c) = if pu == Part::A { (u, v) } else { (v, u) };
                out.add_edge(map.a_map[&a], map.copy_id(c, -weight));
            }
            (Part::B, Part::C) | (Part::C, Part::B) => {
                let (b, c) = if pu == Part::B { (u, v) } else { (v, u) };
                for i in -2 * w..=2 * w {
                    out.add_edge(map.copy_id(b, i), map.copy_id(c, i + weight));
                }
            }
            _ => unreachable!("tripartite graphs have no intra-part edges"),
        }
    }
    let certificate = ReductionCertificate {
        kind: "zero-triangle-expansion".into(),
        forward_map: "a zero triangle (a, b, c) with weights (x, y, z) becomes the triangle \
                      (a, b_x, c_(-y)); the b-c matching edge exists because x + z = -y"
            .into(),
        k: None,
        p: None,
        r: None,
        t: None,
        w: Some(w),
    };
    (out, map, certificate)
}
