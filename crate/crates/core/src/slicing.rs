//! Random slicing of a tripartite graph and the end-to-end pipeline that
//! certifies triangle edges (`E'`) and hands back a family of small slices
//! that preserve all remaining triangle information.

use crate::dense::{self, DensePieceParams, DenseError};
use crate::gen::rng_from_seed;
use crate::graph::{edge, embed_original, tripartite_embed, Edge, Graph, Part, TripartiteGraph};
use crate::oracle;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("alpha {0} outside the open interval (0, {1})")]
    BadAlpha(f64, f64),
    #[error("cycle length k must be at least 4, got {0}")]
    BadK(usize),
    #[error("max degree {max_degree} exceeds sqrt({n}); pass force to run anyway")]
    DegreeBound { max_degree: usize, n: usize },
    #[error(transparent)]
    Dense(#[from] DenseError),
}

/// Per-vertex slice indexes: each of the three sides is split into `s`
/// buckets, every vertex joining one bucket of its side uniformly and
/// independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceAssignment {
    pub parts_per_side: u32,
    pub index: Vec<u32>,
}

impl SliceAssignment {
    pub fn s(&self) -> u32 {
        self.parts_per_side
    }

    pub fn index_of(&self, v: u32) -> u32 {
        self.index[v as usize]
    }

    /// Bucket index a slice `(j, k, l)` prescribes for a vertex of `part`.
    pub fn slice_coord(slice: (u32, u32, u32), part: Part) -> u32 {
        match part {
            Part::A => slice.0,
            Part::B => slice.1,
            Part::C => slice.2,
        }
    }
}

/// Number of buckets per side: `max(1, floor(n^(1/2 - alpha)))`.
pub fn parts_per_side(n: usize, alpha: f64) -> u32 {
    ((n.max(1) as f64).powf(0.5 - alpha).floor() as u32).max(1)
}

pub fn random_slice_assignment(tg: &TripartiteGraph, alpha: f64, seed: u64) -> SliceAssignment {
    assignment_with_rng(tg, alpha, &mut rng_from_seed(seed))
}

pub fn assignment_with_rng(
    tg: &TripartiteGraph,
    alpha: f64,
    rng: &mut ChaCha8Rng,
) -> SliceAssignment {
    assert!(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 1/2)");
    let s = parts_per_side(tg.n(), alpha);
    let index = (0..tg.n()).map(|_| rng.gen_range(0..s)).collect();
    SliceAssignment {
        parts_per_side: s,
        index,
    }
}

/// One tripartite slice, stored compactly with a local-to-global vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub index: (u32, u32, u32),
    /// Global vertex ids, sorted; local id = position.
    pub members: Vec<u32>,
    /// Induced (minus any per-slice removals) tripartite graph on local ids.
    pub graph: TripartiteGraph,
}

impl Slice {
    pub fn lift(&self, local: u32) -> u32 {
        self.members[local as usize]
    }

    pub fn lift_edge(&self, e: Edge) -> Edge {
        edge(self.lift(e.0), self.lift(e.1))
    }

    pub fn lift_cycle(&self, cycle: &[u32]) -> Vec<u32> {
        oracle::canonical_cycle(&cycle.iter().map(|&v| self.lift(v)).collect::<Vec<_>>())
    }

    pub fn local_of(&self, global: u32) -> Option<u32> {
        self.members.binary_search(&global).ok().map(|i| i as u32)
    }

    /// Edges in global ids, canonical order.
    pub fn global_edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .graph
            .graph()
            .edges()
            .map(|(u, v)| self.lift_edge((u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Whether the given global edge lies in a triangle of this slice.
    pub fn edge_in_triangle(&self, e: Edge) -> bool {
        match (self.local_of(e.0), self.local_of(e.1)) {
            (Some(u), Some(v)) => {
                self.graph.graph().has_edge(u, v)
                    && !self.graph.graph().common_neighbors(u, v).is_empty()
            }
            _ => false,
        }
    }
}

/// Index triples in lexicographic order.
pub fn slice_indices(s: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..s).flat_map(move |j| (0..s).flat_map(move |k| (0..s).map(move |l| (j, k, l))))
}

/// Materialize the induced slice `(A_j, B_k, C_l)` of `tg`, minus `removed`
/// edges (global ids).
pub fn materialize_slice(
    tg: &TripartiteGraph,
    assignment: &SliceAssignment,
    index: (u32, u32, u32),
    removed: Option<&BTreeSet<Edge>>,
) -> Slice {
    let members: Vec<u32> = (0..tg.n() as u32)
        .filter(|&v| {
            assignment.index_of(v) == SliceAssignment::slice_coord(index, tg.part(v))
        })
        .collect();
    build_slice(tg, index, members, removed)
}

fn build_slice(
    tg: &TripartiteGraph,
    index: (u32, u32, u32),
    members: Vec<u32>,
    removed: Option<&BTreeSet<Edge>>,
) -> Slice {
    let local: BTreeMap<u32, u32> = members
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as u32))
        .collect();
    let mut g = Graph::empty(members.len());
    for (&v, &lv) in &local {
        for &w in tg.graph().neighbors(v) {
            if w <= v {
                continue;
            }
            if let Some(&lw) = local.get(&w) {
                if removed.is_some_and(|r| r.contains(&edge(v, w))) {
                    continue;
                }
                g.add_edge(lv, lw);
            }
        }
    }
    let parts = members.iter().map(|&v| tg.part(v)).collect();
    Slice {
        index,
        members,
        graph: TripartiteGraph::new(g, parts).expect("induced subgraph stays tripartite"),
    }
}

/// Per-phase counters of a dense-removal pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensePhaseStats {
    pub k: usize,
    pub pieces: usize,
    pub edges_removed: usize,
    pub edges_reported: usize,
    pub hit_iteration_cap: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStats {
    pub dense_phases: Vec<DensePhaseStats>,
    /// 4-cycles listed during the clean-up pass (strict mode only).
    pub listed_four_cycles: usize,
    /// Edges certified during the clean-up pass.
    pub cleanup_certified: usize,
    /// (slice, edge) removals applied by the clean-up pass.
    pub cleanup_removed: usize,
    pub warnings: Vec<String>,
}

/// Result of the scrubbing pipeline: certified edges plus the slice family.
#[derive(Debug, Clone, PartialEq)]
pub struct RemovalReport {
    pub k: usize,
    pub alpha: f64,
    pub seed: u64,
    /// Vertex count of the plain input when the pipeline embedded it.
    pub embedded_from: Option<usize>,
    /// Tripartite graph after dense-piece removal; slices are induced here.
    pub scrubbed: TripartiteGraph,
    pub assignment: SliceAssignment,
    /// Certified edges, in the coordinates of the pipeline's tripartite graph.
    pub e_prime: BTreeSet<Edge>,
    /// Certified edges mapped back to the input's coordinates (identical to
    /// `e_prime` for tripartite inputs).
    pub e_prime_input: BTreeSet<Edge>,
    /// Strict-mode per-slice edge removals, keyed by slice index.
    pub removed_per_slice: BTreeMap<(u32, u32, u32), BTreeSet<Edge>>,
    /// Whether every slice is guaranteed 4-cycle-free.
    pub four_cycle_free: bool,
    pub stats: PipelineStats,
}

impl RemovalReport {
    pub fn s(&self) -> u32 {
        self.assignment.s()
    }

    pub fn slice_count(&self) -> usize {
        let s = self.s() as usize;
        s * s * s
    }

    pub fn slice(&self, index: (u32, u32, u32)) -> Slice {
        materialize_slice(
            &self.scrubbed,
            &self.assignment,
            index,
            self.removed_per_slice.get(&index),
        )
    }

    /// Lazily materialized slice family in lexicographic index order.
    pub fn slices(&self) -> impl Iterator<Item = Slice> + '_ {
        slice_indices(self.s()).map(move |idx| self.slice(idx))
    }

    /// Union over slices of the edges lying in at least one in-slice
    /// triangle, lifted to the coordinates of the scrubbed graph.
    pub fn in_slice_triangle_edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for slice in self.slices() {
            for (e, in_tri) in oracle::all_edge_triangle(slice.graph.graph()) {
                if in_tri {
                    out.insert(slice.lift_edge(e));
                }
            }
        }
        out
    }

    /// Map an edge set of the pipeline's tripartite graph back to input
    /// coordinates: an input edge qualifies iff any of its copies does.
    pub fn to_input_edges(&self, edges: &BTreeSet<Edge>) -> BTreeSet<Edge> {
        match self.embedded_from {
            None => edges.clone(),
            Some(n) => edges
                .iter()
                .map(|&(u, v)| edge(embed_original(n, u), embed_original(n, v)))
                .collect(),
        }
    }
}

/// Knobs of the scrubbing pipeline; `None` overrides fall back to values
/// derived from the graph size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub k: usize,
    pub alpha: f64,
    pub omega: f64,
    pub epsilon: f64,
    pub seed: u64,
    pub density_floor: Option<usize>,
    pub path_samples: Option<usize>,
    pub pair_samples: Option<usize>,
    pub hit_threshold: Option<usize>,
    pub iteration_cap: Option<usize>,
    pub exact_fallback: bool,
    /// Skip the input degree-bound check.
    pub force: bool,
}

impl PipelineConfig {
    /// Apply overrides from a flat `key = value` config file (one pair per
    /// line, `#` comments allowed). Unknown keys are errors; command-line
    /// flags are applied after this and win.
    pub fn apply_flat_config(&mut self, text: &str) -> Result<(), String> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", no + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: {key} is not {what}", no + 1);
            match key {
                "k" => self.k = value.parse().map_err(|_| bad("a count"))?,
                "alpha" => self.alpha = value.parse().map_err(|_| bad("a number"))?,
                "omega" => self.omega = value.parse().map_err(|_| bad("a number"))?,
                "epsilon" => self.epsilon = value.parse().map_err(|_| bad("a number"))?,
                "seed" => self.seed = value.parse().map_err(|_| bad("a seed"))?,
                "density_floor" => {
                    self.density_floor = Some(value.parse().map_err(|_| bad("a count"))?)
                }
                "path_samples" => {
                    self.path_samples = Some(value.parse().map_err(|_| bad("a count"))?)
                }
                "pair_samples" => {
                    self.pair_samples = Some(value.parse().map_err(|_| bad("a count"))?)
                }
                "hit_threshold" => {
                    self.hit_threshold = Some(value.parse().map_err(|_| bad("a count"))?)
                }
                "iteration_cap" => {
                    self.iteration_cap = Some(value.parse().map_err(|_| bad("a count"))?)
                }
                "exact_fallback" => {
                    self.exact_fallback = value.parse().map_err(|_| bad("a boolean"))?
                }
                "force" => self.force = value.parse().map_err(|_| bad("a boolean"))?,
                other => return Err(format!("line {}: unknown key `{other}`", no + 1)),
            }
        }
        Ok(())
    }

    pub fn new(k: usize, alpha: f64, seed: u64) -> PipelineConfig {
        PipelineConfig {
            k,
            alpha,
            omega: dense::DEFAULT_OMEGA,
            epsilon: dense::DEFAULT_EPSILON,
            seed,
            density_floor: None,
            path_samples: None,
            pair_samples: None,
            hit_threshold: None,
            iteration_cap: None,
            exact_fallback: true,
            force: false,
        }
    }

    pub fn params_for(&self, n: usize, k: usize) -> DensePieceParams {
        let mut p = DensePieceParams::derive(n, k, self.omega, self.epsilon);
        if let Some(f) = self.density_floor {
            p.density_floor = f.max(1);
        }
        if let Some(s) = self.path_samples {
            p.path_samples = s.max(1);
        }
        if let Some(s) = self.pair_samples {
            p.pair_samples = s.max(1);
        }
        if let Some(t) = self.hit_threshold {
            p.hit_threshold = t.max(1);
        }
        if let Some(c) = self.iteration_cap {
            p.iteration_cap = c.max(1);
        }
        p.exact_fallback = self.exact_fallback;
        p
    }
}

fn check_input_degree(g: &Graph, force: bool) -> Result<(), PipelineError> {
    let d = g.max_degree();
    if !force && d * d > g.n() {
        return Err(PipelineError::DegreeBound {
            max_degree: d,
            n: g.n(),
        });
    }
    Ok(())
}

/// Run the scrubbing pipeline on a plain graph: embed it into a tripartite
/// graph first and map `E'` back to the input's edges.
pub fn remove_most_k_cycles(g: &Graph, cfg: &PipelineConfig) -> Result<RemovalReport, PipelineError> {
    check_input_degree(g, cfg.force)?;
    let tg = tripartite_embed(g);
    run_pipeline(tg, Some(g.n()), cfg)
}

/// Run the scrubbing pipeline on a graph that is already tripartite.
pub fn remove_most_k_cycles_tripartite(
    tg: &TripartiteGraph,
    cfg: &PipelineConfig,
) -> Result<RemovalReport, PipelineError> {
    check_input_degree(tg.graph(), cfg.force)?;
    run_pipeline(tg.clone(), None, cfg)
}

fn run_pipeline(
    tg: TripartiteGraph,
    embedded_from: Option<usize>,
    cfg: &PipelineConfig,
) -> Result<RemovalReport, PipelineError> {
    if cfg.k < 4 {
        return Err(PipelineError::BadK(cfg.k));
    }
    if !(cfg.alpha > 0.0 && cfg.alpha < 0.5) {
        return Err(PipelineError::BadAlpha(cfg.alpha, 0.5));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let n = tg.n();
    let mut work = tg.graph().clone();
    let mut e_prime = BTreeSet::new();
    let mut stats = PipelineStats::default();
    for k_prime in 4..=cfg.k {
        let params = cfg.params_for(n, k_prime);
        let out = dense::remove_dense_pieces_unchecked(&work, &params, &mut rng);
        stats.dense_phases.push(DensePhaseStats {
            k: k_prime,
            pieces: out.pieces,
            edges_removed: out.removed.len(),
            edges_reported: out.reported.len(),
            hit_iteration_cap: out.hit_iteration_cap,
        });
        if out.hit_iteration_cap {
            stats
                .warnings
                .push(format!("iteration cap reached in dense phase k'={k_prime}"));
        }
        e_prime.extend(out.reported);
        work = out.scrubbed;
    }
    let scrubbed = tg.with_graph(work);
    let assignment = assignment_with_rng(&scrubbed, cfg.alpha, &mut rng);
    let report = RemovalReport {
        k: cfg.k,
        alpha: cfg.alpha,
        seed: cfg.seed,
        embedded_from,
        e_prime_input: BTreeSet::new(),
        scrubbed,
        assignment,
        e_prime,
        removed_per_slice: BTreeMap::new(),
        four_cycle_free: false,
        stats,
    };
    Ok(finish_report(report))
}

pub(crate) fn finish_report(mut report: RemovalReport) -> RemovalReport {
    report.e_prime_input = report.to_input_edges(&report.e_prime);
    report
}

/// Brute-force audit of a slice family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceAuditRow {
    pub index: (u32, u32, u32),
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    pub triangles: usize,
    /// `(k', count)` for each audited cycle length.
    pub cycle_counts: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceAudit {
    pub rows: Vec<SliceAuditRow>,
    pub total_cycles: BTreeMap<usize, usize>,
    pub total_triangles: usize,
    pub max_vertices: usize,
    pub max_degree: usize,
}

/// Count k'-cycles for every `4 <= k' <= k` in every slice, along with size
/// and degree statistics.
pub fn audit_slices(report: &RemovalReport, k: usize) -> Result<SliceAudit, oracle::OracleError> {
    if !(4..=oracle::MAX_CYCLE_LEN).contains(&k) {
        return Err(oracle::OracleError::CycleLengthOutOfRange(k));
    }
    let indices: Vec<(u32, u32, u32)> = slice_indices(report.s()).collect();
    let rows: Vec<SliceAuditRow> = indices
        .par_iter()
        .map(|&idx| {
            let slice = report.slice(idx);
            let g = slice.graph.graph();
            let triangles = oracle::enumerate_triangles(g).len();
            let cycle_counts = (4..=k)
                .map(|k_prime| {
                    let c = oracle::count_k_cycles(g, k_prime)
                        .expect("cycle length validated above");
                    (k_prime, c)
                })
                .collect();
            SliceAuditRow {
                index: slice.index,
                vertices: slice.members.len(),
                edges: g.m(),
                max_degree: g.max_degree(),
                triangles,
                cycle_counts,
            }
        })
        .collect();
    let mut total_cycles: BTreeMap<usize, usize> = (4..=k).map(|k| (k, 0)).collect();
    let mut total_triangles = 0;
    for row in &rows {
        total_triangles += row.triangles;
        for &(k_prime, c) in &row.cycle_counts {
            *total_cycles.get_mut(&k_prime).unwrap() += c;
        }
    }
    Ok(SliceAudit {
        max_vertices: rows.iter().map(|r| r.vertices).max().unwrap_or(0),
        max_degree: rows.iter().map(|r| r.max_degree).max().unwrap_or(0),
        total_cycles,
        total_triangles,
        rows,
    })
}
