//! Tour of the brute-force oracles: triangle and k-cycle enumeration,
//! per-edge triangle answers, girth, the zero-triangle search, and the
//! degree-split triangle detector.
//!
//!     cargo run --example oracle_tour

use cyclescrub::gen;
use cyclescrub::graph::Graph;
use cyclescrub::oracle;

fn main() {
    let g = gen::gen_random_bounded(60, 7, 5);
    println!("graph: n = {}, m = {}", g.n(), g.m());

    let triangles = oracle::enumerate_triangles(&g);
    println!("triangles: {}", triangles.len());
    for t in triangles.iter().take(3) {
        println!("  {:?}", t);
    }

    let in_triangle = oracle::all_edge_triangle(&g);
    let covered = in_triangle.values().filter(|&&b| b).count();
    println!("edges in a triangle: {covered} of {}", g.m());

    for k in 3..=6 {
        println!("{k}-cycles: {}", oracle::count_k_cycles(&g, k).unwrap());
    }
    match oracle::girth(&g) {
        Some(girth) => println!("girth: {girth}"),
        None => println!("girth: infinite (forest)"),
    }

    // the degree-split detector agrees with enumeration on every input
    for delta in [0.0, 0.2] {
        let detected = oracle::triangle_detect_degree_split(&g, delta);
        assert_eq!(detected, !triangles.is_empty());
        println!("degree-split detection (delta = {delta}): {detected}");
    }

    // cycles are canonicalized: rotations and reflections collapse
    let c = oracle::canonical_cycle(&[9, 2, 7, 4]);
    assert_eq!(c, oracle::canonical_cycle(&[7, 4, 9, 2]));
    assert_eq!(c, oracle::canonical_cycle(&[4, 7, 2, 9]));
    println!("canonical form of the cycle 9-2-7-4: {c:?}");

    // zero-weight triangles in a weighted instance
    let wg = gen::gen_weighted_tripartite(24, 5, 3, 11);
    match oracle::zero_triangle_brute(&wg) {
        Some((a, b, c)) => println!("zero triangle: ({a}, {b}, {c})"),
        None => println!("zero triangle: none"),
    }

    // a forest has no cycles at all
    let forest = Graph::from_edges(8, (1..8u32).map(|v| (v / 2, v))).unwrap();
    assert_eq!(oracle::girth(&forest), None);
    println!("forest girth: infinite, as expected");
}
