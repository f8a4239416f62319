//! Gadget reductions with their counting identities checked on the spot:
//! uniform edge subdivision, B-C-side subdivision, the triangle-to-k-cycle
//! dispatcher (with its power-of-two refusal), and the weighted
//! zero-triangle expansion.
//!
//!     cargo run --example gadget_reductions

use cyclescrub::gen;
use cyclescrub::oracle;
use cyclescrub::reductions::{
    subdivide_bc, subdivide_uniform, triangle_to_kcycle, zero_triangle_to_triangle,
    TriangleToKCycle,
};

fn main() {
    let g = gen::gen_random_bounded(40, 5, 6);
    println!(
        "source: n = {}, m = {}, triangles = {}, 4-cycles = {}",
        g.n(),
        g.m(),
        oracle::enumerate_triangles(&g).len(),
        oracle::count_k_cycles(&g, 4).unwrap()
    );

    // stretching every edge by t multiplies cycle lengths by t
    for (r, t) in [(3usize, 2usize), (4, 2)] {
        let (out, map) = subdivide_uniform(&g, t);
        let lhs = oracle::count_k_cycles(&out, r * t).unwrap();
        let rhs = oracle::count_k_cycles(&g, r).unwrap();
        assert_eq!(lhs, rhs);
        println!(
            "uniform t = {t}: {}-cycles of the output = {r}-cycles of the source = {lhs} \
             ({} fresh path vertices)",
            r * t,
            map.edge_paths.values().map(Vec::len).sum::<usize>()
        );
    }

    // subdividing only the B-C side turns triangles into odd cycles
    let tg = gen::gen_random_tripartite(45, 6, 2);
    let triangles = oracle::enumerate_triangles(tg.graph()).len();
    let (out, _) = subdivide_bc(&tg, 3);
    assert_eq!(oracle::count_k_cycles(&out, 5).unwrap(), triangles);
    println!("bc-subdivision t = 3: 5-cycles = triangles = {triangles}");

    // the dispatcher chains both gadgets; powers of two are refused
    for k in [5usize, 6, 7, 8] {
        match triangle_to_kcycle(&tg, k).unwrap() {
            TriangleToKCycle::Reduced { graph, certificate } => {
                let cycles = oracle::count_k_cycles(&graph, k).unwrap();
                assert_eq!(cycles, triangles);
                println!(
                    "k = {k}: {} via p = {:?}, t = {:?}; {k}-cycles = {cycles}",
                    certificate.kind, certificate.p, certificate.t
                );
            }
            TriangleToKCycle::FourCycleRoute { certificate } => {
                println!(
                    "k = {k}: refused for triangle sources; certificate points at the \
                     4-cycle route (t = {:?})",
                    certificate.t
                );
            }
        }
    }

    // weighted zero-triangle instances expand into unweighted triangle ones
    let wg = gen::gen_weighted_tripartite(24, 5, 4, 13);
    let (out, map, cert) = zero_triangle_to_triangle(&wg);
    let zero = oracle::zero_triangle_brute(&wg);
    let triangle = !oracle::enumerate_triangles(&out).is_empty();
    assert_eq!(zero.is_some(), triangle);
    println!(
        "zero-triangle expansion: W = {:?}, output n = {}, zero-triangle = {}, triangle = {}",
        cert.w,
        out.n(),
        zero.is_some(),
        triangle
    );
    if let Some((a, b, c)) = zero {
        let (x, y) = (wg.weight(a, b).unwrap(), wg.weight(a, c).unwrap());
        println!(
            "  witness ({a}, {b}, {c}) maps to copies ({}, {}, {})",
            // the A vertex keeps a single copy; b and c carry value tags
            map.a_map[&a],
            map.copy_id(b, x),
            map.copy_id(c, -y)
        );
    }
}
