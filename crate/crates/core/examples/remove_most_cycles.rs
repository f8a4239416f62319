//! The full scrubbing pipeline: certify triangle edges into E', slice the
//! rest, and audit how few short cycles the slices carry — with the exact
//! per-edge coverage contract checked at the end.
//!
//!     cargo run --example remove_most_cycles

use cyclescrub::gen;
use cyclescrub::graph::tripartite_embed;
use cyclescrub::oracle;
use cyclescrub::slicing::{audit_slices, remove_most_k_cycles, PipelineConfig};

fn main() {
    let n = 128;
    let d = 11;
    let g = gen::gen_random_bounded(n, d, 4);
    println!("input: n = {n}, m = {}", g.m());

    let mut cfg = PipelineConfig::new(5, 0.12, 2024);
    cfg.density_floor = Some(30); // keep some structure in the slices
    let report = remove_most_k_cycles(&g, &cfg).unwrap();

    println!(
        "pipeline k = {}: |E'| = {} (input coordinates: {}), s = {} buckets per side, {} slices",
        report.k,
        report.e_prime.len(),
        report.e_prime_input.len(),
        report.s(),
        report.slice_count()
    );
    for phase in &report.stats.dense_phases {
        println!(
            "  dense pass k' = {}: {} pieces, {} edges removed, {} reported",
            phase.k, phase.pieces, phase.edges_removed, phase.edges_reported
        );
    }

    let audit = audit_slices(&report, 5).unwrap();
    println!(
        "slice audit: max {} vertices, max degree {}, triangles across slices {}",
        audit.max_vertices, audit.max_degree, audit.total_triangles
    );
    for (k, count) in &audit.total_cycles {
        println!("  total {k}-cycles across slices: {count}");
    }

    // every slice cycle also lives in the scrubbed graph, so totals only shrink
    let whole = oracle::count_k_cycles(report.scrubbed.graph(), 4).unwrap();
    assert!(audit.total_cycles[&4] <= whole);
    println!("monotone thinning: {} <= {whole} whole-graph 4-cycles", audit.total_cycles[&4]);

    // the coverage contract, exact per edge of the embedded input
    let tg = tripartite_embed(&g);
    let in_slice = report.in_slice_triangle_edges();
    let mut in_triangle = 0;
    for (e, in_tri) in oracle::all_edge_triangle(tg.graph()) {
        let covered = report.e_prime.contains(&e) || in_slice.contains(&e);
        assert_eq!(in_tri, covered);
        in_triangle += in_tri as usize;
    }
    println!("coverage verified: {in_triangle} triangle edges all accounted for");
}
