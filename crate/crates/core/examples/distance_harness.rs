//! From a removal report to distance-oracle and dynamic-update workloads:
//! drop each slice's B-C edges, query exactly the dropped pairs, and let
//! the filter turn any sound distance answers back into per-edge triangle
//! verdicts. The update script replays the same workload as one evolving
//! graph.
//!
//!     cargo run --example distance_harness

use cyclescrub::gen;
use cyclescrub::graph::Part;
use cyclescrub::harness::{
    emit_update_sequence, exact_answers, filter_candidates, make_distance_instances,
    replay_update_sequence,
};
use cyclescrub::oracle;
use cyclescrub::slicing::{remove_most_k_cycles_tripartite, PipelineConfig};

fn main() {
    let k = 5;
    let tg = gen::gen_random_tripartite(120, 10, 31);
    let mut cfg = PipelineConfig::new(k, 0.15, 7);
    cfg.density_floor = Some(25);
    let report = remove_most_k_cycles_tripartite(&tg, &cfg).unwrap();

    let instances = make_distance_instances(&report);
    let queries: usize = instances.iter().map(|i| i.queries.len()).sum();
    println!(
        "{} instances from {} slices, {queries} queries in total",
        instances.len(),
        report.slice_count()
    );

    // answer with exact BFS and filter the candidates
    let answers = exact_answers(&instances);
    let verdicts = filter_candidates(&report, &answers, k).unwrap();
    let positive = verdicts.values().filter(|&&b| b).count();
    println!("filter: {positive} B-C edges confirmed in triangles");

    // the verdicts equal the brute-force oracle on every B-C edge
    for (e, in_tri) in oracle::all_edge_triangle(tg.graph()) {
        if tg.part(e.0) == Part::A || tg.part(e.1) == Part::A {
            continue;
        }
        assert_eq!(verdicts.get(&e).copied().unwrap_or(false), in_tri);
    }
    println!("verdicts match the all-edge triangle oracle on the B-C side");

    // the same workload as an update/query script
    let script = emit_update_sequence(&report, "init.txt");
    println!(
        "update script: {} phases, first phase: {} queries, {} deletes, {} inserts",
        script.phases.len(),
        script.phases[0].queries.len(),
        script.phases[0].deletes.len(),
        script.phases[0].inserts.len()
    );
    let replayed = replay_update_sequence(&script);
    assert_eq!(replayed, answers);
    assert_eq!(
        filter_candidates(&report, &replayed, k).unwrap(),
        verdicts
    );
    println!("replaying the script reproduces the answers and the verdicts");

    // a taste of the script text
    for line in script.to_text().lines().take(6) {
        println!("  | {line}");
    }
}
