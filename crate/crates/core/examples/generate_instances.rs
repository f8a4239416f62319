//! Generate the instance families and round-trip them through the file
//! formats: plain, tripartite, and weighted tripartite edge lists.
//!
//!     cargo run --example generate_instances

use cyclescrub::gen;
use cyclescrub::io;
use cyclescrub::oracle;

fn main() {
    let dir = std::env::temp_dir().join("cyclescrub-example-instances");
    std::fs::create_dir_all(&dir).unwrap();

    // bounded-degree random graph, deterministic in the seed
    let g = gen::gen_random_bounded(100, 10, 7);
    println!(
        "random bounded: n = {}, m = {}, max degree = {}",
        g.n(),
        g.m(),
        g.max_degree()
    );
    let path = dir.join("random.txt");
    io::write_graph(&g, &path).unwrap();
    assert_eq!(io::read_graph(&path).unwrap(), g);
    println!("  round-tripped through {}", path.display());

    // tripartite instance with a planted triangle
    let (tg, planted) = gen::gen_planted_triangle(60, 6, 21);
    let triangles = oracle::enumerate_triangles(tg.graph());
    println!(
        "planted tripartite: n = {}, m = {}, triangles = {}, planted edge = {:?}",
        tg.n(),
        tg.graph().m(),
        triangles.len(),
        planted
    );
    assert!(!tg.graph().common_neighbors(planted.0, planted.1).is_empty());
    io::write_tripartite(&tg, dir.join("planted.txt")).unwrap();

    // weighted tripartite instance for the zero-triangle reduction
    let wg = gen::gen_weighted_tripartite(30, 5, 4, 3);
    println!(
        "weighted tripartite: n = {}, m = {}, weight bound = {}",
        wg.tripartite().n(),
        wg.tripartite().graph().m(),
        wg.weight_bound()
    );
    io::write_weighted_tripartite(&wg, dir.join("weighted.txt")).unwrap();

    // parse errors carry the offending line
    let err = io::parse_graph("3 2\n0 1\n0 0\n").unwrap_err();
    println!("parse error demo: {err}");
}
