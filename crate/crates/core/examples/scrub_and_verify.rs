//! Write a slice directory with its manifest, then replay every contract
//! from the files alone — the library-level equivalent of
//! `cyclescrub scrub` followed by `cyclescrub verify manifest`.
//!
//!     cargo run --example scrub_and_verify

use cyclescrub::fourfree::remove_all_4cycles;
use cyclescrub::gen;
use cyclescrub::manifest::{verify_manifest, write_report, InputInfo, VerifyInput};
use cyclescrub::slicing::PipelineConfig;

fn main() {
    let g = gen::gen_random_bounded(80, 8, 12);
    let mut cfg = PipelineConfig::new(4, 0.05, 5);
    cfg.density_floor = Some(20);
    let report = remove_all_4cycles(&g, &cfg).unwrap();

    let dir = std::env::temp_dir().join("cyclescrub-example-manifest");
    let _ = std::fs::remove_dir_all(&dir);
    let info = InputInfo {
        n: g.n(),
        m: g.m(),
        tripartite: false,
        embedded: true,
    };
    let manifest = write_report(&report, &cfg, info, &dir, Some(4)).unwrap();
    println!(
        "wrote {} slice files + manifest.json to {}",
        manifest.slices.len(),
        dir.display()
    );
    println!(
        "manifest: mode = {}, |E'| = {}, audited 4-cycles = {:?}",
        manifest.mode,
        manifest.e_prime.len(),
        manifest.audit_total_cycles.as_ref().map(|t| t[&4])
    );

    let outcome = verify_manifest(&VerifyInput::Plain(g), &dir).unwrap();
    println!(
        "verification: {} checks, {} violations",
        outcome.checks,
        outcome.violations.len()
    );
    assert!(outcome.passed());
}
