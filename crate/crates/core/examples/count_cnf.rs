//! Counts models of random sparse CNFs through the planar pipeline and
//! compares against enumeration.
//!
//!     cargo run --release --example count_cnf -- [vars] [clauses] [width] [standard|restricted] [instances]

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tnplanar::cnf::{brute_count, random_cnf, run_pipeline, PipelineOptions};
use tnplanar::Variant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: usize| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(d);
    let (n, m, width) = (arg(0, 8), arg(1, 8), arg(2, 3));
    let variant: Variant = args.get(3).map(|s| s.parse()).transpose()?.unwrap_or(Variant::Standard);
    let instances = arg(4, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..instances {
        let phi = random_cnf(n, m, width, &mut rng);
        let t = Instant::now();
        let report = run_pipeline(&phi, &PipelineOptions { variant, ..Default::default() })?;
        let expected = brute_count(&phi)?;
        println!(
            "#{i}: {} models (enumeration {expected}), {} crossings, {} -> {} vertices, max rank {}, {:?}",
            report.count,
            report.crossings,
            report.input_vertices,
            report.final_network.num_vertices(),
            report.stats.max_rank,
            t.elapsed()
        );
        assert_eq!(report.count, expected);
    }
    Ok(())
}
