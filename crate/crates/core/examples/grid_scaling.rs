//! Planned contraction rank on k x k grids against N = k^2.

use tnplanar::bench::{run_bench, BenchOptions, Family};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sizes = [16, 36, 64, 100, 144, 196, 256, 400];
    let report = run_bench(Family::Grid, &sizes, &BenchOptions::default())?;
    print!("{}", report.to_csv());
    if let Some(s) = report.slope {
        println!("fitted slope of log2(max_rank) against log2(N): {s:.3}");
    }
    Ok(())
}
