//! Separator of a grid and the resulting contraction plan.
//!
//!     cargo run --example separator_plan -- 9

use tnplanar::bench::grid_network;
use tnplanar::engine::{build_plan_separator_with, COARSEN_FACTOR, DEFAULT_LEAF_CUTOFF};
use tnplanar::planar::check_planarity;
use tnplanar::{build_plan_greedy, planar_separator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    let net = grid_network(k);
    let emb = check_planarity(&net).embedding().ok_or("grid is planar")?;
    let sep = planar_separator(&net, &emb)?;
    println!("{k}x{k} grid: separator {:?}", sep.separator);
    println!("parts of {} and {} vertices", sep.parts[0].len(), sep.parts[1].len());

    for (label, coarsen) in [("plain", 0), ("coarsened", COARSEN_FACTOR)] {
        let (plan, trace) = build_plan_separator_with(&net, DEFAULT_LEAF_CUTOFF, coarsen)?;
        println!("{label} separator plan: {} steps, bounds hold: {}", trace.steps.len(), trace.bounds_hold());
        for step in trace.steps.iter().take(6) {
            println!("  n = {:4}  |S| = {:3}  largest part = {:4}", step.n, step.separator, step.largest_part);
        }
        println!("  max rank {}", plan.max_rank());
    }
    println!("greedy plan: max rank {}", build_plan_greedy(&net).max_rank());
    Ok(())
}
