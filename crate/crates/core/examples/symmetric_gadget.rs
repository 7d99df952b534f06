//! Builds the degree-5 planar gadget for a symmetric function and checks it.
//!
//!     cargo run --example symmetric_gadget -- 3 0 5 1 2

use tnplanar::gadget::build_symmetric_gadget;
use tnplanar::{verify_gadget, Count, Tensor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut f: Vec<Count> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    if f.is_empty() {
        f = [1u32, 0, 2, 0, 1, 0, 3].map(Count::from).to_vec();
    }
    let n = f.len() - 1;
    let g = build_symmetric_gadget(&f)?;
    let max_degree = (0..g.body.num_vertices()).map(|p| g.body.degree(p)).max().unwrap_or(0);
    println!("f = {f:?} (arity {n})");
    println!("gadget: {} vertices, {} internal edges, max degree {max_degree}", g.body.num_vertices(), g.body.edges().len());
    println!("planar with ports outside: {}", g.is_planar_with_ports_outside());
    println!("realizes f: {}", verify_gadget(&g, &Tensor::symmetric(n, f)?)?);
    Ok(())
}
