//! Contracts a network stored as JSON with every strategy.
//!
//!     cargo run --example contract_json -- net.json

use tnplanar::format::{network_from_json, network_to_json};
use tnplanar::{contract_full, NetworkBuilder, Strategy, Tensor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = match std::env::args().nth(1) {
        Some(path) => network_from_json(&std::fs::read_to_string(path)?)?,
        None => {
            // a triangle of XOR3 vertices closed by a self-loop on each
            let mut b = NetworkBuilder::new();
            for _ in 0..3 {
                b.add_vertex(Tensor::symmetric_u64(&[1, 0, 1, 0, 1]));
            }
            for v in 0..3 {
                b.connect_ports(v, 0, (v + 1) % 3, 1);
                b.connect_ports(v, 2, v, 3);
            }
            let net = b.build()?;
            println!("{} bytes of JSON", network_to_json(&net).len());
            net
        }
    };
    for s in [Strategy::Separator, Strategy::Greedy, Strategy::Brute] {
        let name = s.to_string();
        match contract_full(&net, s) {
            Ok((v, stats)) => println!("{name:>9}: {v} (max rank {}, {} merges)", stats.max_rank, stats.merges),
            Err(e) => println!("{name:>9}: {e}"),
        }
    }
    Ok(())
}
