//! Planarizes K5 (each vertex the symmetric function [1, 2, 0, 1, 0]):
//! draw on a circle, replace crossings by gadgets, reduce degrees, contract.

use tnplanar::planar::{check_planarity, circular_drawing, expand_restricted, reduce_degree, replace_crossings};
use tnplanar::{contract_full, NetworkBuilder, Strategy, Tensor, Variant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut b = NetworkBuilder::new();
    for _ in 0..5 {
        b.add_vertex(Tensor::symmetric_u64(&[1, 2, 0, 1, 0]));
    }
    let mut used = [0usize; 5];
    for a in 0..5 {
        for c in a + 1..5 {
            b.connect_ports(a, used[a], c, used[c]);
            used[a] += 1;
            used[c] += 1;
        }
    }
    let k5 = b.build()?;
    let (value, _) = contract_full(&k5, Strategy::Greedy)?;
    println!("K5: planar = {}, value = {value}", check_planarity(&k5).is_planar());

    let drawing = circular_drawing(&k5, 0)?;
    println!("circular drawing: {} crossings {:?}", drawing.crossing_count(), drawing.crossings);
    for variant in [Variant::Standard, Variant::Restricted] {
        let mut net = replace_crossings(&k5, &drawing, variant)?;
        if variant == Variant::Restricted {
            net = expand_restricted(&net)?;
        }
        let net = reduce_degree(&net, 4)?;
        let (v, stats) = contract_full(&net, Strategy::Separator)?;
        println!(
            "{variant}: {} vertices, planar = {}, value = {v}, max rank {}",
            net.num_vertices(),
            check_planarity(&net).is_planar(),
            stats.max_rank
        );
    }
    Ok(())
}
