//! Prints the function table of both crossing gadgets: two wires, N-S and E-W,
//! passing through each other.

use tnplanar::gadget::{build_crossing_gadget, build_restricted_crossing_gadget, crossing_tensor};
use tnplanar::tensor::decode_assignment;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let target = crossing_tensor();
    for (name, g) in [("standard", build_crossing_gadget()), ("restricted", build_restricted_crossing_gadget())] {
        let table = g.function_table()?;
        println!("{name}: {} vertices, ports {:?}", g.body.num_vertices(), g.ports);
        for i in 0..table.table_len() {
            let bits: String = decode_assignment(i, 4).iter().map(|&b| if b { '1' } else { '0' }).collect();
            if !table.value(i).to_string().eq("0") {
                println!("  {bits} -> {}", table.value(i));
            }
        }
        println!("  matches the crossing: {}", table.entries().eq(target.entries()));
    }
    Ok(())
}
