//! Bounded-degree planar realization of an arbitrary symmetric function.
//!
//! Inputs are padded with zero pins to `n' = 2^k`. A counter tree of
//! adders (`A` at the start of each row, `B` after it) sums pairs of bits;
//! each row sends carries to the row above and its final sum bit sideways,
//! so row `l` emits bit `l - 1` of the Hamming weight and the top adder also
//! emits bit `k`. A mirrored decoder tree (`D` rows closed by a `C`) turns
//! those bits back into the unary string `1^w 0^(n'-w)`, doubling the unary
//! length on every row. Finally a chain of `F_i` tables over adjacent unary
//! wires multiplies in `f[w]`; wires read by two chain tables are split by an
//! `=_3` vertex. Every vertex has degree at most five.

use crate::error::{Error, Result};
use crate::network::{Endpoint, NetworkBuilder};
use crate::tensor::{Count, Tensor};

use super::tables::{table_a, table_b, table_c, table_chain, table_d};
use super::Gadget;

/// Where a wire starts: a body port or a gadget input.
#[derive(Clone)]
enum Source {
    Port(Endpoint),
    Input(String),
}

fn link(b: &mut NetworkBuilder, src: &Source, dst: Endpoint) {
    match src {
        Source::Port(ep) => {
            b.connect(*ep, dst);
        }
        Source::Input(label) => b.external(dst, label.clone()),
    }
}

fn pin_zero(b: &mut NetworkBuilder) -> Source {
    let v = b.add_vertex(Tensor::dense_u64(1, &[1, 0]));
    Source::Port(Endpoint::new(v, 0))
}

/// Gadget with `n = f.len() - 1` ports realizing the symmetric function `f`.
pub fn build_symmetric_gadget(f: &[Count]) -> Result<Gadget> {
    if f.is_empty() {
        return Err(Error::EmptyWeights);
    }
    let n = f.len() - 1;
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut b = NetworkBuilder::new();
    if n == 0 {
        b.add_vertex(Tensor::symmetric(0, f.to_vec())?);
        return Gadget::new(b.build()?, labels);
    }
    if n == 1 {
        let v = b.add_vertex(Tensor::dense(1, f.to_vec())?);
        b.external(Endpoint::new(v, 0), labels[0].clone());
        return Gadget::new(b.build()?, labels);
    }

    let width = n.next_power_of_two();
    let k = width.trailing_zeros() as usize;

    // Counter tree.
    let mut row: Vec<Source> = labels.iter().cloned().map(Source::Input).collect();
    while row.len() < width {
        row.push(pin_zero(&mut b));
    }
    let mut bits: Vec<Source> = Vec::with_capacity(k + 1);
    while row.len() > 1 {
        let mut carries = Vec::with_capacity(row.len() / 2);
        let mut sum: Option<Source> = None;
        for pair in row.chunks(2) {
            let (v, sum_port) = match &sum {
                None => {
                    let v = b.add_vertex(table_a());
                    link(&mut b, &pair[0], Endpoint::new(v, 2));
                    link(&mut b, &pair[1], Endpoint::new(v, 3));
                    (v, 1)
                }
                Some(prev) => {
                    let v = b.add_vertex(table_b());
                    link(&mut b, prev, Endpoint::new(v, 1));
                    link(&mut b, &pair[0], Endpoint::new(v, 3));
                    link(&mut b, &pair[1], Endpoint::new(v, 4));
                    (v, 2)
                }
            };
            carries.push(Source::Port(Endpoint::new(v, 0)));
            sum = Some(Source::Port(Endpoint::new(v, sum_port)));
        }
        bits.push(sum.expect("non-empty row"));
        row = carries;
    }
    bits.push(row.pop().expect("top carry"));
    debug_assert_eq!(bits.len(), k + 1);

    // Decoder tree: bits[k] is the unary string of length one.
    let mut unary: Vec<Source> = vec![bits[k].clone()];
    for level in (0..k).rev() {
        let m = unary.len();
        let mut next = Vec::with_capacity(2 * m);
        let mut pass = bits[level].clone();
        for (i, u) in unary.iter().enumerate() {
            let (v, o1) = if i + 1 == m {
                let v = b.add_vertex(table_c());
                link(&mut b, u, Endpoint::new(v, 0));
                link(&mut b, &pass, Endpoint::new(v, 1));
                (v, 2)
            } else {
                let v = b.add_vertex(table_d());
                link(&mut b, u, Endpoint::new(v, 0));
                link(&mut b, &pass, Endpoint::new(v, 1));
                pass = Source::Port(Endpoint::new(v, 2));
                (v, 3)
            };
            next.push(Source::Port(Endpoint::new(v, o1)));
            next.push(Source::Port(Endpoint::new(v, o1 + 1)));
        }
        unary = next;
    }
    debug_assert_eq!(unary.len(), width);

    // Unused unary wires are always zero.
    for w in &unary[n..] {
        let pin = b.add_vertex(Tensor::dense_u64(1, &[1, 0]));
        link(&mut b, w, Endpoint::new(pin, 0));
    }

    // Chain F_1..F_{n-1}; F_i reads (o_i, o_{i+1}) = (unary[i-1], unary[i]).
    let chain: Vec<usize> = (1..n)
        .map(|i| Ok(b.add_vertex(table_chain(i, f, n)?)))
        .collect::<Result<_>>()?;
    link(&mut b, &unary[0], Endpoint::new(chain[0], 0));
    link(&mut b, &unary[n - 1], Endpoint::new(chain[n - 2], 1));
    for w in 1..n - 1 {
        let split = b.add_vertex(Tensor::equality(3));
        link(&mut b, &unary[w], Endpoint::new(split, 0));
        b.connect_ports(split, 1, chain[w - 1], 1);
        b.connect_ports(split, 2, chain[w], 0);
    }
    Gadget::new(b.build()?, labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::verify_gadget;

    fn weights(v: &[u64]) -> Vec<Count> {
        v.iter().map(|&x| Count::from(x)).collect()
    }

    #[test]
    fn small_cases_by_brute_force() {
        for f in [&[2u64, 5][..], &[1, 0, 3], &[0, 1, 0, 1], &[1, 0, 0, 0, 1], &[4, 0, 1, 2, 0, 3]] {
            let g = build_symmetric_gadget(&weights(f)).unwrap();
            let t = Tensor::symmetric_u64(f);
            let table = if g.body.edges().len() <= 22 {
                g.function_table_brute().unwrap()
            } else {
                g.function_table().unwrap()
            };
            assert!(table.entries().eq(t.entries()), "f = {f:?}");
        }
    }

    #[test]
    fn equality_four_rows() {
        let g = build_symmetric_gadget(&weights(&[1, 0, 0, 0, 1])).unwrap();
        let table = g.function_table().unwrap();
        assert_eq!(*table.value(0b1111), Count::from(1u8));
        assert_eq!(*table.value(0b1011), Count::from(0u8));
    }

    #[test]
    fn degree_and_size_bounds() {
        for n in 1..=9 {
            let g = build_symmetric_gadget(&vec![Count::from(1u8); n + 1]).unwrap();
            assert!(g.body.stats().max_degree <= 5);
            assert!(g.body.num_vertices() <= 12 * n);
            assert!(verify_gadget(&g, &Tensor::unit(n)).unwrap());
        }
    }

    #[test]
    fn empty_weights_rejected() {
        assert_eq!(build_symmetric_gadget(&[]).unwrap_err(), Error::EmptyWeights);
    }

    #[test]
    fn deterministic() {
        let f = weights(&[3, 1, 4, 1, 5, 9]);
        assert_eq!(build_symmetric_gadget(&f).unwrap(), build_symmetric_gadget(&f).unwrap());
    }
}
