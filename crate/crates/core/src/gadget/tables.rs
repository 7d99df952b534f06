//! Vertex functions used inside the gadgets.
//!
//! The counter tree uses `A`/`B` (half and full adders that send the carry
//! up and the sum bit sideways), the decoder tree uses `C`/`D` (binary to
//! unary expansion), and the chain tables `F_i` read the unary string.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::tensor::{Count, Tensor};

fn predicate_table(arity: usize, pred: impl Fn(&[u8]) -> bool) -> Tensor {
    let table = (0..1usize << arity)
        .map(|i| {
            let bits: Vec<u8> = (0..arity).map(|p| ((i >> (arity - 1 - p)) & 1) as u8).collect();
            Count::from(pred(&bits) as u8)
        })
        .collect();
    Tensor::Dense { arity, table }
}

/// `A(u, h, I1, I2)`: one iff `u = (I1+I2)/2` and `h = (I1+I2) mod 2`.
pub fn table_a() -> Tensor {
    predicate_table(4, |x| {
        let s = x[2] + x[3];
        x[0] == s / 2 && x[1] == s % 2
    })
}

/// `B(u, h1, h2, I1, I2)`: one iff `u = (I1+I2+h1)/2` and `h2 = (I1+I2+h1) mod 2`.
pub fn table_b() -> Tensor {
    predicate_table(5, |x| {
        let s = x[3] + x[4] + x[1];
        x[0] == s / 2 && x[2] == s % 2
    })
}

/// `C(u, h, o1, o2)`: one iff `o1 = u + h` and `o2 = u`. The row `u = h = 1`
/// would need `o1 = 2` and is zero.
pub fn table_c() -> Tensor {
    predicate_table(4, |x| x[2] == x[0] + x[1] && x[3] == x[0])
}

/// `D(u, h1, h2, o1, o2)`: with `u = 1` both outputs are one and `h` passes
/// through; with `u = 0` the first output takes `h1` and nothing passes on.
pub fn table_d() -> Tensor {
    predicate_table(5, |x| {
        let (u, h1, h2, o1, o2) = (x[0], x[1], x[2], x[3], x[4]);
        (u == 1 && o1 == 1 && o2 == 1 && h2 == h1) || (u == 0 && o1 == h1 && o2 == 0 && h2 == 0)
    })
}

/// Chain table `F_i` over `(o_i, o_{i+1})` for a weight vector `f` of length `n + 1`.
///
/// When `n = 2` the first and last tables coincide and the single vertex
/// carries `f0`, `f1` and `f2`.
pub fn table_chain(i: usize, f: &[Count], n: usize) -> Result<Tensor> {
    if f.len() != n + 1 {
        return Err(Error::IndexOutOfRange {
            index: f.len(),
            detail: format!("weight vector for n = {n} must have {} entries", n + 1),
        });
    }
    if n < 2 || i == 0 || i > n - 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            detail: format!("chain index must lie in 1..={}", n.saturating_sub(1)),
        });
    }
    let one = BigUint::from(1u8);
    // index = 2*o_i + o_{i+1}: 00, 01, 10, 11
    let mut table = vec![one.clone(), one.clone(), f[i].clone(), one];
    if i == 1 {
        table[0] = f[0].clone();
    }
    if i == n - 1 {
        table[3] = f[n].clone();
    }
    Tensor::dense(2, table)
}

/// Every named function that appears in a gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedFunction {
    A,
    B,
    C,
    D,
    Chain { i: usize, f: Vec<Count>, n: usize },
    Eq(usize),
    Neq2,
    Neq3,
    Or(usize),
    Xor3,
    TwoOf3,
}

impl NamedFunction {
    pub fn to_tensor(&self) -> Result<Tensor> {
        Ok(match self {
            NamedFunction::A => table_a(),
            NamedFunction::B => table_b(),
            NamedFunction::C => table_c(),
            NamedFunction::D => table_d(),
            NamedFunction::Chain { i, f, n } => table_chain(*i, f, *n)?,
            NamedFunction::Eq(k) => Tensor::equality(*k),
            NamedFunction::Neq2 => Tensor::symmetric_u64(&[0, 1, 0]),
            NamedFunction::Neq3 => Tensor::symmetric_u64(&[0, 1, 1, 0]),
            NamedFunction::Or(d) => Tensor::or(*d),
            NamedFunction::Xor3 => Tensor::symmetric_u64(&[0, 1, 0, 1]),
            NamedFunction::TwoOf3 => Tensor::symmetric_u64(&[0, 0, 1, 0]),
        })
    }
}
