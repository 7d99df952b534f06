//! Boolean-domain tensors with exact counts.
//!
//! A dense table is indexed by the port-ordered assignment read as a
//! big-endian binary number: port 0 is the most significant bit.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact nonnegative count.
pub type Count = BigUint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tensor {
    Dense { arity: usize, table: Vec<Count> },
    Symmetric { arity: usize, weights: Vec<Count> },
}

/// Bit of `port` in a dense index of the given arity.
#[inline]
pub fn port_bit(index: usize, arity: usize, port: usize) -> bool {
    (index >> (arity - 1 - port)) & 1 == 1
}

/// Packs port-ordered bits into a dense index.
pub fn encode_assignment(bits: &[bool]) -> usize {
    bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Unpacks a dense index into port-ordered bits.
pub fn decode_assignment(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|p| port_bit(index, arity, p)).collect()
}

fn counts<I: IntoIterator<Item = u64>>(values: I) -> Vec<Count> {
    values.into_iter().map(Count::from).collect()
}

impl Tensor {
    pub fn dense(arity: usize, table: Vec<Count>) -> Result<Self> {
        if arity >= usize::BITS as usize || table.len() != 1usize << arity {
            return Err(Error::BadTensor(format!(
                "dense table of arity {arity} has {} entries",
                table.len()
            )));
        }
        Ok(Tensor::Dense { arity, table })
    }

    pub fn symmetric(arity: usize, weights: Vec<Count>) -> Result<Self> {
        if weights.len() != arity + 1 {
            return Err(Error::BadTensor(format!(
                "symmetric tensor of arity {arity} has {} weights",
                weights.len()
            )));
        }
        Ok(Tensor::Symmetric { arity, weights })
    }

    /// Dense tensor from small integer entries. Panics on a length mismatch.
    pub fn dense_u64(arity: usize, table: &[u64]) -> Self {
        Self::dense(arity, counts(table.iter().copied())).expect("dense table length")
    }

    /// Symmetric tensor from small integer weights; the arity is `weights.len() - 1`.
    pub fn symmetric_u64(weights: &[u64]) -> Self {
        assert!(!weights.is_empty(), "symmetric tensor needs at least one weight");
        Tensor::Symmetric {
            arity: weights.len() - 1,
            weights: counts(weights.iter().copied()),
        }
    }

    /// `=_k`: one on the all-zero and all-one inputs.
    pub fn equality(k: usize) -> Self {
        let mut w = vec![0u64; k + 1];
        w[0] = 1;
        w[k] = 1;
        Self::symmetric_u64(&w)
    }

    /// `OR_d`: zero only on the all-zero input.
    pub fn or(d: usize) -> Self {
        let mut w = vec![1u64; d + 1];
        w[0] = 0;
        Self::symmetric_u64(&w)
    }

    /// Every entry one.
    pub fn unit(arity: usize) -> Self {
        Self::symmetric_u64(&vec![1; arity + 1])
    }

    pub fn arity(&self) -> usize {
        match self {
            Tensor::Dense { arity, .. } | Tensor::Symmetric { arity, .. } => *arity,
        }
    }

    /// Entry at a dense index (port 0 most significant).
    pub fn value(&self, index: usize) -> &Count {
        match self {
            Tensor::Dense { table, .. } => &table[index],
            Tensor::Symmetric { weights, .. } => &weights[index.count_ones() as usize],
        }
    }

    pub fn value_at(&self, bits: &[bool]) -> &Count {
        debug_assert_eq!(bits.len(), self.arity());
        self.value(encode_assignment(bits))
    }

    pub fn is_symmetric_variant(&self) -> bool {
        matches!(self, Tensor::Symmetric { .. })
    }

    /// Weight vector if the tensor's value depends only on Hamming weight.
    pub fn symmetric_weights(&self) -> Option<Vec<Count>> {
        match self {
            Tensor::Symmetric { weights, .. } => Some(weights.clone()),
            Tensor::Dense { arity, table } => {
                let mut w: Vec<Option<&Count>> = vec![None; arity + 1];
                for (i, v) in table.iter().enumerate() {
                    let slot = &mut w[i.count_ones() as usize];
                    match slot {
                        Some(prev) if *prev != v => return None,
                        _ => *slot = Some(v),
                    }
                }
                Some(w.into_iter().map(|v| v.cloned().unwrap_or_default()).collect())
            }
        }
    }

    pub fn to_dense(&self) -> Tensor {
        match self {
            Tensor::Dense { .. } => self.clone(),
            Tensor::Symmetric { arity, weights } => Tensor::Dense {
                arity: *arity,
                table: (0..1usize << arity)
                    .map(|i| weights[i.count_ones() as usize].clone())
                    .collect(),
            },
        }
    }

    pub fn table_len(&self) -> usize {
        1usize << self.arity()
    }

    /// Entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = &Count> + '_ {
        (0..self.table_len()).map(move |i| self.value(i))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Tensor::Dense { table, .. } => table.iter().all(Zero::is_zero),
            Tensor::Symmetric { weights, .. } => weights.iter().all(Zero::is_zero),
        }
    }

    /// True iff every entry is 0 or 1.
    pub fn is_boolean(&self) -> bool {
        let one = Count::one();
        self.entries().all(|v| v.is_zero() || *v == one)
    }
}

/// Expands a symmetric tensor to its dense table.
pub fn symmetric_to_dense(t: &Tensor) -> Tensor {
    t.to_dense()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t: &Tensor) -> Vec<u64> {
        t.entries().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn symmetric_expansions() {
        assert_eq!(table(&symmetric_to_dense(&Tensor::symmetric_u64(&[1, 0, 1]))), [1, 0, 0, 1]);
        assert_eq!(
            table(&symmetric_to_dense(&Tensor::symmetric_u64(&[0, 1, 0, 1]))),
            [0, 1, 1, 0, 1, 0, 0, 1]
        );
        assert_eq!(table(&symmetric_to_dense(&Tensor::symmetric_u64(&[7]))), [7]);
    }

    #[test]
    fn index_roundtrip() {
        for arity in 0..=6 {
            for i in 0..1usize << arity {
                assert_eq!(encode_assignment(&decode_assignment(i, arity)), i);
            }
        }
        assert_eq!(decode_assignment(0b100, 3), [true, false, false]);
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(Tensor::dense(2, counts([1, 2, 3])).is_err());
        assert!(Tensor::symmetric(2, counts([1, 2])).is_err());
    }

    #[test]
    fn detects_hidden_symmetry() {
        let xor = Tensor::dense_u64(2, &[0, 1, 1, 0]);
        assert_eq!(xor.symmetric_weights().unwrap(), counts([0, 1, 0]));
        assert!(Tensor::dense_u64(2, &[0, 1, 0, 0]).symmetric_weights().is_none());
    }
}
