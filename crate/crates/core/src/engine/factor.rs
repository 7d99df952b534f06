//! Sparse intermediate tensors keyed by packed edge assignments.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::tensor::{Count, Tensor};

pub(crate) type Key = Vec<u64>;

fn words(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
fn get(key: &[u64], i: usize) -> bool {
    key[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn set(key: &mut [u64], i: usize) {
    key[i / 64] |= 1 << (i % 64);
}

/// A tensor over named variables, storing only its nonzero entries.
///
/// Variable `i` of `vars` is bit `i` of the key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Factor {
    pub vars: Vec<usize>,
    pub table: HashMap<Key, Count>,
}

impl Factor {
    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// Factor of one vertex tensor. `port_vars[p]` names the variable on
    /// port `p`; a variable listed twice is a self-loop and is summed out.
    pub fn leaf(tensor: &Tensor, port_vars: &[usize]) -> Factor {
        let d = tensor.arity();
        debug_assert_eq!(d, port_vars.len());
        let mut vars = Vec::new();
        let mut loops = Vec::new();
        for (p, &v) in port_vars.iter().enumerate() {
            match port_vars[..p].iter().position(|&u| u == v) {
                Some(q) => {
                    loops.push((q, p));
                    vars.retain(|&(u, _)| u != v);
                }
                None => vars.push((v, p)),
            }
        }
        let w = words(vars.len());
        let mut table: HashMap<Key, Count> = HashMap::new();
        let mut add = |bits: &[bool], val: &Count| {
            if loops.iter().any(|&(a, b)| bits[a] != bits[b]) {
                return;
            }
            let mut key = vec![0u64; w];
            for (i, &(_, p)) in vars.iter().enumerate() {
                if bits[p] {
                    set(&mut key, i);
                }
            }
            *table.entry(key).or_insert_with(Count::zero) += val;
        };
        match tensor {
            Tensor::Symmetric { weights, .. } => {
                let mut bits = vec![false; d];
                for (k, val) in weights.iter().enumerate() {
                    if !val.is_zero() {
                        for_each_subset(d, k, &mut bits, &mut |b| add(b, val));
                    }
                }
            }
            Tensor::Dense { table: t, .. } => {
                for (idx, val) in t.iter().enumerate() {
                    if !val.is_zero() {
                        let bits: Vec<bool> = (0..d).map(|p| idx >> (d - 1 - p) & 1 == 1).collect();
                        add(&bits, val);
                    }
                }
            }
        }
        table.retain(|_, v| !v.is_zero());
        Factor {
            vars: vars.into_iter().map(|(v, _)| v).collect(),
            table,
        }
    }

    /// Product of two factors with every shared variable summed out.
    /// Fails once the result holds more than `2^cap` entries.
    pub fn merge(&self, other: &Factor, cap: u32) -> Result<Factor> {
        let pos_b: HashMap<usize, usize> = other.vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut shared_a = Vec::new();
        let mut shared_b = Vec::new();
        let mut keep_a = Vec::new();
        for (i, v) in self.vars.iter().enumerate() {
            match pos_b.get(v) {
                Some(&j) => {
                    shared_a.push(i);
                    shared_b.push(j);
                }
                None => keep_a.push(i),
            }
        }
        let keep_b: Vec<usize> = (0..other.vars.len()).filter(|j| !shared_b.contains(j)).collect();
        let vars: Vec<usize> = keep_a
            .iter()
            .map(|&i| self.vars[i])
            .chain(keep_b.iter().map(|&j| other.vars[j]))
            .collect();
        let (ws, wb, wo) = (words(shared_a.len()), words(keep_b.len()), words(vars.len()));
        let project = |key: &[u64], idx: &[usize], w: usize| {
            let mut out = vec![0u64; w];
            for (t, &i) in idx.iter().enumerate() {
                if get(key, i) {
                    set(&mut out, t);
                }
            }
            out
        };
        let mut index: HashMap<Key, Vec<(Key, &Count)>> = HashMap::new();
        for (kb, vb) in &other.table {
            index
                .entry(project(kb, &shared_b, ws))
                .or_default()
                .push((project(kb, &keep_b, wb), vb));
        }
        let limit = 1u128 << cap.min(100);
        let mut table: HashMap<Key, Count> = HashMap::new();
        for (ka, va) in &self.table {
            let Some(matches) = index.get(&project(ka, &shared_a, ws)) else {
                continue;
            };
            let base = project(ka, &keep_a, wo);
            for (kb, vb) in matches {
                let mut key = base.clone();
                for t in 0..keep_b.len() {
                    if get(kb, t) {
                        set(&mut key, keep_a.len() + t);
                    }
                }
                *table.entry(key).or_insert_with(Count::zero) += va * *vb;
                if table.len() as u128 > limit {
                    return Err(Error::RankOverflow {
                        rank: vars.len(),
                        cap: cap as usize,
                    });
                }
            }
        }
        Ok(Factor { vars, table })
    }

    /// Value at an assignment of `vars` (missing keys are zero).
    pub fn value(&self, bits: &[bool]) -> Count {
        let mut key = vec![0u64; words(self.vars.len())];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                set(&mut key, i);
            }
        }
        self.table.get(&key).cloned().unwrap_or_default()
    }
}

/// Calls `f` with every `d`-bit pattern of weight `k`.
fn for_each_subset(d: usize, k: usize, bits: &mut [bool], f: &mut dyn FnMut(&[bool])) {
    fn go(start: usize, left: usize, bits: &mut [bool], f: &mut dyn FnMut(&[bool])) {
        if left == 0 {
            f(bits);
            return;
        }
        for i in start..=bits.len() - left {
            bits[i] = true;
            go(i + 1, left - 1, bits, f);
            bits[i] = false;
        }
    }
    if k <= d {
        go(0, k, bits, f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaf_of_symmetric_matches_dense() {
        let t = Tensor::symmetric_u64(&[1, 2, 0, 3]);
        let a = Factor::leaf(&t, &[0, 1, 2]);
        let b = Factor::leaf(&t.to_dense(), &[0, 1, 2]);
        assert_eq!(a, b);
        assert_eq!(a.table.len(), 5);
        assert_eq!(a.value(&[true, true, true]), Count::from(3u8));
    }

    #[test]
    fn self_loop_is_traced() {
        // =_3 with ports 1 and 2 joined: [1, 1] on the remaining port
        let f = Factor::leaf(&Tensor::equality(3), &[7, 9, 9]);
        assert_eq!(f.vars, vec![7]);
        assert_eq!(f.value(&[false]), Count::from(1u8));
        assert_eq!(f.value(&[true]), Count::from(1u8));
    }

    #[test]
    fn merge_sums_shared() {
        let a = Factor::leaf(&Tensor::unit(2), &[0, 1]);
        let b = Factor::leaf(&Tensor::unit(2), &[1, 0]);
        let c = a.merge(&b, 30).unwrap();
        assert_eq!(c.rank(), 0);
        assert_eq!(c.value(&[]), Count::from(4u8));
        let wide = Factor::leaf(&Tensor::unit(4), &[0, 1, 2, 3]);
        let other = Factor::leaf(&Tensor::unit(2), &[4, 5]);
        assert!(matches!(wide.merge(&other, 5), Err(Error::RankOverflow { rank: 6, cap: 5 })));
    }
}
