use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sequences::Sequence;

/// Blocks up to this length are counted in a dense table of size 2^k.
pub const DENSE_BLOCK_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq)]
enum Counts {
    Dense(Vec<u64>),
    Sparse(HashMap<Vec<u8>, u64>),
}

/// Occurrence counts of the length-k factors of a binary prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockStats {
    k: usize,
    total: u64,
    distinct: u64,
    max_deviation: f64,
    counts: Counts,
}

impl BlockStats {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of block occurrences, N − k + 1.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// p(k): number of distinct blocks.
    pub fn distinct(&self) -> u64 {
        self.distinct
    }

    /// max over all 2^k blocks b of |count_b / (N − k + 1) − 2^{−k}|, absent
    /// blocks included.
    pub fn max_deviation(&self) -> f64 {
        self.max_deviation
    }

    /// Occurrences of `block` (b_0 first).
    pub fn count(&self, block: &[u8]) -> u64 {
        if block.len() != self.k {
            return 0;
        }
        match &self.counts {
            Counts::Dense(v) => v[pack(block)],
            Counts::Sparse(m) => m.get(block).copied().unwrap_or(0),
        }
    }

    /// Blocks that occur, with counts, in lexicographic order.
    pub fn occurring(&self) -> Vec<(Vec<u8>, u64)> {
        let mut out: Vec<(Vec<u8>, u64)> = match &self.counts {
            Counts::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(key, &c)| (unpack(key, self.k), c))
                .collect(),
            Counts::Sparse(m) => m.iter().map(|(b, &c)| (b.clone(), c)).collect(),
        };
        out.sort();
        out
    }
}

fn pack(block: &[u8]) -> usize {
    block.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

fn unpack(key: usize, k: usize) -> Vec<u8> {
    (0..k).rev().map(|i| ((key >> i) & 1) as u8).collect()
}

/// Counts every length-k factor s_i..s_{i+k−1}, i ≤ N − k, of the length-N prefix.
pub fn subword_complexity(seq: &Sequence, n: usize, k: usize) -> Result<BlockStats> {
    seq.require_binary()?;
    seq.require_len(n, 1)?;
    if k < 1 || k > n {
        return Err(Error::out_of_range(k, format!("1..={n}")));
    }
    let s = &seq.symbols()[..n];
    let total = (n - k + 1) as u64;
    let counts = if k <= DENSE_BLOCK_LIMIT {
        let mask = (1usize << k) - 1;
        let mut table = vec![0u64; 1 << k];
        let mut key = pack(&s[..k - 1]);
        for &b in &s[k - 1..] {
            key = ((key << 1) | b as usize) & mask;
            table[key] += 1;
        }
        Counts::Dense(table)
    } else {
        let mut map: HashMap<Vec<u8>, u64> = HashMap::new();
        for w in s.windows(k) {
            *map.entry(w.to_vec()).or_insert(0) += 1;
        }
        Counts::Sparse(map)
    };
    let occurring: Vec<u64> = match &counts {
        Counts::Dense(v) => v.iter().copied().filter(|&c| c > 0).collect(),
        Counts::Sparse(m) => m.values().copied().collect(),
    };
    let distinct = occurring.len() as u64;
    let expected = 0.5f64.powi(k as i32);
    let mut max_deviation = occurring
        .iter()
        .map(|&c| (c as f64 / total as f64 - expected).abs())
        .fold(0.0, f64::max);
    // Some block is absent.
    if k < 64 && distinct < 1u64 << k {
        max_deviation = max_deviation.max(expected);
    }
    Ok(BlockStats {
        k,
        total,
        distinct,
        max_deviation,
        counts,
    })
}

/// Block statistics for k = 1..=k_max on the length-N prefix. Requires
/// k_max ≤ log₂(N) − 2 so that every block length has room to be sampled.
pub fn normality_deviation(seq: &Sequence, n: usize, k_max: usize) -> Result<Vec<BlockStats>> {
    seq.require_len(n, 1)?;
    let limit = (n.ilog2() as usize).saturating_sub(2);
    if k_max < 1 || k_max > limit {
        return Err(Error::out_of_range(k_max, format!("1..={limit} (log2(N) - 2)")));
    }
    (1..=k_max).map(|k| subword_complexity(seq, n, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let s = Sequence::binary(vec![0, 1, 1, 0]).unwrap();
        let b = subword_complexity(&s, 4, 2).unwrap();
        assert_eq!(b.distinct(), 3);
        assert_eq!(b.total(), 3);
        assert_eq!(b.count(&[0, 0]), 0);
        assert_eq!(b.count(&[1, 1]), 1);
        assert_eq!(
            b.occurring(),
            vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]
        );
        assert_eq!(subword_complexity(&s, 4, 4).unwrap().distinct(), 1);
        assert!(subword_complexity(&s, 4, 5).is_err());
        assert!(subword_complexity(&s, 4, 0).is_err());
    }

    #[test]
    fn dense_and_sparse_agree() {
        let bits: Vec<u8> = (0..500u32).map(|i| ((i * i + 7 * i) >> 3 & 1) as u8).collect();
        let s = Sequence::binary(bits.clone()).unwrap();
        for k in [DENSE_BLOCK_LIMIT, DENSE_BLOCK_LIMIT + 1] {
            let b = subword_complexity(&s, 500, k).unwrap();
            let mut set = std::collections::HashSet::new();
            for w in bits.windows(k) {
                set.insert(w);
            }
            assert_eq!(b.distinct() as usize, set.len());
            assert_eq!(b.occurring().iter().map(|(_, c)| c).sum::<u64>(), 500 - k as u64 + 1);
        }
    }

    #[test]
    fn alternating_frequencies() {
        let s = Sequence::binary((0..101).map(|i| (i % 2) as u8).collect()).unwrap();
        let stats = normality_deviation(&s, 101, 1).unwrap();
        assert!(stats[0].max_deviation() <= 1.0 / 101.0);
        assert!(normality_deviation(&s, 101, 5).is_err());
        assert!(normality_deviation(&s, 101, 4).is_ok());
    }
}
