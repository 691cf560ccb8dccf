//! Test-only oracles written independently of the library code paths.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

/// Thue–Morse via the binary string.
pub fn tm_oracle(n: u128) -> u8 {
    (format!("{n:b}").chars().filter(|&c| c == '1').count() % 2) as u8
}

/// Overlapping occurrences of 1^k in the binary string of n, mod 2.
pub fn pattern_oracle(n: u128, k: usize) -> u8 {
    if n == 0 {
        return 0;
    }
    let s = format!("{n:b}");
    let block = "1".repeat(k);
    let hits = (0..=s.len().saturating_sub(k)).filter(|&i| s[i..].starts_with(&block)).count();
    (hits % 2) as u8
}

/// Definition of C₂ evaluated literally: every (d1, d2, M) with a running sum.
pub fn correlation_triple_loop(s: &[u8], n: usize) -> u64 {
    let mut best = 0i64;
    for d1 in 0..n {
        for d2 in d1 + 1..n {
            let mut sum = 0i64;
            for m in 0..n - d2 {
                sum += if s[m + d1] == s[m + d2] { 1 } else { -1 };
                best = best.max(sum.abs());
            }
        }
    }
    best as u64
}

fn mul_trunc(a: u32, b: u32, n: usize) -> u32 {
    let mut r = 0u32;
    for i in 0..n {
        if (a >> i) & 1 == 1 {
            r ^= b << i;
        }
    }
    if n == 32 {
        r
    } else {
        r & ((1u32 << n) - 1)
    }
}

/// Least total degree of a nonzero h with h(x, G) ≡ 0 mod x^N, by trying every
/// subset of the monomials of degree ≤ D for D = 1, 2, ... (Gray code order).
/// Returns 0 for the zero prefix and None past `max_degree`.
pub fn expansion_exhaustive(s: &[u8], n: usize, max_degree: usize) -> Option<usize> {
    assert!(n <= 24);
    let g = s[..n].iter().enumerate().fold(0u32, |acc, (i, &b)| acc | ((b as u32) << i));
    if g == 0 {
        return Some(0);
    }
    let mask = (1u32 << n) - 1;
    let mut powers = vec![1u32 & mask];
    for j in 1..=max_degree {
        let p = mul_trunc(powers[j - 1], g, n);
        powers.push(p);
    }
    for d in 1..=max_degree {
        let mut cols = Vec::new();
        for i in 0..=d {
            for p in &powers[..=d - i] {
                cols.push((p << i) & mask);
            }
        }
        let c = cols.len();
        let mut acc = 0u32;
        for step in 1u64..(1u64 << c) {
            acc ^= cols[step.trailing_zeros() as usize];
            if acc == 0 {
                return Some(d);
            }
        }
    }
    None
}
