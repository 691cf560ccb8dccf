use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sequences::Sequence;

/// Prefix lengths above this are refused; window sums fit in i64 regardless.
pub const MAX_CORRELATION_LEN: usize = 1 << 31;

/// C₂(S, N) with the window achieving it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrelationResult {
    pub value: u64,
    /// Window length minus one: the sum runs over n = 0..=M.
    pub m: usize,
    pub d1: usize,
    pub d2: usize,
}

impl CorrelationResult {
    /// Recomputes |Σ_{0≤n≤M} (−1)^{s_{n+d1}+s_{n+d2}}| directly.
    pub fn window_sum(&self, symbols: &[u8]) -> u64 {
        let mut sum = 0i64;
        for n in 0..=self.m {
            sum += if symbols[n + self.d1] == symbols[n + self.d2] { 1 } else { -1 };
        }
        sum.unsigned_abs()
    }
}

/// Best window for the single lag d2 − d1 = `lag`.
///
/// With prefix sums P_0 = 0, P_t = Σ_{n<t} v_n of v_n = (−1)^{s_n+s_{n+lag}},
/// a window is a pair a < b and its sum is P_b − P_a, so the best absolute
/// value is max P − min P. The earliest such pair starts at the first
/// occurrence of whichever extreme comes first.
pub fn correlation2_at_lag(symbols: &[u8], n: usize, lag: usize) -> CorrelationResult {
    assert!(lag >= 1 && lag < n && n <= symbols.len());
    let (mut sum, mut hi, mut lo) = (0i64, 0i64, 0i64);
    let (mut hi_at, mut lo_at) = (0usize, 0usize);
    for t in 0..n - lag {
        sum += if symbols[t] == symbols[t + lag] { 1 } else { -1 };
        if sum > hi {
            hi = sum;
            hi_at = t + 1;
        } else if sum < lo {
            lo = sum;
            lo_at = t + 1;
        }
    }
    let (a, b) = (hi_at.min(lo_at), hi_at.max(lo_at));
    CorrelationResult {
        value: (hi - lo) as u64,
        m: b - a - 1,
        d1: a,
        d2: a + lag,
    }
}

/// C₂(S, N): the largest |Σ_{0≤n≤M} (−1)^{s_{n+d1}+s_{n+d2}}| over
/// 0 ≤ d1 < d2 and d2 + M < N. Ties go to the smallest lag, then the smallest
/// d1, then the smallest M.
pub fn correlation2(seq: &Sequence, n: usize) -> Result<CorrelationResult> {
    seq.require_binary()?;
    seq.require_len(n, 2)?;
    if n > MAX_CORRELATION_LEN {
        return Err(Error::out_of_range(n, format!("2..={MAX_CORRELATION_LEN}")));
    }
    let s = seq.symbols();
    let per_lag: Vec<CorrelationResult> = (1..n).into_par_iter().map(|lag| correlation2_at_lag(s, n, lag)).collect();
    let mut best = per_lag[0];
    for r in &per_lag[1..] {
        if r.value > best.value {
            best = *r;
        }
    }
    Ok(best)
}

/// C₂ / √(N ln(N/2)), the scale expected for a random sequence.
pub fn random_benchmark_ratio(value: u64, n: usize) -> f64 {
    let n = n as f64;
    value as f64 / (n * (n / 2.0).ln()).sqrt()
}
