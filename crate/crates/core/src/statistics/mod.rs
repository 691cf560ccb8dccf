//! Correlation of order 2, subword complexity and block frequencies.

mod blocks;
mod correlation;

pub use blocks::{normality_deviation, subword_complexity, BlockStats, DENSE_BLOCK_LIMIT};
pub use correlation::{correlation2, correlation2_at_lag, random_benchmark_ratio, CorrelationResult, MAX_CORRELATION_LEN};
