//! Checkpoint lists: `8,16,100` or `pow2:A..B` for 2^A, ..., 2^B.

use anyhow::{bail, Context, Result};

pub fn parse_checkpoints(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    let mut out: Vec<usize> = if let Some(range) = text.strip_prefix("pow2:") {
        let (a, b) = range.split_once("..").context("expected pow2:A..B")?;
        let a: u32 = a.trim().parse().context("bad exponent in pow2:A..B")?;
        let b: u32 = b.trim().parse().context("bad exponent in pow2:A..B")?;
        if a > b || b >= usize::BITS - 1 {
            bail!("pow2:{a}..{b} is not an increasing range of usable exponents");
        }
        (a..=b).map(|e| 1usize << e).collect()
    } else {
        text.split(',')
            .map(|t| t.trim().parse::<usize>().with_context(|| format!("bad checkpoint {t:?}")))
            .collect::<Result<_>>()?
    };
    if out.is_empty() {
        bail!("no checkpoints given");
    }
    if out.contains(&0) {
        bail!("checkpoints must be positive");
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
