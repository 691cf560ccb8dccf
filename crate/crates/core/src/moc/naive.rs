use std::collections::HashMap;

use super::{check_input, degenerate_value, MocEngine, MocResult};
use crate::error::Result;
use crate::sequences::Sequence;

/// Reference engine: tries M = 1, 2, ... and checks that the M-block to
/// successor map is a function. Quadratic or worse; meant for cross-checks.
pub struct NaiveEngine;

impl MocEngine for NaiveEngine {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn moc(&self, seq: &Sequence, n: usize) -> Result<MocResult> {
        check_input(seq, n)?;
        let s = &seq.symbols()[..n];
        if let Some(m) = degenerate_value(s, n) {
            return Ok(MocResult { n, m, witness: None });
        }
        let mut witness = conflict(s, 0);
        for m in 1..n {
            match conflict(s, m) {
                None => return Ok(MocResult { n, m, witness }),
                found => witness = found,
            }
        }
        unreachable!("M = N-1 leaves a single block and cannot conflict")
    }
}

/// First pair i < j (in scan order) of equal length-m blocks whose successors
/// differ, with both successors inside the prefix.
fn conflict(s: &[u8], m: usize) -> Option<(usize, usize)> {
    let mut seen: HashMap<&[u8], (u8, usize)> = HashMap::new();
    for j in 0..s.len() - m {
        let next = s[j + m];
        match seen.get(&s[j..j + m]) {
            Some(&(succ, i)) if succ != next => return Some((i, j)),
            Some(_) => {}
            None => {
                seen.insert(&s[j..j + m], (next, j));
            }
        }
    }
    None
}
