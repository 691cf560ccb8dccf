//! Maximum order complexity M(S, N).
//!
//! M(S, N) is the smallest M such that, inside the length-N prefix, every
//! block of M consecutive symbols determines the symbol that follows it. Two
//! engines compute it: a direct block-map check ([`NaiveEngine`]) and an
//! online suffix automaton ([`SuffixAutomatonEngine`]) that tracks the longest
//! right-special factor, i.e. the longest factor seen with both successors.
//! M is then one more than that length. The constant-prefix clause (all of
//! s_0..s_{N-2} equal) is handled separately and takes precedence in both.
//!
//! Only binary sequences are accepted.

mod naive;
mod suffix_automaton;

pub use naive::NaiveEngine;
pub use suffix_automaton::{SuffixAutomaton, SuffixAutomatonEngine};

use crate::error::{Error, Result};
use crate::sequences::Sequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MocResult {
    /// Prefix length N.
    pub n: usize,
    /// M(S, N).
    pub m: usize,
    /// Positions (i, j), i < j, whose length-(M-1) blocks agree while the
    /// following symbols differ. Absent for the constant-prefix clause.
    pub witness: Option<(usize, usize)>,
}

impl MocResult {
    /// Re-checks the witness against the symbols it was computed from.
    pub fn witness_is_valid(&self, symbols: &[u8]) -> bool {
        let Some((i, j)) = self.witness else {
            return true;
        };
        let l = self.m.saturating_sub(1);
        i < j
            && j + l < self.n
            && self.n <= symbols.len()
            && symbols[i..i + l] == symbols[j..j + l]
            && symbols[i + l] != symbols[j + l]
    }
}

/// A way of computing maximum order complexity.
pub trait MocEngine: Send + Sync {
    fn name(&self) -> &'static str;

    fn moc(&self, seq: &Sequence, n: usize) -> Result<MocResult>;

    /// M(S, N) at each checkpoint N. Checkpoints must be sorted.
    fn profile(&self, seq: &Sequence, checkpoints: &[usize]) -> Result<Vec<MocResult>> {
        check_checkpoints(seq, checkpoints)?;
        checkpoints.iter().map(|&n| self.moc(seq, n)).collect()
    }
}

/// Every built-in engine, fastest first.
pub fn engines() -> Vec<Box<dyn MocEngine>> {
    vec![Box::new(SuffixAutomatonEngine), Box::new(NaiveEngine)]
}

/// Looks up an engine by name (`suffix-automaton`/`fast` or `naive`).
pub fn engine(name: &str) -> Result<Box<dyn MocEngine>> {
    let name = if name == "fast" { "suffix-automaton" } else { name };
    engines()
        .into_iter()
        .find(|e| e.name() == name)
        .ok_or_else(|| Error::UnknownStrategy {
            kind: "moc engine",
            name: name.to_string(),
            available: engines().iter().map(|e| e.name()).collect::<Vec<_>>().join(", "),
        })
}

pub fn moc_naive(seq: &Sequence, n: usize) -> Result<MocResult> {
    NaiveEngine.moc(seq, n)
}

pub fn moc_fast(seq: &Sequence, n: usize) -> Result<MocResult> {
    SuffixAutomatonEngine.moc(seq, n)
}

pub fn moc_profile(seq: &Sequence, checkpoints: &[usize]) -> Result<Vec<MocResult>> {
    SuffixAutomatonEngine.profile(seq, checkpoints)
}

fn check_input(seq: &Sequence, n: usize) -> Result<()> {
    seq.require_binary()?;
    seq.require_len(n, 2)
}

fn check_checkpoints(seq: &Sequence, checkpoints: &[usize]) -> Result<()> {
    seq.require_binary()?;
    if checkpoints.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::precondition("checkpoints must be sorted"));
    }
    for &n in checkpoints {
        seq.require_len(n, 2)?;
    }
    Ok(())
}

/// The constant-prefix clause: if s_0..s_{N-2} all equal a, M is 0 when
/// s_{N-1} = a and N-1 otherwise.
fn degenerate_value(symbols: &[u8], n: usize) -> Option<usize> {
    let a = symbols[0];
    if symbols[..n - 1].iter().all(|&s| s == a) {
        Some(if symbols[n - 1] == a { 0 } else { n - 1 })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(bits: &[u8]) -> Sequence {
        Sequence::binary(bits.to_vec()).unwrap()
    }

    #[test]
    fn small_examples_on_both_engines() {
        for e in engines() {
            let r = e.moc(&seq(&[0, 1, 1, 0]), 4).unwrap();
            assert_eq!(r.m, 2, "{}", e.name());
            assert!(r.witness.is_some());
            assert!(r.witness_is_valid(&[0, 1, 1, 0]));
            assert_eq!(e.moc(&seq(&[0, 0, 0, 0]), 4).unwrap().m, 0);
            assert_eq!(e.moc(&seq(&[0, 0, 0, 1]), 4).unwrap().m, 3);
            assert_eq!(e.moc(&seq(&[1, 0]), 2).unwrap().m, 1);
        }
    }

    #[test]
    fn input_errors() {
        let s = seq(&[0, 1, 1]);
        assert!(moc_fast(&s, 1).is_err());
        assert!(moc_fast(&s, 4).is_err());
        let tern = Sequence::from_symbols(vec![0, 2, 1], 3).unwrap();
        assert_eq!(moc_naive(&tern, 3).unwrap_err(), Error::NonBinary(3));
        assert!(moc_profile(&s, &[3, 2]).is_err());
    }

    #[test]
    fn constant_profile_is_zero() {
        let s = seq(&[1; 40]);
        let prof = moc_profile(&s, &[2, 5, 17, 40]).unwrap();
        assert!(prof.iter().all(|r| r.m == 0));
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(engine("fast").unwrap().name(), "suffix-automaton");
        assert_eq!(engine("naive").unwrap().name(), "naive");
        assert!(matches!(engine("bogus"), Err(Error::UnknownStrategy { .. })));
    }
}
