use super::{check_checkpoints, check_input, degenerate_value, MocEngine, MocResult};
use crate::error::Result;
use crate::sequences::Sequence;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct State {
    len: u32,
    link: u32,
    next: [u32; 2],
    // A position p with s_p = c such that this state's strings end at p - 1.
    succ_pos: [u32; 2],
}

/// Online suffix automaton over {0, 1} that maintains the longest
/// right-special factor of the text read so far.
///
/// Transitions are only ever added or redirected, and state lengths never
/// change, so the maximum length over states with both outgoing transitions
/// can be updated in O(1) per new transition.
#[derive(Clone, Debug)]
pub struct SuffixAutomaton {
    states: Vec<State>,
    last: u32,
    text_len: usize,
    // Longest right-special factor: (length, position followed by 0, by 1).
    best: Option<(u32, u32, u32)>,
}

impl Default for SuffixAutomaton {
    fn default() -> Self {
        Self::new()
    }
}

impl SuffixAutomaton {
    pub fn new() -> Self {
        SuffixAutomaton {
            states: vec![State {
                len: 0,
                link: NONE,
                next: [NONE; 2],
                succ_pos: [NONE; 2],
            }],
            last: 0,
            text_len: 0,
            best: None,
        }
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut sa = Self::new();
        sa.states.reserve(2 * n);
        sa
    }

    pub fn len(&self) -> usize {
        self.text_len
    }

    pub fn is_empty(&self) -> bool {
        self.text_len == 0
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Length of the longest factor followed by both 0 and 1, if any.
    pub fn longest_right_special(&self) -> Option<usize> {
        self.best.map(|(l, _, _)| l as usize)
    }

    /// Start positions (i < j) of two occurrences of the longest
    /// right-special factor with different successors.
    pub fn right_special_witness(&self) -> Option<(usize, usize)> {
        self.best.map(|(l, p0, p1)| {
            let a = (p0 - l) as usize;
            let b = (p1 - l) as usize;
            (a.min(b), a.max(b))
        })
    }

    /// Number of distinct nonempty factors of the text read so far.
    pub fn distinct_factors(&self) -> u64 {
        self.states
            .iter()
            .skip(1)
            .map(|s| (s.len - self.states[s.link as usize].len) as u64)
            .sum()
    }

    fn note(&mut self, x: u32) {
        let st = &self.states[x as usize];
        if st.next[0] != NONE && st.next[1] != NONE && self.best.is_none_or(|(l, _, _)| st.len > l) {
            self.best = Some((st.len, st.succ_pos[0], st.succ_pos[1]));
        }
    }

    /// Appends one symbol (0 or 1).
    pub fn push(&mut self, symbol: u8) {
        let c = symbol as usize;
        debug_assert!(c < 2);
        let pos = self.text_len as u32;
        let cur = self.states.len() as u32;
        self.states.push(State {
            len: self.states[self.last as usize].len + 1,
            link: NONE,
            next: [NONE; 2],
            succ_pos: [NONE; 2],
        });
        let mut x = self.last;
        while x != NONE && self.states[x as usize].next[c] == NONE {
            let st = &mut self.states[x as usize];
            st.next[c] = cur;
            st.succ_pos[c] = pos;
            let link = st.link;
            self.note(x);
            x = link;
        }
        if x == NONE {
            self.states[cur as usize].link = 0;
        } else {
            let q = self.states[x as usize].next[c];
            if self.states[x as usize].len + 1 == self.states[q as usize].len {
                self.states[cur as usize].link = q;
            } else {
                let clone = self.states.len() as u32;
                let mut cloned = self.states[q as usize].clone();
                cloned.len = self.states[x as usize].len + 1;
                self.states.push(cloned);
                while x != NONE && self.states[x as usize].next[c] == q {
                    self.states[x as usize].next[c] = clone;
                    x = self.states[x as usize].link;
                }
                self.states[q as usize].link = clone;
                self.states[cur as usize].link = clone;
                self.note(clone);
            }
        }
        self.last = cur;
        self.text_len += 1;
    }
}

/// Linear-time engine built on [`SuffixAutomaton`]; profiles are computed in
/// a single online pass.
pub struct SuffixAutomatonEngine;

impl SuffixAutomatonEngine {
    fn result(sa: &SuffixAutomaton, symbols: &[u8], n: usize) -> MocResult {
        if let Some(m) = degenerate_value(symbols, n) {
            return MocResult { n, m, witness: None };
        }
        let l = sa
            .longest_right_special()
            .expect("a non-constant prefix has a right-special empty factor");
        MocResult {
            n,
            m: l + 1,
            witness: sa.right_special_witness(),
        }
    }
}

impl MocEngine for SuffixAutomatonEngine {
    fn name(&self) -> &'static str {
        "suffix-automaton"
    }

    fn moc(&self, seq: &Sequence, n: usize) -> Result<MocResult> {
        check_input(seq, n)?;
        let s = seq.symbols();
        let mut sa = SuffixAutomaton::with_capacity(n);
        for &c in &s[..n] {
            sa.push(c);
        }
        Ok(Self::result(&sa, s, n))
    }

    fn profile(&self, seq: &Sequence, checkpoints: &[usize]) -> Result<Vec<MocResult>> {
        check_checkpoints(seq, checkpoints)?;
        let s = seq.symbols();
        let mut sa = SuffixAutomaton::with_capacity(checkpoints.last().copied().unwrap_or(0));
        let mut out = Vec::with_capacity(checkpoints.len());
        for &n in checkpoints {
            while sa.len() < n {
                sa.push(s[sa.len()]);
            }
            out.push(Self::result(&sa, s, n));
        }
        Ok(out)
    }
}
