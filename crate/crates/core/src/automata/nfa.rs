use std::collections::VecDeque;

use crate::{Error, Result, StateSet};

/// A one-way NFA over symbols `0..alphabet_size`, without ε-moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    state_count: usize,
    alphabet_size: usize,
    initial: StateSet,
    accepting: StateSet,
    // delta[q * alphabet_size + a]
    delta: Vec<StateSet>,
}

impl Nfa {
    /// An automaton with no transitions.
    pub fn new(
        state_count: usize,
        alphabet_size: usize,
        initial: StateSet,
        accepting: StateSet,
    ) -> Result<Self> {
        if state_count == 0 || state_count > StateSet::MAX_STATES {
            return Err(Error::argument(format!(
                "state count must be in 1..={}",
                StateSet::MAX_STATES
            )));
        }
        if alphabet_size == 0 {
            return Err(Error::argument("alphabet must be nonempty"));
        }
        if !initial.fits(state_count) || !accepting.fits(state_count) {
            return Err(Error::argument("initial/accepting state out of range"));
        }
        Ok(Nfa {
            state_count,
            alphabet_size,
            initial,
            accepting,
            delta: vec![StateSet::EMPTY; state_count * alphabet_size],
        })
    }

    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) -> Result<()> {
        if from >= self.state_count || to >= self.state_count {
            return Err(Error::argument("transition state out of range"));
        }
        if symbol >= self.alphabet_size {
            return Err(Error::argument("transition symbol out of range"));
        }
        self.delta[from * self.alphabet_size + symbol].insert(to);
        Ok(())
    }

    pub fn with_transition(mut self, from: usize, symbol: usize, to: usize) -> Result<Self> {
        self.add_transition(from, symbol, to)?;
        Ok(self)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> StateSet {
        self.initial
    }

    pub fn accepting(&self) -> StateSet {
        self.accepting
    }

    pub fn successors(&self, state: usize, symbol: usize) -> StateSet {
        self.delta[state * self.alphabet_size + symbol]
    }

    fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.alphabet_size) {
            Some(a) => Err(Error::Input(format!(
                "symbol {a} outside alphabet of size {}",
                self.alphabet_size
            ))),
            None => Ok(()),
        }
    }

    /// Membership by subset propagation.
    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        self.check_word(word)?;
        let mut current = self.initial;
        for &a in word {
            let mut next = StateSet::EMPTY;
            for q in current {
                next |= self.successors(q, a);
            }
            current = next;
            if current.is_empty() {
                return Ok(false);
            }
        }
        Ok(!(current & self.accepting).is_empty())
    }

    /// Number of accepting computations on `word`, saturated at `cap`.
    pub fn count_accepting_paths(&self, word: &[usize], cap: u64) -> Result<u64> {
        self.check_word(word)?;
        if cap == 0 {
            return Err(Error::argument("cap must be positive"));
        }
        let mut counts = vec![0u64; self.state_count];
        for q in self.initial {
            counts[q] = 1;
        }
        for &a in word {
            let mut next = vec![0u64; self.state_count];
            for (q, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for r in self.successors(q, a) {
                    next[r] = next[r].saturating_add(c).min(cap);
                }
            }
            counts = next;
        }
        let total = self
            .accepting
            .iter()
            .fold(0u64, |acc, q| acc.saturating_add(counts[q]).min(cap));
        Ok(total)
    }

    /// Decides unambiguity exactly: the automaton is ambiguous iff the
    /// self-product has a pair `(p, q)`, `p != q`, that is reachable from
    /// `initial × initial` and co-reachable to `accepting × accepting`.
    pub fn is_unambiguous(&self) -> bool {
        let n = self.state_count;
        let idx = |p: usize, q: usize| p * n + q;

        let mut reach = vec![false; n * n];
        let mut queue = VecDeque::new();
        for p in self.initial {
            for q in self.initial {
                reach[idx(p, q)] = true;
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            for a in 0..self.alphabet_size {
                for p2 in self.successors(p, a) {
                    for q2 in self.successors(q, a) {
                        if !reach[idx(p2, q2)] {
                            reach[idx(p2, q2)] = true;
                            queue.push_back((p2, q2));
                        }
                    }
                }
            }
        }

        // Backward search over the reversed product.
        let mut pred: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n * n];
        for p in 0..n {
            for q in 0..n {
                for a in 0..self.alphabet_size {
                    for p2 in self.successors(p, a) {
                        for q2 in self.successors(q, a) {
                            pred[idx(p2, q2)].push((p, q));
                        }
                    }
                }
            }
        }
        let mut coreach = vec![false; n * n];
        for p in self.accepting {
            for q in self.accepting {
                coreach[idx(p, q)] = true;
                queue.push_back((p, q));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            for &(p0, q0) in &pred[idx(p, q)] {
                if !coreach[idx(p0, q0)] {
                    coreach[idx(p0, q0)] = true;
                    queue.push_back((p0, q0));
                }
            }
        }

        !(0..n).any(|p| (0..n).any(|q| p != q && reach[idx(p, q)] && coreach[idx(p, q)]))
    }
}
