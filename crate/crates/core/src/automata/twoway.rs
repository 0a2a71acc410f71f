use super::{
    twonfa_accepts, Direction, Moves, Nfa, TapeSymbol, TwoWayAutomaton,
};
use crate::{Error, Result, StateSet};

/// A two-way NFA over symbols `0..alphabet_size` plus the end-markers.
///
/// Invariants enforced on every transition: no left move from `⊢`, and no
/// transition at `⊣` out of an accepting state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoWayNfa {
    state_count: usize,
    alphabet_size: usize,
    initial: StateSet,
    accepting: StateSet,
    // delta[q * (alphabet_size + 2) + column], columns: letters, ⊢, ⊣
    delta: Vec<Moves>,
}

impl TwoWayNfa {
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
        Ok(TwoWayNfa {
            state_count,
            alphabet_size,
            initial,
            accepting,
            delta: vec![Moves::NONE; state_count * (alphabet_size + 2)],
        })
    }

    fn column(&self, symbol: TapeSymbol<usize>) -> usize {
        match symbol {
            TapeSymbol::Letter(a) => a,
            TapeSymbol::LeftMarker => self.alphabet_size,
            TapeSymbol::RightMarker => self.alphabet_size + 1,
        }
    }

    pub fn add_transition(
        &mut self,
        from: usize,
        symbol: TapeSymbol<usize>,
        to: usize,
        dir: Direction,
    ) -> Result<()> {
        if from >= self.state_count || to >= self.state_count {
            return Err(Error::argument("transition state out of range"));
        }
        match symbol {
            TapeSymbol::Letter(a) if a >= self.alphabet_size => {
                return Err(Error::argument("transition symbol out of range"));
            }
            TapeSymbol::LeftMarker if dir == Direction::Left => {
                return Err(Error::argument("no left move is allowed from the left end-marker"));
            }
            TapeSymbol::RightMarker if self.accepting.contains(from) => {
                return Err(Error::argument(format!(
                    "accepting state {} must have no transitions at the right end-marker",
                    from + 1
                )));
            }
            _ => {}
        }
        let col = self.column(symbol);
        let cell = &mut self.delta[from * (self.alphabet_size + 2) + col];
        match dir {
            Direction::Left => cell.left.insert(to),
            Direction::Right => cell.right.insert(to),
        }
        Ok(())
    }

    pub fn with_transition(
        mut self,
        from: usize,
        symbol: TapeSymbol<usize>,
        to: usize,
        dir: Direction,
    ) -> Result<Self> {
        self.add_transition(from, symbol, to, dir)?;
        Ok(self)
    }

    /// The one-way automaton read left to right: step off `⊢` in place, then
    /// follow `a` on every letter. Acceptance is unchanged.
    pub fn from_one_way(a: &Nfa) -> Self {
        let mut b = TwoWayNfa::new(a.state_count(), a.alphabet_size(), a.initial(), a.accepting())
            .expect("an NFA has a valid state count and alphabet");
        for q in 0..a.state_count() {
            b.add_transition(q, TapeSymbol::LeftMarker, q, Direction::Right).unwrap();
            for s in 0..a.alphabet_size() {
                for r in a.successors(q, s) {
                    b.add_transition(q, TapeSymbol::Letter(s), r, Direction::Right).unwrap();
                }
            }
        }
        b
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// All transitions as `(from, symbol, to, direction)`.
    pub fn transitions(&self) -> Vec<(usize, TapeSymbol<usize>, usize, Direction)> {
        let mut out = Vec::new();
        let symbols = (0..self.alphabet_size)
            .map(TapeSymbol::Letter)
            .chain([TapeSymbol::LeftMarker, TapeSymbol::RightMarker]);
        for q in 0..self.state_count {
            for sym in symbols.clone() {
                let moves = self.delta[q * (self.alphabet_size + 2) + self.column(sym)];
                for dir in [Direction::Left, Direction::Right] {
                    for r in moves.toward(dir) {
                        out.push((q, sym, r, dir));
                    }
                }
            }
        }
        out
    }

    /// Membership with symbol validation.
    pub fn accepts(&self, word: &[usize]) -> Result<bool> {
        if let Some(a) = word.iter().find(|&&a| a >= self.alphabet_size) {
            return Err(Error::Input(format!(
                "symbol {a} outside alphabet of size {}",
                self.alphabet_size
            )));
        }
        Ok(twonfa_accepts(self, word))
    }
}

impl TwoWayAutomaton for TwoWayNfa {
    type Letter = usize;

    fn state_count(&self) -> usize {
        self.state_count
    }

    fn initial(&self) -> StateSet {
        self.initial
    }

    fn accepting(&self) -> StateSet {
        self.accepting
    }

    fn moves(&self, state: usize, symbol: TapeSymbol<&usize>) -> Moves {
        let symbol = match symbol {
            TapeSymbol::Letter(&a) => TapeSymbol::Letter(a),
            TapeSymbol::LeftMarker => TapeSymbol::LeftMarker,
            TapeSymbol::RightMarker => TapeSymbol::RightMarker,
        };
        self.delta[state * (self.alphabet_size + 2) + self.column(symbol)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{twonfa_accepts_ordered, ExploreOrder};
    use proptest::prelude::*;

    use Direction::{Left, Right};
    use TapeSymbol::{Letter, LeftMarker, RightMarker};

    fn set(states: &[usize]) -> StateSet {
        states.iter().copied().collect()
    }

    fn forward_only() -> TwoWayNfa {
        TwoWayNfa::new(1, 2, set(&[0]), set(&[0]))
            .unwrap()
            .with_transition(0, LeftMarker, 0, Right)
            .unwrap()
            .with_transition(0, Letter(0), 0, Right)
            .unwrap()
            .with_transition(0, Letter(1), 0, Right)
            .unwrap()
    }

    #[test]
    fn forward_sweep_accepts_everything() {
        let a = forward_only();
        for w in [vec![], vec![0], vec![1, 0, 1, 1]] {
            assert!(a.accepts(&w).unwrap());
        }
    }

    #[test]
    fn stuck_at_left_marker_rejects() {
        let a = TwoWayNfa::new(2, 1, set(&[0]), set(&[0, 1]))
            .unwrap()
            .with_transition(0, Letter(0), 1, Right)
            .unwrap();
        for w in [vec![], vec![0], vec![0, 0]] {
            assert!(!a.accepts(&w).unwrap());
        }
    }

    #[test]
    fn invariants_rejected_at_construction() {
        let mut a = TwoWayNfa::new(2, 1, set(&[0]), set(&[1])).unwrap();
        assert!(a.add_transition(0, LeftMarker, 0, Left).is_err());
        assert!(a.add_transition(1, RightMarker, 0, Left).is_err());
        assert!(a.add_transition(0, RightMarker, 0, Left).is_ok());
        assert!(a.add_transition(0, Letter(1), 0, Left).is_err());
        assert!(a.add_transition(2, Letter(0), 0, Left).is_err());
        assert!(TwoWayNfa::new(0, 1, set(&[]), set(&[])).is_err());
        assert!(matches!(a.accepts(&[1]), Err(Error::Input(_))));
    }

    /// Accepts strings of even length by bouncing: sweeps right to ⊣ then
    /// walks back to ⊢ counting parity, then sweeps right again.
    #[test]
    fn back_and_forth_parity() {
        // 0: first sweep right; at ⊣ turn into 1 (even so far) going left.
        // 1/2: leftward parity counters; at ⊢ in 1 go right in 3 (accepting sweep).
        let a = TwoWayNfa::new(4, 1, set(&[0]), set(&[3]))
            .unwrap()
            .with_transition(0, LeftMarker, 0, Right)
            .unwrap()
            .with_transition(0, Letter(0), 0, Right)
            .unwrap()
            .with_transition(0, RightMarker, 1, Left)
            .unwrap()
            .with_transition(1, Letter(0), 2, Left)
            .unwrap()
            .with_transition(2, Letter(0), 1, Left)
            .unwrap()
            .with_transition(1, LeftMarker, 3, Right)
            .unwrap()
            .with_transition(3, Letter(0), 3, Right)
            .unwrap();
        for len in 0..8 {
            let w = vec![0; len];
            assert_eq!(a.accepts(&w).unwrap(), len % 2 == 0, "len {len}");
        }
    }

    #[test]
    fn infinite_loops_do_not_accept() {
        let a = TwoWayNfa::new(1, 1, set(&[0]), set(&[0]))
            .unwrap()
            .with_transition(0, LeftMarker, 0, Right)
            .unwrap()
            .with_transition(0, Letter(0), 0, Left)
            .unwrap();
        assert!(!a.accepts(&[0]).unwrap());
        assert!(a.accepts(&[]).unwrap());
    }

    fn arb_two_way() -> impl Strategy<Value = TwoWayNfa> {
        (1usize..=3, 1usize..=2).prop_flat_map(|(n, k)| {
            let cells = n * (k + 2) * n * 2;
            (
                Just(n),
                Just(k),
                1u32..(1 << n),
                0u32..(1 << n),
                proptest::collection::vec(any::<bool>(), cells),
            )
                .prop_map(|(n, k, init, acc, bits)| {
                    let mut a =
                        TwoWayNfa::new(n, k, StateSet::from_bits(init), StateSet::from_bits(acc))
                            .unwrap();
                    let symbols: Vec<TapeSymbol<usize>> = (0..k)
                        .map(Letter)
                        .chain([LeftMarker, RightMarker])
                        .collect();
                    let mut it = bits.into_iter();
                    for q in 0..n {
                        for &s in &symbols {
                            for r in 0..n {
                                for d in [Left, Right] {
                                    if it.next().unwrap() {
                                        let _ = a.add_transition(q, s, r, d);
                                    }
                                }
                            }
                        }
                    }
                    a
                })
        })
    }

    proptest! {
        #[test]
        fn exploration_order_is_irrelevant(
            a in arb_two_way(),
            w in proptest::collection::vec(0usize..2, 0..6),
            seed in any::<u64>(),
        ) {
            let w: Vec<usize> = w.into_iter().map(|s| s % a.alphabet_size()).collect();
            let bfs = twonfa_accepts_ordered(&a, &w, ExploreOrder::BreadthFirst);
            prop_assert_eq!(bfs, twonfa_accepts_ordered(&a, &w, ExploreOrder::DepthFirst));
            prop_assert_eq!(bfs, twonfa_accepts_ordered(&a, &w, ExploreOrder::Shuffled(seed)));
        }
    }
}
