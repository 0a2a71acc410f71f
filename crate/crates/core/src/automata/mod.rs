//! One-way and two-way nondeterministic finite automata.
//!
//! Two-way acceptance is decided by reachability in the finite configuration
//! graph on `⊢ w ⊣`: a string is accepted iff some configuration
//! `(p, |w| + 1)` with `p` accepting is reachable from an initial
//! configuration `(q0, 0)`. Looping computations never reach such a
//! configuration, so infinite computations need no special treatment.

mod json;
mod nfa;
mod twoway;

pub use json::{AutomatonFile, AutomatonKind, ParsedAutomaton, LEFT_MARKER_NAME, RIGHT_MARKER_NAME};
pub use nfa::Nfa;
pub use twoway::TwoWayNfa;

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::StateSet;

/// A cell of the two-way tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TapeSymbol<L> {
    LeftMarker,
    Letter(L),
    RightMarker,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn delta(self) -> i8 {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }

    pub fn from_delta(d: i64) -> Option<Self> {
        match d {
            -1 => Some(Direction::Left),
            1 => Some(Direction::Right),
            _ => None,
        }
    }
}

/// Successor states of one `(state, symbol)` pair, split by head direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Moves {
    pub left: StateSet,
    pub right: StateSet,
}

impl Moves {
    pub const NONE: Moves = Moves {
        left: StateSet::EMPTY,
        right: StateSet::EMPTY,
    };

    pub fn right(to: StateSet) -> Self {
        Moves {
            left: StateSet::EMPTY,
            right: to,
        }
    }

    pub fn left(to: StateSet) -> Self {
        Moves {
            left: to,
            right: StateSet::EMPTY,
        }
    }

    pub fn toward(&self, dir: Direction) -> StateSet {
        match dir {
            Direction::Left => self.left,
            Direction::Right => self.right,
        }
    }
}

/// Anything that behaves as a two-way NFA over letters of type `Letter`.
///
/// The transition relation is exposed as an oracle so that automata over
/// huge symbolic alphabets (the witness automaton) never materialise it.
pub trait TwoWayAutomaton {
    type Letter;

    fn state_count(&self) -> usize;
    fn initial(&self) -> StateSet;
    fn accepting(&self) -> StateSet;
    fn moves(&self, state: usize, symbol: TapeSymbol<&Self::Letter>) -> Moves;
}

/// A `(state, head position)` pair. Position `0` is `⊢` when the tape is a
/// full `⊢ w ⊣`; for a tape segment it is the segment's first cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    pub position: usize,
}

/// Visiting order of [`explore`]. The reachable set does not depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExploreOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
    /// Pops a uniformly random pending configuration, seeded.
    Shuffled(u64),
}

/// Result of exploring the configuration graph on a tape segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exploration {
    /// `visited[pos]` is the set of states reached at `pos`.
    pub visited: Vec<StateSet>,
    /// States entered by moving left off the first cell.
    pub exit_left: StateSet,
    /// States entered by moving right off the last cell.
    pub exit_right: StateSet,
}

/// Explores every configuration reachable from `seeds` on `tape`, recording
/// the states in which the head leaves the segment on either side.
pub fn explore<A: TwoWayAutomaton + ?Sized>(
    automaton: &A,
    tape: &[TapeSymbol<&A::Letter>],
    seeds: impl IntoIterator<Item = Configuration>,
    order: ExploreOrder,
) -> Exploration {
    let len = tape.len();
    let mut visited = vec![StateSet::EMPTY; len];
    let mut exit_left = StateSet::EMPTY;
    let mut exit_right = StateSet::EMPTY;
    let mut pending: VecDeque<Configuration> = VecDeque::new();
    let mut rng = match order {
        ExploreOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };

    for c in seeds {
        if c.position < len && !visited[c.position].contains(c.state) {
            visited[c.position].insert(c.state);
            pending.push_back(c);
        }
    }

    loop {
        let next = match order {
            ExploreOrder::BreadthFirst => pending.pop_front(),
            ExploreOrder::DepthFirst => pending.pop_back(),
            ExploreOrder::Shuffled(_) => {
                let rng = rng.as_mut().expect("seeded");
                pending.make_contiguous().shuffle(rng);
                pending.pop_back()
            }
        };
        let Some(Configuration { state, position }) = next else {
            break;
        };
        let moves = automaton.moves(state, tape[position]);
        for dir in [Direction::Left, Direction::Right] {
            let targets = moves.toward(dir);
            if targets.is_empty() {
                continue;
            }
            let target_pos = match dir {
                Direction::Left if position == 0 => {
                    exit_left |= targets;
                    continue;
                }
                Direction::Left => position - 1,
                Direction::Right if position + 1 == len => {
                    exit_right |= targets;
                    continue;
                }
                Direction::Right => position + 1,
            };
            let fresh = targets - visited[target_pos];
            visited[target_pos] |= fresh;
            for q in fresh {
                pending.push_back(Configuration {
                    state: q,
                    position: target_pos,
                });
            }
        }
    }

    Exploration {
        visited,
        exit_left,
        exit_right,
    }
}

/// Lays out `⊢ w ⊣`.
pub fn full_tape<L>(word: &[L]) -> Vec<TapeSymbol<&L>> {
    let mut tape = Vec::with_capacity(word.len() + 2);
    tape.push(TapeSymbol::LeftMarker);
    tape.extend(word.iter().map(TapeSymbol::Letter));
    tape.push(TapeSymbol::RightMarker);
    tape
}

/// Two-way acceptance by configuration-graph reachability.
pub fn twonfa_accepts<A: TwoWayAutomaton + ?Sized>(automaton: &A, word: &[A::Letter]) -> bool {
    twonfa_accepts_ordered(automaton, word, ExploreOrder::BreadthFirst)
}

/// [`twonfa_accepts`] with an explicit exploration order.
pub fn twonfa_accepts_ordered<A: TwoWayAutomaton + ?Sized>(
    automaton: &A,
    word: &[A::Letter],
    order: ExploreOrder,
) -> bool {
    let tape = full_tape(word);
    let seeds = automaton.initial().iter().map(|q| Configuration {
        state: q,
        position: 0,
    });
    let reach = explore(automaton, &tape, seeds, order);
    let end = tape.len() - 1;
    !(reach.visited[end] & automaton.accepting()).is_empty()
}
