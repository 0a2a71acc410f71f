//! Experimental verification of state-complexity lower bounds for simulating
//! two-way nondeterministic finite automata (2NFA) by one-way unambiguous
//! finite automata (UFA).
//!
//! The crate is organised bottom-up:
//!
//! * [`automata`]: one-way and two-way NFAs with exact membership tests.
//! * [`tables`]: prefix and suffix tables, their arc graphs, layer structure
//!   and the breakthrough / drop-down predicates between ordered tables.
//! * [`witness`]: the universal witness automaton `A_n`, its acceptance
//!   matrices `M(n)` and `K(n)`, and the `g_I` suffix-table family.
//! * [`crossing`]: extraction of prefix/suffix tables from the crossing
//!   behaviour of an arbitrary 2NFA and the rank-optimality check.
//! * [`linalg`]: exact rank over the rationals and over prime fields.
//! * [`combinatorics`]: Stirling numbers, the ordered-table count and the
//!   comparison bounds.
//! * [`verify`]: named self-checks used by the command-line `verify` command.
//!
//! States are `0..n` internally and printed as `1..=n`.

pub mod automata;
pub mod combinatorics;
pub mod crossing;
mod error;
pub mod linalg;
mod stateset;
pub mod tables;
pub mod verify;
pub mod witness;

pub use automata::{Direction, Moves, Nfa, TapeSymbol, TwoWayAutomaton, TwoWayNfa};
pub use combinatorics::{count_ordered_prefix_tables, stirling2, BigCount};
pub use error::{Error, Result};
pub use linalg::{rank_exact, rank_mod_p, IntMatrix, MERSENNE_31};
pub use stateset::StateSet;
pub use tables::{LayerSet, LayerStructure, PrefixTable, SuffixTable};
pub use witness::{BoolMatrix, GammaSymbol, LabeledMatrix, WitnessAutomaton};
