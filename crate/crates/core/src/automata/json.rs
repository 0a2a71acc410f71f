//! JSON automaton files.
//!
//! ```json
//! {"type": "2nfa", "states": 2, "alphabet": ["a", "b"],
//!  "initial": [1], "accepting": [2],
//!  "transitions": [{"from": 1, "symbol": "⊢", "to": 1, "dir": 1}]}
//! ```
//!
//! States are 1-based. `"dir"` is required for `2nfa` and forbidden for `nfa`.
//! Unknown fields are rejected.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Direction, Nfa, TapeSymbol, TwoWayNfa};
use crate::{Error, Result, StateSet};

pub const LEFT_MARKER_NAME: &str = "⊢";
pub const RIGHT_MARKER_NAME: &str = "⊣";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutomatonKind {
    #[serde(rename = "nfa")]
    OneWay,
    #[serde(rename = "2nfa")]
    TwoWay,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAutomaton {
    #[serde(rename = "type")]
    kind: AutomatonKind,
    states: usize,
    alphabet: Vec<String>,
    initial: Vec<usize>,
    accepting: Vec<usize>,
    transitions: Vec<RawTransition>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransition {
    from: usize,
    symbol: String,
    to: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    dir: Option<i64>,
}

/// A parsed automaton together with its symbol names.
#[derive(Clone, Debug)]
pub struct AutomatonFile {
    pub alphabet: Vec<String>,
    pub automaton: ParsedAutomaton,
}

#[derive(Clone, Debug)]
pub enum ParsedAutomaton {
    OneWay(Nfa),
    TwoWay(TwoWayNfa),
}

fn state_set(states: &[usize], n: usize, what: &str) -> Result<StateSet> {
    states
        .iter()
        .map(|&q| {
            if q == 0 || q > n {
                Err(Error::parse(format!("{what} state {q} outside 1..={n}")))
            } else {
                Ok(q - 1)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().collect())
}

impl AutomatonFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawAutomaton = serde_json::from_str(text)?;
        let n = raw.states;
        let mut index = HashMap::new();
        for (i, name) in raw.alphabet.iter().enumerate() {
            if name == LEFT_MARKER_NAME || name == RIGHT_MARKER_NAME {
                return Err(Error::parse(format!("`{name}` is reserved for end-markers")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::parse(format!("duplicate symbol `{name}`")));
            }
        }
        let initial = state_set(&raw.initial, n, "initial")?;
        let accepting = state_set(&raw.accepting, n, "accepting")?;
        let endpoint = |q: usize| -> Result<usize> {
            if q == 0 || q > n {
                Err(Error::parse(format!("transition state {q} outside 1..={n}")))
            } else {
                Ok(q - 1)
            }
        };

        let automaton = match raw.kind {
            AutomatonKind::OneWay => {
                let mut a = Nfa::new(n, raw.alphabet.len(), initial, accepting)?;
                for t in &raw.transitions {
                    if t.dir.is_some() {
                        return Err(Error::parse("one-way transitions take no `dir`"));
                    }
                    let sym = *index
                        .get(&t.symbol)
                        .ok_or_else(|| Error::parse(format!("unknown symbol `{}`", t.symbol)))?;
                    a.add_transition(endpoint(t.from)?, sym, endpoint(t.to)?)?;
                }
                ParsedAutomaton::OneWay(a)
            }
            AutomatonKind::TwoWay => {
                let mut a = TwoWayNfa::new(n, raw.alphabet.len(), initial, accepting)?;
                for t in &raw.transitions {
                    let dir = t
                        .dir
                        .and_then(Direction::from_delta)
                        .ok_or_else(|| Error::parse("two-way transitions need `dir` of -1 or 1"))?;
                    let sym = match t.symbol.as_str() {
                        LEFT_MARKER_NAME => TapeSymbol::LeftMarker,
                        RIGHT_MARKER_NAME => TapeSymbol::RightMarker,
                        s => TapeSymbol::Letter(
                            *index
                                .get(s)
                                .ok_or_else(|| Error::parse(format!("unknown symbol `{s}`")))?,
                        ),
                    };
                    a.add_transition(endpoint(t.from)?, sym, endpoint(t.to)?, dir)?;
                }
                ParsedAutomaton::TwoWay(a)
            }
        };
        Ok(AutomatonFile {
            alphabet: raw.alphabet,
            automaton,
        })
    }

    /// Serialises a two-way automaton with symbol names `names`.
    pub fn two_way_to_json(a: &TwoWayNfa, names: &[String]) -> String {
        use crate::TwoWayAutomaton;
        let one_based = |s: StateSet| s.iter().map(|q| q + 1).collect::<Vec<_>>();
        let raw = RawAutomaton {
            kind: AutomatonKind::TwoWay,
            states: a.state_count(),
            alphabet: names.to_vec(),
            initial: one_based(a.initial()),
            accepting: one_based(a.accepting()),
            transitions: a
                .transitions()
                .into_iter()
                .map(|(from, sym, to, dir)| RawTransition {
                    from: from + 1,
                    symbol: match sym {
                        TapeSymbol::LeftMarker => LEFT_MARKER_NAME.to_string(),
                        TapeSymbol::RightMarker => RIGHT_MARKER_NAME.to_string(),
                        TapeSymbol::Letter(i) => names[i].clone(),
                    },
                    to: to + 1,
                    dir: Some(dir.delta() as i64),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("plain data serialises")
    }

    pub fn kind(&self) -> AutomatonKind {
        match self.automaton {
            ParsedAutomaton::OneWay(_) => AutomatonKind::OneWay,
            ParsedAutomaton::TwoWay(_) => AutomatonKind::TwoWay,
        }
    }

    /// Parses a whitespace-separated word over the named alphabet.
    /// A lone `-` is the empty word.
    pub fn parse_word(&self, line: &str) -> Result<Vec<usize>> {
        let line = line.trim();
        if line == "-" {
            return Ok(Vec::new());
        }
        line.split_whitespace()
            .map(|s| {
                self.alphabet
                    .iter()
                    .position(|name| name == s)
                    .ok_or_else(|| Error::parse(format!("unknown symbol `{s}`")))
            })
            .collect()
    }
}
