use std::fmt;
use std::str::FromStr;

use super::split_text;
use crate::{Error, Result, StateSet};

/// A suffix table on `n` states.
///
/// `accept` is `A(g)`, the set of `v` with `Accept ∈ g(v)`; for those `v`,
/// `values()[v]` is the full set. Other values are arbitrary, empty included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuffixTable {
    // Field order fixes the canonical order: accept mask first.
    accept: StateSet,
    values: Vec<StateSet>,
}

impl SuffixTable {
    /// `values[v]` is `g(v) ∩ [n]`; `accept` lists the `v` whose value also
    /// contains `Accept`.
    pub fn new(values: Vec<StateSet>, accept: StateSet) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > StateSet::MAX_STATES {
            return Err(Error::argument(format!(
                "suffix table size must be in 1..={}",
                StateSet::MAX_STATES
            )));
        }
        if accept.is_empty() {
            return Err(Error::argument("no value contains Accept"));
        }
        if !accept.fits(n) {
            return Err(Error::argument("accept flag above n"));
        }
        if let Some(v) = values.iter().position(|s| !s.fits(n)) {
            return Err(Error::argument(format!("g({}) has a state above {n}", v + 1)));
        }
        let full = StateSet::full(n);
        if let Some(v) = accept.iter().find(|&v| values[v] != full) {
            return Err(Error::argument(format!(
                "g({}) contains Accept but is not the full set",
                v + 1
            )));
        }
        Ok(SuffixTable { accept, values })
    }

    /// Builds from the non-accepting values, filling accepting indices with `[n]`.
    pub fn with_accepting(mut values: Vec<StateSet>, accept: StateSet) -> Result<Self> {
        let n = values.len();
        let full = StateSet::full(n.min(StateSet::MAX_STATES));
        for v in accept.iter().filter(|&v| v < n) {
            values[v] = full;
        }
        SuffixTable::new(values, accept)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `A(g)`.
    pub fn accepting(&self) -> StateSet {
        self.accept
    }

    pub fn accepts_at(&self, v: usize) -> bool {
        self.accept.contains(v)
    }

    /// `g(v) ∩ [n]`.
    pub fn value(&self, v: usize) -> StateSet {
        self.values[v]
    }

    pub fn values(&self) -> &[StateSet] {
        &self.values
    }
}

impl fmt::Display for SuffixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())?;
        for (v, s) in self.values.iter().enumerate() {
            if self.accept.contains(v) {
                f.write_str("; A")?;
            } else {
                write!(f, "; {}", s.to_one_based_list())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuffixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuffixTable({self})")
    }
}

impl FromStr for SuffixTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, parts) = split_text(s)?;
        let mut values = Vec::with_capacity(n);
        let mut accept = StateSet::EMPTY;
        for (v, p) in parts.iter().enumerate() {
            if *p == "A" {
                accept.insert(v);
                values.push(StateSet::full(n));
            } else {
                values.push(StateSet::parse_one_based(p, n).map_err(Error::Parse)?);
            }
        }
        SuffixTable::new(values, accept)
    }
}
