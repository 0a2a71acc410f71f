use std::fmt;
use std::str::FromStr;

use super::split_text;
use crate::{Error, Result, StateSet};

/// A prefix table on `n` states; `values()[u]` is `f(u)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrefixTable {
    values: Vec<StateSet>,
}

/// The three tables `f_e`, `f_e'` and `f_{e+e'}` obtained by adding the
/// arcs `e = (u1, v2)` and `e' = (u2, v1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub with_e: PrefixTable,
    pub with_e_prime: PrefixTable,
    pub with_both: PrefixTable,
}

impl PrefixTable {
    /// Validates nonemptiness, range and the starting-state condition.
    pub fn new(values: Vec<StateSet>) -> Result<Self> {
        let n = values.len();
        if n == 0 || n > StateSet::MAX_STATES {
            return Err(Error::argument(format!(
                "prefix table size must be in 1..={}",
                StateSet::MAX_STATES
            )));
        }
        if let Some(u) = values.iter().position(|v| v.is_empty()) {
            return Err(Error::argument(format!("f({}) is empty", u + 1)));
        }
        if let Some(u) = values.iter().position(|v| !v.fits(n)) {
            return Err(Error::argument(format!("f({}) has a state above {n}", u + 1)));
        }
        let table = PrefixTable { values };
        if table.find_starting_state().is_none() {
            return Err(Error::argument("no value is contained in all others"));
        }
        Ok(table)
    }

    /// The table with every value equal to `value`.
    pub fn constant(n: usize, value: StateSet) -> Result<Self> {
        PrefixTable::new(vec![value; n])
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[StateSet] {
        &self.values
    }

    pub fn value(&self, u: usize) -> StateSet {
        self.values[u]
    }

    fn find_starting_state(&self) -> Option<usize> {
        (0..self.n()).find(|&i| self.values.iter().all(|&v| self.values[i].is_subset(v)))
    }

    /// `s(f)`: the minimal state whose value is contained in every value.
    pub fn starting_state(&self) -> usize {
        self.find_starting_state().expect("validated on construction")
    }

    /// `|f| = Σ |f(u)|`.
    pub fn size(&self) -> usize {
        self.values.iter().map(|v| v.len()).sum()
    }

    /// Adds the arcs `e = (u1, v2)` and `e' = (u2, v1)` separately and together.
    ///
    /// Requires `u1 ≠ u2`, `v1 ≠ v2`, `v1 ∈ f(u1)`, `v2 ∈ f(u2)`, `v2 ∉ f(u1)`
    /// and `v1 ∉ f(u2)`; such a quadruple exists exactly when `f` is unordered.
    pub fn augment(&self, u1: usize, u2: usize, v1: usize, v2: usize) -> Result<Augmentation> {
        let n = self.n();
        if [u1, u2, v1, v2].iter().any(|&x| x >= n) {
            return Err(Error::argument("augmentation index out of range"));
        }
        let f = &self.values;
        if u1 == u2
            || v1 == v2
            || !f[u1].contains(v1)
            || !f[u2].contains(v2)
            || f[u1].contains(v2)
            || f[u2].contains(v1)
        {
            return Err(Error::argument(format!(
                "({}, {}, {}, {}) is not an augmentation quadruple of {self}",
                u1 + 1,
                u2 + 1,
                v1 + 1,
                v2 + 1
            )));
        }
        let mut e = f.clone();
        e[u1].insert(v2);
        let mut e_prime = f.clone();
        e_prime[u2].insert(v1);
        let mut both = e.clone();
        both[u2].insert(v1);
        Ok(Augmentation {
            with_e: PrefixTable::new(e)?,
            with_e_prime: PrefixTable::new(e_prime)?,
            with_both: PrefixTable::new(both)?,
        })
    }

    /// All augmentation quadruples `(u1, u2, v1, v2)`.
    pub fn augmentation_quadruples(&self) -> Vec<(usize, usize, usize, usize)> {
        let f = &self.values;
        let mut out = Vec::new();
        for u1 in 0..self.n() {
            for u2 in 0..self.n() {
                if u1 == u2 {
                    continue;
                }
                for v1 in f[u1] - f[u2] {
                    for v2 in f[u2] - f[u1] {
                        out.push((u1, u2, v1, v2));
                    }
                }
            }
        }
        out
    }

    /// No quadruple `u1 ≠ u2`, `v1 ≠ v2` with `v1 ∈ f(u1)`, `v2 ∈ f(u2)`,
    /// `v2 ∉ f(u1)`, `v1 ∉ f(u2)` exists.
    pub fn is_ordered_by_quadruples(&self) -> bool {
        let f = &self.values;
        let n = self.n();
        for u1 in 0..n {
            for u2 in 0..n {
                for v1 in 0..n {
                    for v2 in 0..n {
                        if u1 != u2
                            && v1 != v2
                            && f[u1].contains(v1)
                            && f[u2].contains(v2)
                            && !f[u1].contains(v2)
                            && !f[u2].contains(v1)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Every two values are comparable under inclusion.
    pub fn is_chain(&self) -> bool {
        let f = &self.values;
        f.iter()
            .all(|&a| f.iter().all(|&b| a.is_subset(b) || b.is_subset(a)))
    }

    /// Orderedness; both characterisations are evaluated and must agree.
    pub fn is_ordered(&self) -> bool {
        let chain = self.is_chain();
        assert_eq!(
            chain,
            self.is_ordered_by_quadruples(),
            "orderedness characterisations disagree on {self}"
        );
        chain
    }
}

impl fmt::Display for PrefixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n())?;
        for v in &self.values {
            write!(f, "; {}", v.to_one_based_list())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PrefixTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrefixTable({self})")
    }
}

impl FromStr for PrefixTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, parts) = split_text(s)?;
        let values = parts
            .iter()
            .map(|p| StateSet::parse_one_based(p, n).map_err(Error::Parse))
            .collect::<Result<Vec<_>>>()?;
        PrefixTable::new(values)
    }
}
