use std::fmt;
use std::ops::{BitAnd, BitOr, BitOrAssign, Sub};

/// A subset of the states `0..n`, `n <= 30`, stored as a bit mask.
///
/// Ordering is by the raw mask, which is what the canonical table order uses.
/// `Display` prints states 1-based, e.g. `{1,3}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet(u32);

impl StateSet {
    pub const MAX_STATES: usize = 30;
    pub const EMPTY: StateSet = StateSet(0);

    /// The full set `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_STATES, "at most {} states", Self::MAX_STATES);
        StateSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(q: usize) -> Self {
        assert!(q < Self::MAX_STATES);
        StateSet(1 << q)
    }

    pub fn from_bits(bits: u32) -> Self {
        StateSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, q: usize) -> bool {
        q < 32 && self.0 >> q & 1 == 1
    }

    pub fn insert(&mut self, q: usize) {
        assert!(q < Self::MAX_STATES);
        self.0 |= 1 << q;
    }

    pub fn remove(&mut self, q: usize) {
        if q < 32 {
            self.0 &= !(1 << q);
        }
    }

    pub fn with(mut self, q: usize) -> Self {
        self.insert(q);
        self
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: StateSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        n >= 32 || self.0 >> n == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Parses a 1-based comma-separated list (`1,2,3`); `-` is the empty set.
    pub fn parse_one_based(s: &str, n: usize) -> Result<Self, String> {
        let s = s.trim();
        if s == "-" {
            return Ok(StateSet::EMPTY);
        }
        let mut set = StateSet::EMPTY;
        for part in s.split(',') {
            let q: usize = part
                .trim()
                .parse()
                .map_err(|_| format!("bad state `{}`", part.trim()))?;
            if q == 0 || q > n {
                return Err(format!("state {q} outside 1..={n}"));
            }
            set.insert(q - 1);
        }
        Ok(set)
    }

    /// 1-based comma-separated list, `-` for the empty set.
    pub fn to_one_based_list(self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        self.iter()
            .map(|q| (q + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

pub struct Iter(u32);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let q = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(q)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for StateSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = StateSet::EMPTY;
        for q in iter {
            set.insert(q);
        }
        set
    }
}

impl BitOr for StateSet {
    type Output = StateSet;
    fn bitor(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 | rhs.0)
    }
}

impl BitOrAssign for StateSet {
    fn bitor_assign(&mut self, rhs: StateSet) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for StateSet {
    type Output = StateSet;
    fn bitand(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 & rhs.0)
    }
}

impl Sub for StateSet {
    type Output = StateSet;
    fn sub(self, rhs: StateSet) -> StateSet {
        StateSet(self.0 & !rhs.0)
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", q + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
