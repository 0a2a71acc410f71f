use std::fmt;

use num_bigint::BigInt;

use super::PrefixTable;
use crate::linalg::{rank_exact, IntMatrix};
use crate::{Error, Result, StateSet};

/// A set of layer indices `0..30`, printed 0-based, e.g. `{0,2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LayerSet(u32);

impl LayerSet {
    pub const EMPTY: LayerSet = LayerSet(0);

    /// `{0, …, k−1}`.
    pub fn below(k: usize) -> Self {
        assert!(k < 32);
        LayerSet(((1u64 << k) - 1) as u32)
    }

    pub fn from_bits(bits: u32) -> Self {
        LayerSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < 32);
        self.0 |= 1 << i;
    }

    pub fn union(self, other: LayerSet) -> Self {
        LayerSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Largest member + 1, or 0.
    pub fn bound(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0, …, k−1}`.
    pub fn subsets_below(k: usize) -> impl Iterator<Item = LayerSet> {
        (0..1u32 << k).map(LayerSet)
    }
}

impl FromIterator<usize> for LayerSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = LayerSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for LayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl fmt::Debug for LayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The layer decomposition of an ordered prefix table: the chain
/// `S_0 ⊊ … ⊊ S_k = [n]` of its distinct values (with `[n]` appended when it
/// is not a value), the prefix layer `pl(u)` with `f(u) = S_pl(u)`, and the
/// suffix layer `sl(v) = min { i : v ∈ S_i }`. The rank is `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerStructure {
    chain: Vec<StateSet>,
    prefix_layer: Vec<usize>,
    suffix_layer: Vec<usize>,
}

impl LayerStructure {
    pub fn of(f: &PrefixTable) -> Result<Self> {
        if !f.is_ordered() {
            return Err(Error::argument(format!("{f} is not ordered")));
        }
        let n = f.n();
        let full = StateSet::full(n);
        let mut chain: Vec<StateSet> = f.values().to_vec();
        // On a chain, inclusion order is the order by cardinality.
        chain.sort_by_key(|s| s.len());
        chain.dedup();
        if chain.last() != Some(&full) {
            chain.push(full);
        }
        let prefix_layer = f
            .values()
            .iter()
            .map(|v| chain.iter().position(|s| s == v).expect("value in chain"))
            .collect();
        let suffix_layer = (0..n)
            .map(|v| chain.iter().position(|s| s.contains(v)).expect("last set is full"))
            .collect();
        Ok(LayerStructure {
            chain,
            prefix_layer,
            suffix_layer,
        })
    }

    pub fn n(&self) -> usize {
        self.prefix_layer.len()
    }

    /// The number of distinct values other than `[n]`.
    pub fn rank(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn chain(&self) -> &[StateSet] {
        &self.chain
    }

    pub fn prefix_layer(&self, u: usize) -> usize {
        self.prefix_layer[u]
    }

    pub fn suffix_layer(&self, v: usize) -> usize {
        self.suffix_layer[v]
    }

    pub fn prefix_layers(&self) -> &[usize] {
        &self.prefix_layer
    }

    pub fn suffix_layers(&self) -> &[usize] {
        &self.suffix_layer
    }

    fn check_layer(&self, f: &PrefixTable, i: usize) -> Result<()> {
        if f.n() != self.n() {
            return Err(Error::argument("tables of different sizes"));
        }
        if i >= self.rank() {
            return Err(Error::argument(format!(
                "layer {i} outside 0..{}",
                self.rank()
            )));
        }
        Ok(())
    }

    /// `f` breaks through layer `i`: some `u` with `pl(u) ≤ i` has some
    /// `v ∈ f(u)` with `sl(v) > i`.
    pub fn breaks_through(&self, f: &PrefixTable, i: usize) -> Result<bool> {
        self.check_layer(f, i)?;
        Ok(self.breaks_unchecked(f, i))
    }

    fn breaks_unchecked(&self, f: &PrefixTable, i: usize) -> bool {
        (0..self.n())
            .filter(|&u| self.prefix_layer[u] <= i)
            .any(|u| f.value(u).iter().any(|v| self.suffix_layer[v] > i))
    }

    /// `B(f)`: the layers `f` breaks through.
    pub fn break_set(&self, f: &PrefixTable) -> LayerSet {
        assert_eq!(f.n(), self.n(), "tables of different sizes");
        (0..self.rank())
            .filter(|&i| self.breaks_unchecked(f, i))
            .collect()
    }

    /// `f` drops down from layer `i`: every `v ∈ f(u)` with `pl(u) ≤ i` has
    /// `sl(v) < i`.
    pub fn drops_down(&self, f: &PrefixTable, i: usize) -> Result<bool> {
        self.check_layer(f, i)?;
        Ok(self.drops_unchecked(f, i))
    }

    fn drops_unchecked(&self, f: &PrefixTable, i: usize) -> bool {
        (0..self.n())
            .filter(|&u| self.prefix_layer[u] <= i)
            .all(|u| f.value(u).iter().all(|v| self.suffix_layer[v] < i))
    }

    /// The layers `f` drops down from.
    pub fn drop_set(&self, f: &PrefixTable) -> LayerSet {
        assert_eq!(f.n(), self.n(), "tables of different sizes");
        (0..self.rank())
            .filter(|&i| self.drops_unchecked(f, i))
            .collect()
    }
}

fn checked_pair(f: &PrefixTable, f0: &PrefixTable) -> Result<LayerStructure> {
    if !f.is_ordered() {
        return Err(Error::argument(format!("{f} is not ordered")));
    }
    LayerStructure::of(f0)
}

/// Whether `f` breaks through layer `i` of `f0`.
pub fn breaks_through(f: &PrefixTable, f0: &PrefixTable, i: usize) -> Result<bool> {
    checked_pair(f, f0)?.breaks_through(f, i)
}

/// The layers of `f0` that `f` breaks through.
pub fn break_set(f: &PrefixTable, f0: &PrefixTable) -> Result<LayerSet> {
    let layers = checked_pair(f, f0)?;
    if f.n() != f0.n() {
        return Err(Error::argument("tables of different sizes"));
    }
    Ok(layers.break_set(f))
}

/// Whether `f` drops down from layer `i` of `f0`.
pub fn drops_down(f: &PrefixTable, f0: &PrefixTable, i: usize) -> Result<bool> {
    checked_pair(f, f0)?.drops_down(f, i)
}

/// The rank of `J − M(f)` over ℚ, where `M(f)[u][v] = 1` iff `v ∈ f(u)`.
pub fn table_rank_via_matrix(f: &PrefixTable) -> Result<usize> {
    if !f.is_ordered() {
        return Err(Error::argument(format!("{f} is not ordered")));
    }
    let n = f.n();
    let m = IntMatrix::from_fn(n, n, |u, v| BigInt::from(!f.value(u).contains(v) as u8));
    rank_exact(&m)
}
