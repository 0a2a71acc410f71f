//! Counting ordered prefix tables.
//!
//! An ordered prefix table of rank `k` is determined by its prefix layer
//! function `p: [n] → {0..k}` (every layer below `k` attained) and its chain
//! `S_0 ⊊ … ⊊ S_k = [n]` with `S_0 ≠ ∅`; conversely every such pair gives
//! one via `f(u) = S_p(u)`. There are `p_count(n, k) = k!·S(n+1, k+1)` layer
//! functions and `s_count(n, k) = (k+1)!·S(n, k+1)` chains, where `S(·,·)`
//! is [`stirling2`]. (`s_count` counts chains; it is unrelated to the
//! Stirling number despite the similar letter.)

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::tables::{LayerStructure, PrefixTable};
use crate::{Error, Result, StateSet};

pub type BigCount = BigUint;

/// Largest `n` for [`enumerate_ordered_prefix_tables`].
pub const MAX_BIJECTION_N: usize = 5;

fn stirling_table() -> &'static Mutex<Vec<Vec<BigCount>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<BigCount>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![BigCount::one()]]))
}

/// Stirling number of the second kind: partitions of an `n`-set into `k`
/// nonempty blocks. `S(0, 0) = 1`.
pub fn stirling2(n: usize, k: usize) -> Result<BigCount> {
    if k > n {
        return Err(Error::argument(format!("stirling2({n}, {k}) needs k <= n")));
    }
    let mut table = stirling_table().lock().expect("stirling table poisoned");
    while table.len() <= n {
        let m = table.len();
        let prev = &table[m - 1];
        let row: Vec<BigCount> = (0..=m)
            .map(|j| {
                let stay = if j < m { prev[j].clone() * j } else { BigCount::zero() };
                let new_block = if j > 0 { prev[j - 1].clone() } else { BigCount::zero() };
                stay + new_block
            })
            .collect();
        table.push(row);
    }
    Ok(table[n][k].clone())
}

pub fn factorial(n: usize) -> BigCount {
    (1..=n).fold(BigCount::one(), |acc, i| acc * i)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigCount::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn check_rank(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::argument(format!("rank {k} outside 0..{n}")));
    }
    Ok(())
}

/// Number of valid prefix layer functions of rank `k`: `k!·S(n+1, k+1)`.
pub fn p_count(n: usize, k: usize) -> Result<BigCount> {
    check_rank(n, k)?;
    Ok(factorial(k) * stirling2(n + 1, k + 1)?)
}

/// Number of valid nested set sequences of rank `k`: `(k+1)!·S(n, k+1)`.
pub fn s_count(n: usize, k: usize) -> Result<BigCount> {
    check_rank(n, k)?;
    Ok(factorial(k + 1) * stirling2(n, k + 1)?)
}

/// The number of ordered prefix tables on `n` states,
/// `Σ_{k=1}^{n} (k−1)!·k!·S(n,k)·S(n+1,k)`.
pub fn count_ordered_prefix_tables(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    let mut by_rank = BigCount::zero();
    for k in 0..n {
        by_rank += p_count(n, k)? * s_count(n, k)?;
    }
    let mut shifted = BigCount::zero();
    for k in 1..=n {
        shifted += factorial(k - 1) * factorial(k) * stirling2(n, k)? * stirling2(n + 1, k)?;
    }
    assert_eq!(by_rank, shifted, "the two index forms of the count disagree");
    Ok(shifted)
}

/// `p: [n] → {0..k}` attaining every value below `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ValidPrefixLayerFunction {
    rank: usize,
    values: Vec<usize>,
}

impl ValidPrefixLayerFunction {
    pub fn new(rank: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::argument("empty layer function"));
        }
        if values.iter().any(|&v| v > rank) {
            return Err(Error::argument("layer above the rank"));
        }
        if (0..rank).any(|i| !values.contains(&i)) {
            return Err(Error::argument("a layer below the rank is not attained"));
        }
        Ok(ValidPrefixLayerFunction { rank, values })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// `S_0 ⊊ S_1 ⊊ … ⊊ S_k = [n]` with `S_0 ≠ ∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedSetSequence {
    sets: Vec<StateSet>,
}

impl NestedSetSequence {
    pub fn new(n: usize, sets: Vec<StateSet>) -> Result<Self> {
        if n == 0 || n > StateSet::MAX_STATES {
            return Err(Error::argument("n outside the supported range"));
        }
        match (sets.first(), sets.last()) {
            (Some(first), Some(&last)) if !first.is_empty() && last == StateSet::full(n) => {}
            _ => return Err(Error::argument("sequence must start nonempty and end at [n]")),
        }
        if sets.windows(2).any(|w| !w[0].is_subset(w[1]) || w[0] == w[1]) {
            return Err(Error::argument("sequence is not strictly nested"));
        }
        Ok(NestedSetSequence { sets })
    }

    pub fn rank(&self) -> usize {
        self.sets.len() - 1
    }

    pub fn sets(&self) -> &[StateSet] {
        &self.sets
    }
}

/// `f(u) = S_p(u)`.
pub fn table_from_pair(
    p: &ValidPrefixLayerFunction,
    s: &NestedSetSequence,
) -> Result<PrefixTable> {
    if p.rank() != s.rank() {
        return Err(Error::argument("layer function and chain have different ranks"));
    }
    PrefixTable::new(p.values().iter().map(|&i| s.sets()[i]).collect())
}

/// Recovers the generating pair of an ordered table from its layers.
pub fn pair_of_table(f: &PrefixTable) -> Result<(ValidPrefixLayerFunction, NestedSetSequence)> {
    let layers = LayerStructure::of(f)?;
    Ok((
        ValidPrefixLayerFunction::new(layers.rank(), layers.prefix_layers().to_vec())?,
        NestedSetSequence::new(f.n(), layers.chain().to_vec())?,
    ))
}

/// All valid prefix layer functions of rank `k` on `n` states.
pub fn valid_prefix_layer_functions(n: usize, k: usize) -> Vec<ValidPrefixLayerFunction> {
    let mut out = Vec::new();
    let mut values = vec![0usize; n];
    loop {
        if let Ok(p) = ValidPrefixLayerFunction::new(k, values.clone()) {
            out.push(p);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if values[pos] < k {
                values[pos] += 1;
                break;
            }
            values[pos] = 0;
        }
    }
}

/// All valid nested set sequences of rank `k` on `n` states, built from
/// ordered partitions into `k + 1` blocks.
pub fn nested_set_sequences(n: usize, k: usize) -> Vec<NestedSetSequence> {
    // Assign each state to a block 0..=k; keep surjective assignments.
    let mut out = Vec::new();
    let mut block = vec![0usize; n];
    loop {
        let mut blocks = vec![StateSet::EMPTY; k + 1];
        for (q, &b) in block.iter().enumerate() {
            blocks[b].insert(q);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            let mut acc = StateSet::EMPTY;
            let sets = blocks
                .iter()
                .map(|&b| {
                    acc |= b;
                    acc
                })
                .collect();
            out.push(NestedSetSequence::new(n, sets).expect("surjective assignment"));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if block[pos] < k {
                block[pos] += 1;
                break;
            }
            block[pos] = 0;
        }
    }
}

/// One generated table together with the pair it was built from.
#[derive(Clone, Debug)]
pub struct GeneratedTable {
    pub layer_function: ValidPrefixLayerFunction,
    pub chain: NestedSetSequence,
    pub table: PrefixTable,
}

/// Every ordered prefix table on `n ≤ 5` states with its generating pair,
/// by rank, then layer function, then chain.
pub fn enumerate_ordered_with_generators(n: usize) -> Result<Vec<GeneratedTable>> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    if n > MAX_BIJECTION_N {
        return Err(Error::capacity(
            format!("ordered-table enumeration for n = {n}"),
            MAX_BIJECTION_N,
        ));
    }
    let mut out = Vec::new();
    for k in 0..n {
        let chains = nested_set_sequences(n, k);
        for p in valid_prefix_layer_functions(n, k) {
            for s in &chains {
                out.push(GeneratedTable {
                    table: table_from_pair(&p, s)?,
                    layer_function: p.clone(),
                    chain: s.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Every ordered prefix table on `n ≤ 5` states, generated from layer
/// functions and chains, in canonical order.
pub fn enumerate_ordered_prefix_tables(n: usize) -> Result<Vec<PrefixTable>> {
    let mut tables: Vec<PrefixTable> = enumerate_ordered_with_generators(n)?
        .into_iter()
        .map(|g| g.table)
        .collect();
    tables.sort_unstable();
    Ok(tables)
}

/// One row of the comparison table of two-way to one-way tradeoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub n: usize,
    /// 2DFA → UFA lower bound: `Σ C(n,k−1)·C(n,k)·C(2k−2,k−1)`.
    pub dfa2ufa_lower: BigCount,
    /// 2DFA → UFA upper bound: `Σ C(n,k−1)·C(n,k)·k!`.
    pub dfa2ufa_upper: BigCount,
    /// 2NFA → UFA lower bound: the ordered prefix table count.
    pub nfa2ufa_lower: BigCount,
    /// 2NFA → DFA: `Σ_i Σ_j C(n,i)·C(n,j)·(2^(n−i) − 1)^(n−j)`.
    pub nfa2dfa: BigCount,
}

impl Table1Row {
    pub const CSV_HEADER: &'static str = "n,dfa2ufa_lower,dfa2ufa_upper,nfa2ufa_lower,nfa2dfa";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.dfa2ufa_lower, self.dfa2ufa_upper, self.nfa2ufa_lower, self.nfa2dfa
        )
    }
}

pub fn table1_row(n: usize) -> Result<Table1Row> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    let mut lower = BigCount::zero();
    let mut upper = BigCount::zero();
    for k in 1..=n {
        let c = binomial(n, k - 1) * binomial(n, k);
        lower += &c * binomial(2 * k - 2, k - 1);
        upper += c * factorial(k);
    }
    let mut nfa2dfa = BigCount::zero();
    for i in 1..=n {
        let base = (BigCount::one() << (n - i)) - BigCount::one();
        for j in 1..=n {
            // 0^0 = 1 for i = j = n.
            nfa2dfa += binomial(n, i) * binomial(n, j) * base.pow((n - j) as u32);
        }
    }
    Ok(Table1Row {
        n,
        dfa2ufa_lower: lower,
        dfa2ufa_upper: upper,
        nfa2ufa_lower: count_ordered_prefix_tables(n)?,
        nfa2dfa,
    })
}

/// The single rank-`n−1` term `(n−1)!·n!·S(n,n)·S(n+1,n) = C(n,2)·(n−1)!·n!`
/// of the ordered-table count, a lower bound on it.
pub fn asymptotic_floor(n: usize) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    let floor = binomial(n, 2) * factorial(n - 1) * factorial(n);
    // Same value as ⌊(n−1)·(n!)²/2⌋.
    debug_assert_eq!(floor, (BigCount::from(n - 1) * factorial(n).pow(2u32)) >> 1usize);
    Ok(floor)
}
