//! Crossing behaviour of an arbitrary 2NFA at a prefix/suffix boundary.
//!
//! For a prefix `x`, `S_x` is the set of states in which a computation from
//! an initial configuration on `⊢x` first moves right past the last cell, and
//! `T[q]` the same set for computations started in `q` on the last cell of
//! `⊢x` (the `⊢` itself when `x = ε`). Then `f_x(u) = S_x ∪ T[u]` is a prefix
//! table whenever `S_x ≠ ∅`, with value `S_x` at its starting states.
//!
//! For a suffix `y`, `A_y` is the set of states `q` from which a computation
//! started on the first cell of `y⊣` reaches `⊣` in an accepting state, and
//! `T'[q]` the states in which it can move left past the first cell. Then
//! `g_y(v) = T'[v]` for `v ∉ A_y` and `[n] ∪ {Accept}` otherwise is a suffix
//! table with `A(g_y) = A_y` whenever `A_y ≠ ∅`.
//!
//! A row with `S_x = ∅` or a column with `A_y = ∅` of a concatenation matrix
//! is all zero, and on the remaining entries `xy` is accepted iff the
//! witness-matrix entry at `(f_x, g_y)` is 1. Hence the rank of any such
//! matrix is at most the number of ordered prefix tables on `n` states.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::automata::{
    explore, twonfa_accepts, Configuration, Direction, ExploreOrder, TapeSymbol,
    TwoWayAutomaton, TwoWayNfa,
};
use crate::combinatorics::{count_ordered_prefix_tables, BigCount};
use crate::linalg::rank_exact_bool;
use crate::tables::{PrefixTable, SuffixTable};
use crate::witness::{m_entry, BoolMatrix, LabeledMatrix};
use crate::{Result, StateSet};

/// `S_x` and `T_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixProfile {
    pub s_x: StateSet,
    pub t: Vec<StateSet>,
}

/// `A_y` and `T'_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixProfile {
    pub a_y: StateSet,
    pub t_prime: Vec<StateSet>,
}

/// Both sides of the boundary in `xy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingProfile {
    pub prefix: PrefixProfile,
    pub suffix: SuffixProfile,
}

pub fn prefix_profile<A: TwoWayAutomaton + ?Sized>(a: &A, x: &[A::Letter]) -> PrefixProfile {
    let mut tape = Vec::with_capacity(x.len() + 1);
    tape.push(TapeSymbol::LeftMarker);
    tape.extend(x.iter().map(TapeSymbol::Letter));
    let last = tape.len() - 1;
    let from_start = explore(
        a,
        &tape,
        a.initial().iter().map(|q| Configuration { state: q, position: 0 }),
        ExploreOrder::BreadthFirst,
    );
    let t = (0..a.state_count())
        .map(|q| {
            explore(
                a,
                &tape,
                [Configuration { state: q, position: last }],
                ExploreOrder::BreadthFirst,
            )
            .exit_right
        })
        .collect();
    PrefixProfile {
        s_x: from_start.exit_right,
        t,
    }
}

pub fn suffix_profile<A: TwoWayAutomaton + ?Sized>(a: &A, y: &[A::Letter]) -> SuffixProfile {
    let mut tape: Vec<TapeSymbol<&A::Letter>> = y.iter().map(TapeSymbol::Letter).collect();
    tape.push(TapeSymbol::RightMarker);
    let last = tape.len() - 1;
    let mut a_y = StateSet::EMPTY;
    let t_prime = (0..a.state_count())
        .map(|q| {
            let e = explore(
                a,
                &tape,
                [Configuration { state: q, position: 0 }],
                ExploreOrder::BreadthFirst,
            );
            if !(e.visited[last] & a.accepting()).is_empty() {
                a_y.insert(q);
            }
            e.exit_left
        })
        .collect();
    SuffixProfile { a_y, t_prime }
}

pub fn crossing_profile<A: TwoWayAutomaton + ?Sized>(
    a: &A,
    x: &[A::Letter],
    y: &[A::Letter],
) -> CrossingProfile {
    CrossingProfile {
        prefix: prefix_profile(a, x),
        suffix: suffix_profile(a, y),
    }
}

impl PrefixProfile {
    /// `f_x`, or `None` when `S_x = ∅`.
    pub fn table(&self) -> Option<PrefixTable> {
        if self.s_x.is_empty() {
            return None;
        }
        let values = self.t.iter().map(|&t| self.s_x | t).collect();
        Some(PrefixTable::new(values).expect("a nonempty S_x is contained in every value"))
    }
}

impl SuffixProfile {
    /// `g_y`, or `None` when `A_y = ∅`.
    pub fn table(&self) -> Option<SuffixTable> {
        if self.a_y.is_empty() {
            return None;
        }
        let values = self
            .t_prime
            .iter()
            .enumerate()
            .map(|(v, &t)| if self.a_y.contains(v) { StateSet::full(self.t_prime.len()) } else { t })
            .collect();
        Some(SuffixTable::new(values, self.a_y).expect("accepting values are full"))
    }
}

pub fn prefix_table_of<A: TwoWayAutomaton + ?Sized>(a: &A, x: &[A::Letter]) -> Option<PrefixTable> {
    prefix_profile(a, x).table()
}

pub fn suffix_table_of<A: TwoWayAutomaton + ?Sized>(a: &A, y: &[A::Letter]) -> Option<SuffixTable> {
    suffix_profile(a, y).table()
}

/// `M[x][y] = 1` iff `xy` is accepted.
pub fn schmidt_matrix<A>(a: &A, xs: &[Vec<A::Letter>], ys: &[Vec<A::Letter>]) -> LabeledMatrix<Vec<A::Letter>, Vec<A::Letter>>
where
    A: TwoWayAutomaton + ?Sized,
    A::Letter: Clone,
{
    let matrix = BoolMatrix::from_fn(xs.len(), ys.len(), |i, j| {
        let word: Vec<A::Letter> = xs[i].iter().chain(&ys[j]).cloned().collect();
        twonfa_accepts(a, &word)
    });
    LabeledMatrix {
        rows: xs.to_vec(),
        cols: ys.to_vec(),
        matrix,
    }
}

fn bound_as_number<S: Serializer>(bound: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(bound) {
        Ok(v) => s.serialize_u64(v),
        Err(_) => s.serialize_str(&bound.to_string()),
    }
}

/// Outcome of [`verify_optimality`]. `reduced_rows`/`reduced_cols` are the
/// dimensions of `M″`, the matrix left after dropping empty-profile rows and
/// columns and merging rows and columns with equal tables.
#[derive(Clone, Debug, Serialize)]
pub struct OptimalityReport {
    pub n: usize,
    pub rank: usize,
    #[serde(serialize_with = "bound_as_number")]
    pub bound: BigCount,
    pub rows: usize,
    pub cols: usize,
    pub reduced_rows: usize,
    pub reduced_cols: usize,
    pub seed: Option<u64>,
    pub ok: bool,
    /// Rank of `M′`.
    #[serde(skip)]
    pub rank_nonempty: usize,
    /// Rank of `M″`.
    #[serde(skip)]
    pub rank_distinct: usize,
    #[serde(skip)]
    pub nonempty_rows: usize,
    #[serde(skip)]
    pub nonempty_cols: usize,
    /// Human-readable descriptions of every failed check.
    #[serde(skip)]
    pub violations: Vec<String>,
}

impl OptimalityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serialises")
    }
}

/// Builds the concatenation matrix `M` on `xs × ys`, its reductions `M′` and
/// `M″`, and checks `rank M = rank M′ = rank M″ ≤ bound`, the zero rows and
/// columns of empty profiles, and `M′[x][y] = M(n)[f_x][g_y]`.
pub fn verify_optimality<A>(
    a: &A,
    xs: &[Vec<A::Letter>],
    ys: &[Vec<A::Letter>],
    seed: Option<u64>,
) -> Result<OptimalityReport>
where
    A: TwoWayAutomaton + ?Sized,
    A::Letter: Clone,
{
    let n = a.state_count();
    let bound = count_ordered_prefix_tables(n)?;
    let m = schmidt_matrix(a, xs, ys).matrix;
    let rank = rank_exact_bool(&m)?;
    let mut violations = Vec::new();

    let f: Vec<Option<PrefixTable>> = xs.iter().map(|x| prefix_table_of(a, x)).collect();
    let g: Vec<Option<SuffixTable>> = ys.iter().map(|y| suffix_table_of(a, y)).collect();
    for (i, fx) in f.iter().enumerate() {
        if fx.is_none() && !m.is_zero_row(i) {
            violations.push(format!("row {i} has S_x = ∅ but a nonzero entry"));
        }
    }
    for (j, gy) in g.iter().enumerate() {
        if gy.is_none() && !m.is_zero_col(j) {
            violations.push(format!("column {j} has A_y = ∅ but a nonzero entry"));
        }
    }

    let keep_rows: Vec<usize> = (0..xs.len()).filter(|&i| f[i].is_some()).collect();
    let keep_cols: Vec<usize> = (0..ys.len()).filter(|&j| g[j].is_some()).collect();
    let m1 = m.submatrix(&keep_rows, &keep_cols);
    let rank_nonempty = rank_exact_bool(&m1)?;
    for (ri, &i) in keep_rows.iter().enumerate() {
        for (ci, &j) in keep_cols.iter().enumerate() {
            let (fx, gy) = (f[i].as_ref().unwrap(), g[j].as_ref().unwrap());
            if m1.get(ri, ci) != m_entry(fx, gy)? {
                violations.push(format!("entry ({i}, {j}) differs from the witness entry at ({fx}) x ({gy})"));
            }
        }
    }

    let distinct_rows = first_occurrences(keep_rows.iter().map(|&i| f[i].clone().unwrap()));
    let distinct_cols = first_occurrences(keep_cols.iter().map(|&j| g[j].clone().unwrap()));
    let m2 = m1.submatrix(
        &distinct_rows.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
        &distinct_cols.iter().map(|(k, _)| *k).collect::<Vec<_>>(),
    );
    for (ri, (_, fx)) in distinct_rows.iter().enumerate() {
        for (ci, (_, gy)) in distinct_cols.iter().enumerate() {
            if m2.get(ri, ci) != m_entry(fx, gy)? {
                violations.push(format!("M'' entry at ({fx}) x ({gy}) differs from the witness matrix"));
            }
        }
    }
    let rank_distinct = rank_exact_bool(&m2)?;

    if rank != rank_nonempty || rank != rank_distinct {
        violations.push(format!(
            "ranks differ: M {rank}, M' {rank_nonempty}, M'' {rank_distinct}"
        ));
    }
    if BigCount::from(rank) > bound {
        violations.push(format!("rank {rank} exceeds the bound {bound}"));
    }
    Ok(OptimalityReport {
        n,
        rank,
        bound,
        rows: m.rows(),
        cols: m.cols(),
        reduced_rows: m2.rows(),
        reduced_cols: m2.cols(),
        seed,
        ok: violations.is_empty(),
        rank_nonempty,
        rank_distinct,
        nonempty_rows: m1.rows(),
        nonempty_cols: m1.cols(),
        violations,
    })
}

/// Index (into the iteration) and value of the first occurrence of each value.
fn first_occurrences<T: Clone + Eq + std::hash::Hash>(items: impl Iterator<Item = T>) -> Vec<(usize, T)> {
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (k, item) in items.enumerate() {
        if seen.insert(item.clone(), ()).is_none() {
            out.push((k, item));
        }
    }
    out
}

/// A random 2NFA: every state is initial, and independently accepting, with
/// probability 1/2; every transition `(q, symbol, r, dir)` is present with
/// probability 1/2, except left moves on `⊢`, right moves on `⊣`, and
/// anything on `⊣` out of an accepting state, which are never generated.
pub fn random_two_way_nfa<R: Rng + ?Sized>(states: usize, alphabet: usize, rng: &mut R) -> Result<TwoWayNfa> {
    let mut initial = StateSet::EMPTY;
    let mut accepting = StateSet::EMPTY;
    for q in 0..states {
        if rng.random_bool(0.5) {
            initial.insert(q);
        }
        if rng.random_bool(0.5) {
            accepting.insert(q);
        }
    }
    let mut a = TwoWayNfa::new(states, alphabet, initial, accepting)?;
    let symbols: Vec<TapeSymbol<usize>> = (0..alphabet)
        .map(TapeSymbol::Letter)
        .chain([TapeSymbol::LeftMarker, TapeSymbol::RightMarker])
        .collect();
    for q in 0..states {
        for &sym in &symbols {
            for r in 0..states {
                for dir in [Direction::Left, Direction::Right] {
                    let allowed = match sym {
                        TapeSymbol::LeftMarker => dir == Direction::Right,
                        TapeSymbol::RightMarker => dir == Direction::Left && !accepting.contains(q),
                        TapeSymbol::Letter(_) => true,
                    };
                    if rng.random_bool(0.5) && allowed {
                        a.add_transition(q, sym, r, dir)?;
                    }
                }
            }
        }
    }
    Ok(a)
}

/// Between 1 and 20 random words of length at most 6.
pub fn random_words<R: Rng + ?Sized>(alphabet: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let count = rng.random_range(1..=20);
    (0..count)
        .map(|_| {
            let len = rng.random_range(0..=6);
            (0..len).map(|_| rng.random_range(0..alphabet)).collect()
        })
        .collect()
}

/// A reproducible random instance: automaton, prefixes and suffixes.
#[derive(Clone, Debug)]
pub struct RandomInstance {
    pub seed: u64,
    pub automaton: TwoWayNfa,
    pub prefixes: Vec<Vec<usize>>,
    pub suffixes: Vec<Vec<usize>>,
}

pub fn random_instance(states: usize, alphabet: usize, seed: u64) -> Result<RandomInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let automaton = random_two_way_nfa(states, alphabet, &mut rng)?;
    let prefixes = random_words(alphabet, &mut rng);
    let suffixes = random_words(alphabet, &mut rng);
    Ok(RandomInstance {
        seed,
        automaton,
        prefixes,
        suffixes,
    })
}

impl RandomInstance {
    pub fn verify(&self) -> Result<OptimalityReport> {
        verify_optimality(&self.automaton, &self.prefixes, &self.suffixes, Some(self.seed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{enumerate_prefix_tables, enumerate_suffix_tables};
    use crate::witness::{build_m, GammaSymbol, WitnessAutomaton};
    use proptest::prelude::*;

    fn forward_only(accepting: bool) -> TwoWayNfa {
        let acc = if accepting { StateSet::singleton(0) } else { StateSet::EMPTY };
        let mut a = TwoWayNfa::new(1, 2, StateSet::singleton(0), acc).unwrap();
        a.add_transition(0, TapeSymbol::LeftMarker, 0, Direction::Right).unwrap();
        for s in 0..2 {
            a.add_transition(0, TapeSymbol::Letter(s), 0, Direction::Right).unwrap();
        }
        a
    }

    #[test]
    fn forward_only_profiles() {
        let a = forward_only(true);
        for x in [vec![], vec![0], vec![1, 0, 1]] {
            let p = prefix_profile(&a, &x);
            assert_eq!(p.s_x, StateSet::singleton(0));
            assert_eq!(p.t, vec![StateSet::singleton(0)]);
            assert_eq!(p.table().unwrap().to_string(), "1; 1");
            let g = suffix_table_of(&a, &x).unwrap();
            assert_eq!(g.to_string(), "1; A");
        }
        assert!(suffix_table_of(&forward_only(false), &[0]).is_none());
    }

    #[test]
    fn stuck_at_left_marker() {
        let a = TwoWayNfa::new(2, 1, StateSet::singleton(0), StateSet::singleton(1)).unwrap();
        assert_eq!(prefix_profile(&a, &[0, 0]).s_x, StateSet::EMPTY);
        assert!(prefix_table_of(&a, &[0]).is_none());
    }

    #[test]
    fn trivial_schmidt_matrices() {
        let xs = vec![vec![0], vec![1, 1]];
        let m = schmidt_matrix(&forward_only(true), &xs, &xs).matrix;
        assert_eq!(m.count_ones(), 4);
        assert_eq!(rank_exact_bool(&m).unwrap(), 1);
        let z = schmidt_matrix(&forward_only(false), &xs, &xs).matrix;
        assert_eq!(rank_exact_bool(&z).unwrap(), 0);
    }

    #[test]
    fn witness_encodings_give_m2() {
        let a = WitnessAutomaton::new(2).unwrap();
        let xs: Vec<Vec<GammaSymbol>> = enumerate_prefix_tables(2)
            .unwrap()
            .into_iter()
            .map(|f| vec![GammaSymbol::StartState(f.starting_state()), GammaSymbol::PrefixSym(f)])
            .collect();
        let ys: Vec<Vec<GammaSymbol>> = enumerate_suffix_tables(2)
            .unwrap()
            .into_iter()
            .map(|g| vec![GammaSymbol::SuffixSym(g)])
            .collect();
        assert_eq!(schmidt_matrix(&a, &xs, &ys).matrix, build_m(2).unwrap().matrix);
        // The profiles of the witness automaton recover the tables.
        for (x, f) in xs.iter().zip(enumerate_prefix_tables(2).unwrap()) {
            assert_eq!(prefix_table_of(&a, x).unwrap(), f);
        }
        for (y, g) in ys.iter().zip(enumerate_suffix_tables(2).unwrap()) {
            assert_eq!(suffix_table_of(&a, y).unwrap(), g);
        }
        let report = verify_optimality(&a, &xs, &ys, None).unwrap();
        assert!(report.ok, "{:?}", report.violations);
        assert_eq!(report.rank, 7);
    }

    #[test]
    fn report_json_fields() {
        let report = random_instance(2, 2, 7).unwrap().verify().unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = vec!["n", "rank", "bound", "rows", "cols", "reduced_rows", "reduced_cols", "seed", "ok"];
        expected.sort_unstable();
        let mut keys = keys;
        keys.sort_unstable();
        assert_eq!(keys, expected);
        assert_eq!(v["bound"], 7);
        assert_eq!(v["seed"], 7);
    }

    #[test]
    fn random_automata_respect_invariants() {
        for seed in 0..50 {
            let inst = random_instance(3, 2, seed).unwrap();
            for (q, sym, _, dir) in inst.automaton.transitions() {
                match sym {
                    TapeSymbol::LeftMarker => assert_eq!(dir, Direction::Right),
                    TapeSymbol::RightMarker => {
                        assert_eq!(dir, Direction::Left);
                        assert!(!inst.automaton.accepting().contains(q));
                    }
                    TapeSymbol::Letter(_) => {}
                }
            }
            assert!((1..=20).contains(&inst.prefixes.len()));
            assert!(inst.prefixes.iter().all(|w| w.len() <= 6));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn profile_tables_are_valid(seed in any::<u64>(), states in 1usize..=3) {
            let inst = random_instance(states, 2, seed).unwrap();
            for x in &inst.prefixes {
                let p = prefix_profile(&inst.automaton, x);
                if let Some(f) = p.table() {
                    prop_assert_eq!(f.value(f.starting_state()), p.s_x);
                }
            }
            for y in &inst.suffixes {
                let p = suffix_profile(&inst.automaton, y);
                if let Some(g) = p.table() {
                    prop_assert_eq!(g.accepting(), p.a_y);
                }
            }
        }

        #[test]
        fn random_instances_verify(seed in any::<u64>(), states in 1usize..=3) {
            let report = random_instance(states, 2, seed).unwrap().verify().unwrap();
            prop_assert!(report.ok, "{:?}", report.violations);
        }
    }
}
