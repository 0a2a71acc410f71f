//! The witness automaton `A_n` and its acceptance matrices.
//!
//! `A_n` has states `[n]`, initial state `1`, every state accepting, and
//! reads symbols `(L, i)`, `(L, f)` and `(R, g)` for states `i`, prefix
//! tables `f` and suffix tables `g`:
//!
//! * `δ(q, (L, i)) = {(i, +1)}`
//! * `δ(q, (L, f)) = f(q) × {+1}`
//! * `δ(q, (R, g)) = g(q) × {−1}` if `Accept ∉ g(q)`, else `{(q, +1)}`
//! * `δ(q, ⊢) = {(q, +1)}`, and there are no transitions on `⊣`.
//!
//! The transition on `(R, g)` is sometimes printed with `(R, q)` in place of
//! `(R, g)`; the symbol is the suffix-table letter. The alphabet is never
//! materialised: transitions are computed per concrete symbol.
//!
//! On `(L, s(f)) (L, f) (R, g)` the automaton accepts iff `G(f) ∪ H(g)` has a
//! path from `(L, s(f))` to some `(R, v)` with `v ∈ A(g)`; [`m_entry`]
//! evaluates that criterion. `M(n)` has one row per prefix table and one
//! column per suffix table; `K(n)` keeps the ordered rows.

use std::fmt::Display;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::automata::{twonfa_accepts, Moves, TapeSymbol, TwoWayAutomaton};
use crate::tables::{
    enumerate_prefix_tables, enumerate_suffix_tables, haspath, ArcGraph, LayerSet,
    LayerStructure, PrefixTable, SuffixTable, MAX_ENUMERATION_N,
};
use crate::{Error, Result, StateSet};

pub use crate::linalg::BoolMatrix;

/// A letter of the witness alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GammaSymbol {
    /// `(L, i)`, 0-based `i`.
    StartState(usize),
    /// `(L, f)`.
    PrefixSym(PrefixTable),
    /// `(R, g)`.
    SuffixSym(SuffixTable),
}

/// `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessAutomaton {
    n: usize,
}

impl WitnessAutomaton {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > StateSet::MAX_STATES {
            return Err(Error::argument(format!(
                "n must be in 1..={}",
                StateSet::MAX_STATES
            )));
        }
        Ok(WitnessAutomaton { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl TwoWayAutomaton for WitnessAutomaton {
    type Letter = GammaSymbol;

    fn state_count(&self) -> usize {
        self.n
    }

    fn initial(&self) -> StateSet {
        StateSet::singleton(0)
    }

    fn accepting(&self) -> StateSet {
        StateSet::full(self.n)
    }

    /// Letters built for a different `n` have no transitions.
    fn moves(&self, q: usize, symbol: TapeSymbol<&GammaSymbol>) -> Moves {
        match symbol {
            TapeSymbol::LeftMarker => Moves::right(StateSet::singleton(q)),
            TapeSymbol::RightMarker => Moves::NONE,
            TapeSymbol::Letter(GammaSymbol::StartState(i)) if *i < self.n => {
                Moves::right(StateSet::singleton(*i))
            }
            TapeSymbol::Letter(GammaSymbol::PrefixSym(f)) if f.n() == self.n => {
                Moves::right(f.value(q))
            }
            TapeSymbol::Letter(GammaSymbol::SuffixSym(g)) if g.n() == self.n => {
                if g.accepts_at(q) {
                    Moves::right(StateSet::singleton(q))
                } else {
                    Moves::left(g.value(q))
                }
            }
            TapeSymbol::Letter(_) => Moves::NONE,
        }
    }
}

fn same_size(f: &PrefixTable, g: &SuffixTable) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::argument(format!(
            "prefix table on {} states, suffix table on {}",
            f.n(),
            g.n()
        )));
    }
    Ok(())
}

/// `(L, s(f)) (L, f) (R, g)`.
pub fn encode_string(f: &PrefixTable, g: &SuffixTable) -> Result<Vec<GammaSymbol>> {
    same_size(f, g)?;
    Ok(vec![
        GammaSymbol::StartState(f.starting_state()),
        GammaSymbol::PrefixSym(f.clone()),
        GammaSymbol::SuffixSym(g.clone()),
    ])
}

/// Inverse of [`encode_string`].
pub fn decode(word: &[GammaSymbol]) -> Result<(PrefixTable, SuffixTable)> {
    match word {
        [GammaSymbol::StartState(s), GammaSymbol::PrefixSym(f), GammaSymbol::SuffixSym(g)]
            if *s == f.starting_state() && f.n() == g.n() =>
        {
            Ok((f.clone(), g.clone()))
        }
        _ => Err(Error::argument("not of the form (L, s(f)) (L, f) (R, g)")),
    }
}

fn graph_entry(f: &PrefixTable, g: &SuffixTable) -> bool {
    haspath(&ArcGraph::of_tables(f, g), f.starting_state(), g.accepting())
}

/// `M(n)[f][g]` via path existence in `G(f) ∪ H(g)`. In debug builds the
/// value is also checked against simulation of `A_n`.
pub fn m_entry(f: &PrefixTable, g: &SuffixTable) -> Result<bool> {
    same_size(f, g)?;
    let entry = graph_entry(f, g);
    debug_assert_eq!(
        entry,
        m_entry_by_simulation(f, g)?,
        "path criterion and simulation disagree on ({f}) x ({g})"
    );
    Ok(entry)
}

/// `M(n)[f][g]` by running `A_n` on the encoded string.
pub fn m_entry_by_simulation(f: &PrefixTable, g: &SuffixTable) -> Result<bool> {
    let word = encode_string(f, g)?;
    Ok(twonfa_accepts(&WitnessAutomaton::new(f.n())?, &word))
}

/// A 0/1 matrix with row and column labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledMatrix<R, C> {
    pub rows: Vec<R>,
    pub cols: Vec<C>,
    pub matrix: BoolMatrix,
}

impl<R: Display, C: Display> LabeledMatrix<R, C> {
    /// Writes the matrix to `path` and the labels, one per line, to
    /// `path.rows` and `path.cols`.
    pub fn write_files(&self, path: &Path) -> io::Result<()> {
        std::fs::write(path, self.matrix.to_text())?;
        let labels = |items: &mut dyn Iterator<Item = String>| {
            items.fold(String::new(), |mut s, l| {
                s.push_str(&l);
                s.push('\n');
                s
            })
        };
        std::fs::write(
            label_path(path, "rows"),
            labels(&mut self.rows.iter().map(ToString::to_string)),
        )?;
        std::fs::write(
            label_path(path, "cols"),
            labels(&mut self.cols.iter().map(ToString::to_string)),
        )
    }
}

/// `path` with `.ext` appended.
pub fn label_path(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// The acceptance matrix of `A_n` on the given rows and columns.
pub fn acceptance_matrix(rows: &[PrefixTable], cols: &[SuffixTable]) -> Result<BoolMatrix> {
    let n = rows.first().map(PrefixTable::n).or_else(|| cols.first().map(SuffixTable::n));
    if rows.iter().any(|f| Some(f.n()) != n) || cols.iter().any(|g| Some(g.n()) != n) {
        return Err(Error::argument("tables of different sizes"));
    }
    let packed: Vec<Vec<u64>> = rows
        .par_iter()
        .map(|f| {
            BoolMatrix::pack_row(
                cols.iter()
                    .map(|g| m_entry(f, g).expect("sizes checked")),
                cols.len(),
            )
        })
        .collect();
    Ok(BoolMatrix::from_packed_rows(cols.len(), packed))
}

fn check_matrix_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::capacity(
            format!("acceptance matrix for n = {n}"),
            MAX_ENUMERATION_N,
        ));
    }
    Ok(())
}

/// `M(n)`: all prefix tables × all suffix tables, canonical order.
pub fn build_m(n: usize) -> Result<LabeledMatrix<PrefixTable, SuffixTable>> {
    check_matrix_n(n)?;
    let rows = enumerate_prefix_tables(n)?;
    let cols = enumerate_suffix_tables(n)?;
    let matrix = acceptance_matrix(&rows, &cols)?;
    Ok(LabeledMatrix { rows, cols, matrix })
}

/// `K(n)`: the ordered rows of `M(n)`.
pub fn build_k(n: usize) -> Result<LabeledMatrix<PrefixTable, SuffixTable>> {
    check_matrix_n(n)?;
    let rows: Vec<PrefixTable> = enumerate_prefix_tables(n)?
        .into_iter()
        .filter(PrefixTable::is_ordered)
        .collect();
    let cols = enumerate_suffix_tables(n)?;
    let matrix = acceptance_matrix(&rows, &cols)?;
    Ok(LabeledMatrix { rows, cols, matrix })
}

/// The suffix table `g_I` for an ordered `f0` of rank `k ≥ 1` and
/// `I ⊆ {0..k−1}`. With `s = sl(v)`:
///
/// * `g_I(v) = { u : pl(u) ≤ s }` if `s ∉ I` and `s < k`;
/// * `g_I(v) = { u : pl(u) ≤ s + 1 }` if `s ∈ I` and `s + 1 < k`;
/// * `g_I(v) = [n] ∪ {Accept}` otherwise.
pub fn build_g_i(f0: &PrefixTable, layers_i: LayerSet) -> Result<SuffixTable> {
    let layers = LayerStructure::of(f0)?;
    build_g_i_from_layers(&layers, layers_i)
}

/// [`build_g_i`] with a precomputed layer structure of `f0`.
pub fn build_g_i_from_layers(layers: &LayerStructure, layers_i: LayerSet) -> Result<SuffixTable> {
    let k = layers.rank();
    if k == 0 {
        return Err(Error::argument("g_I needs a table of rank at least 1"));
    }
    if layers_i.bound() > k {
        return Err(Error::argument(format!("{layers_i} is not a subset of 0..{k}")));
    }
    let n = layers.n();
    let up_to = |level: usize| -> StateSet {
        (0..n).filter(|&u| layers.prefix_layer(u) <= level).collect()
    };
    let mut values = Vec::with_capacity(n);
    let mut accept = StateSet::EMPTY;
    for v in 0..n {
        let s = layers.suffix_layer(v);
        if !layers_i.contains(s) && s < k {
            values.push(up_to(s));
        } else if layers_i.contains(s) && s + 1 < k {
            values.push(up_to(s + 1));
        } else {
            values.push(StateSet::full(n));
            accept.insert(v);
        }
    }
    SuffixTable::new(values, accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::enumerate_ordered_by_filter;

    fn p(s: &str) -> PrefixTable {
        s.parse().unwrap()
    }

    fn g(s: &str) -> SuffixTable {
        s.parse().unwrap()
    }

    #[test]
    fn encoding() {
        let f = p("2; 1; 1");
        let gg = g("2; A; -");
        let w = encode_string(&f, &gg).unwrap();
        assert_eq!(w[0], GammaSymbol::StartState(0));
        assert_eq!(decode(&w).unwrap(), (f.clone(), gg.clone()));
        assert_eq!(encode_string(&p("2; 2; 1,2"), &gg).unwrap()[0], GammaSymbol::StartState(0));
        assert!(encode_string(&p("1; 1"), &gg).is_err());
        assert!(decode(&w[..2]).is_err());
        let mut bad = w.clone();
        bad[0] = GammaSymbol::StartState(1);
        assert!(decode(&bad).is_err());
    }

    #[test]
    fn entry_examples() {
        assert!(m_entry(&p("2; 1; 1"), &g("2; A; -")).unwrap());
        assert!(!m_entry(&p("2; 2; 2"), &g("2; A; -")).unwrap());
        assert!(m_entry(&p("2; 2; 1,2"), &g("2; A; 2")).unwrap());
    }

    #[test]
    fn entries_agree_with_simulation_n2() {
        for f in enumerate_prefix_tables(2).unwrap() {
            for gg in enumerate_suffix_tables(2).unwrap() {
                assert_eq!(
                    graph_entry(&f, &gg),
                    m_entry_by_simulation(&f, &gg).unwrap(),
                    "{f} x {gg}"
                );
            }
        }
    }

    #[test]
    fn m2_shape() {
        let m = build_m(2).unwrap();
        let k = build_k(2).unwrap();
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (7, 9));
        assert_eq!(m, k);
        assert!(matches!(build_m(5), Err(Error::Capacity { .. })));
    }

    #[test]
    fn g_i_examples() {
        let f0 = p("2; 1; 1,2");
        let g0 = build_g_i(&f0, LayerSet::EMPTY).unwrap();
        assert_eq!(g0.to_string(), "2; 1; A");
        assert_eq!(g0.accepting(), StateSet::singleton(1));
        let g1 = build_g_i(&f0, LayerSet::below(1)).unwrap();
        assert_eq!(g1.to_string(), "2; A; A");
        assert!(build_g_i(&f0, LayerSet::below(2)).is_err());
        assert!(build_g_i(&p("2; 1,2; 1,2"), LayerSet::EMPTY).is_err());
    }

    #[test]
    fn g_empty_accepts_top_layer() {
        for f0 in enumerate_ordered_by_filter(3).unwrap() {
            let layers = LayerStructure::of(&f0).unwrap();
            let k = layers.rank();
            if k == 0 {
                continue;
            }
            let top: StateSet = (0..3).filter(|&v| layers.suffix_layer(v) == k).collect();
            assert_eq!(build_g_i(&f0, LayerSet::EMPTY).unwrap().accepting(), top);
        }
    }

    #[test]
    fn label_files() {
        let dir = std::env::temp_dir().join(format!("witness-labels-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m2.mat");
        let m = build_m(2).unwrap();
        m.write_files(&path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(BoolMatrix::parse_text(&text).unwrap(), m.matrix);
        let rows = std::fs::read_to_string(label_path(&path, "rows")).unwrap();
        let parsed: Vec<PrefixTable> = rows.lines().map(|l| l.parse().unwrap()).collect();
        assert_eq!(parsed, m.rows);
        let cols = std::fs::read_to_string(label_path(&path, "cols")).unwrap();
        assert_eq!(cols.lines().count(), 9);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
