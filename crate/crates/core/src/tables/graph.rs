use super::{PrefixTable, SuffixTable};
use crate::StateSet;

/// A bipartite directed graph on left vertices `(L, u)` and right vertices
/// `(R, v)`, `u, v < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGraph {
    n: usize,
    /// `forward[u]`: right vertices reachable by one arc from `(L, u)`.
    forward: Vec<StateSet>,
    /// `backward[v]`: left vertices reachable by one arc from `(R, v)`.
    backward: Vec<StateSet>,
}

impl ArcGraph {
    pub fn new(n: usize) -> Self {
        ArcGraph {
            n,
            forward: vec![StateSet::EMPTY; n],
            backward: vec![StateSet::EMPTY; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the arc `(L, u) → (R, v)`.
    pub fn add_forward(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n);
        self.forward[u].insert(v);
    }

    /// Adds the arc `(R, v) → (L, u)`.
    pub fn add_backward(&mut self, v: usize, u: usize) {
        assert!(u < self.n && v < self.n);
        self.backward[v].insert(u);
    }

    /// `G(f)`: arcs `(L, u) → (R, v)` for `v ∈ f(u)`.
    pub fn of_prefix(f: &PrefixTable) -> Self {
        let mut g = ArcGraph::new(f.n());
        g.forward.copy_from_slice(f.values());
        g
    }

    /// `G(f) ∪ H(g)`; `H(g)` has arcs `(R, v) → (L, u)` for `u ∈ g(v)`.
    pub fn of_tables(f: &PrefixTable, g: &SuffixTable) -> Self {
        assert_eq!(f.n(), g.n(), "tables of different sizes");
        let mut graph = ArcGraph::of_prefix(f);
        graph.backward.copy_from_slice(g.values());
        graph
    }

    /// Right vertices reachable from `(L, s)`.
    pub fn reachable_right(&self, s: usize) -> StateSet {
        let mut left = StateSet::singleton(s);
        let mut right = StateSet::EMPTY;
        let mut frontier = left;
        while !frontier.is_empty() {
            let mut new_right = StateSet::EMPTY;
            for u in frontier {
                new_right |= self.forward[u];
            }
            let new_right = new_right - right;
            right |= new_right;
            let mut new_left = StateSet::EMPTY;
            for v in new_right {
                new_left |= self.backward[v];
            }
            frontier = new_left - left;
            left |= frontier;
        }
        right
    }
}

/// Whether a directed path leads from `(L, s)` to some `(R, t)`, `t ∈ targets`.
pub fn haspath(graph: &ArcGraph, s: usize, targets: StateSet) -> bool {
    !(graph.reachable_right(s) & targets).is_empty()
}
