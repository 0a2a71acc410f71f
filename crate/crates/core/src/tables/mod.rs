//! Prefix and suffix tables.
//!
//! A prefix table `f` maps each state to a nonempty set of states and has a
//! *starting state* whose value is contained in every other value. A suffix
//! table `g` maps each state to a set of states, possibly extended by the
//! marker `Accept`; a value containing `Accept` must be the full set.
//!
//! Text form: `n; f(1); …; f(n)` with 1-based comma-separated states, `-` for
//! the empty set and `A` for the full set plus `Accept` (suffix tables only),
//! e.g. `3; 1; 1,2; 1,2,3` and `3; A; 2; -`.
//!
//! Canonical order of tables is lexicographic on the tuple of value bit masks,
//! with the accept mask most significant for suffix tables; this is the
//! derived `Ord` and the order of every enumeration.

mod enumerate;
mod graph;
mod layers;
mod prefix;
mod suffix;

pub use enumerate::{
    enumerate_ordered_by_filter, enumerate_prefix_tables, enumerate_suffix_tables,
    MAX_ENUMERATION_N,
};
pub use graph::{haspath, ArcGraph};
pub use layers::{
    break_set, breaks_through, drops_down, table_rank_via_matrix, LayerSet, LayerStructure,
};
pub use prefix::{Augmentation, PrefixTable};
pub use suffix::SuffixTable;

use crate::{Error, Result, StateSet};

/// Splits `n; v1; v2; …` and checks the number of values.
fn split_text(s: &str) -> Result<(usize, Vec<&str>)> {
    let mut parts = s.trim().split(';').map(str::trim);
    let n: usize = parts
        .next()
        .filter(|p| !p.is_empty())
        .ok_or_else(|| Error::parse("missing table size"))?
        .parse()
        .map_err(|_| Error::parse("table size is not a number"))?;
    if n == 0 || n > StateSet::MAX_STATES {
        return Err(Error::parse(format!(
            "table size must be in 1..={}",
            StateSet::MAX_STATES
        )));
    }
    let values: Vec<&str> = parts.collect();
    if values.len() != n {
        return Err(Error::parse(format!(
            "expected {n} values, found {}",
            values.len()
        )));
    }
    Ok((n, values))
}
