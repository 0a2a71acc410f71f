use super::{PrefixTable, SuffixTable};
use crate::{Error, Result, StateSet};

/// Largest `n` for exhaustive table enumeration.
pub const MAX_ENUMERATION_N: usize = 4;

fn check_n(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::argument("n must be positive"));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::capacity(
            format!("{what} enumeration for n = {n}"),
            MAX_ENUMERATION_N,
        ));
    }
    Ok(())
}

/// Calls `visit` on every tuple of `n` masks, each drawn from `choices`,
/// in lexicographic order.
fn for_each_tuple(n: usize, choices: &[u32], mut visit: impl FnMut(&[StateSet])) {
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<StateSet> = vec![StateSet::from_bits(choices[0]); n];
    loop {
        visit(&tuple);
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices.len() {
                tuple[pos] = StateSet::from_bits(choices[idx[pos]]);
                break;
            }
            idx[pos] = 0;
            tuple[pos] = StateSet::from_bits(choices[0]);
        }
    }
}

/// Every prefix table on `n ≤ 4` states, in canonical order.
pub fn enumerate_prefix_tables(n: usize) -> Result<Vec<PrefixTable>> {
    check_n(n, "prefix table")?;
    let nonempty: Vec<u32> = (1..1u32 << n).collect();
    let mut out = Vec::new();
    for_each_tuple(n, &nonempty, |values| {
        if let Ok(f) = PrefixTable::new(values.to_vec()) {
            out.push(f);
        }
    });
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}

/// The ordered prefix tables on `n ≤ 4` states, by filtering all prefix tables.
pub fn enumerate_ordered_by_filter(n: usize) -> Result<Vec<PrefixTable>> {
    Ok(enumerate_prefix_tables(n)?
        .into_iter()
        .filter(PrefixTable::is_ordered)
        .collect())
}

/// Every suffix table on `n ≤ 4` states, in canonical order.
pub fn enumerate_suffix_tables(n: usize) -> Result<Vec<SuffixTable>> {
    check_n(n, "suffix table")?;
    let full = StateSet::full(n);
    let any: Vec<u32> = (0..1u32 << n).collect();
    let mut out = Vec::new();
    for accept in 1..1u32 << n {
        let accept = StateSet::from_bits(accept);
        let free = n - accept.len();
        let mut visit = |free_values: &[StateSet]| {
            let mut it = free_values.iter();
            let values = (0..n)
                .map(|v| {
                    if accept.contains(v) {
                        full
                    } else {
                        *it.next().expect("one free value per non-accepting index")
                    }
                })
                .collect();
            out.push(SuffixTable::new(values, accept).expect("valid by construction"));
        };
        if free == 0 {
            visit(&[]);
        } else {
            for_each_tuple(free, &any, visit);
        }
    }
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    Ok(out)
}
