//! Named self-checks of the whole construction for a given `n`.
//!
//! Each check returns pass, fail (with a reason) or skipped (with the reason
//! it does not apply at this `n`). The property helpers are public so that
//! test suites can drive them on their own inputs.

use std::collections::HashSet;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{
    asymptotic_floor, count_ordered_prefix_tables, enumerate_ordered_prefix_tables, table1_row,
    BigCount, MAX_BIJECTION_N,
};
use crate::crossing::random_instance;
use crate::linalg::{rank_exact_bool, rank_mod_p_bool, MERSENNE_31};
use crate::tables::{
    enumerate_ordered_by_filter, enumerate_prefix_tables, enumerate_suffix_tables,
    table_rank_via_matrix, LayerSet, LayerStructure, PrefixTable, SuffixTable,
    MAX_ENUMERATION_N,
};
use crate::witness::{build_g_i_from_layers, build_k, build_m, m_entry, m_entry_by_simulation};
use crate::{Error, Result, StateSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Level {
    /// Sampled versions of the expensive checks.
    #[default]
    Quick,
    /// Exhaustive where feasible, larger samples elsewhere.
    Full,
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            _ => Err(Error::parse(format!("unknown level `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub detail: String,
    pub outcome: Outcome,
}

impl CheckResult {
    pub fn failed(&self) -> bool {
        matches!(self.outcome, Outcome::Fail(_))
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS  {:<28} {}", self.name, self.detail),
            Outcome::Fail(why) => write!(f, "FAIL  {:<28} {} -- {why}", self.name, self.detail),
            Outcome::Skipped(why) => write!(f, "SKIP  {:<28} {why}", self.name),
        }
    }
}

/// Pairs on which the path criterion and simulation of the witness automaton
/// disagree.
pub fn path_criterion_disagreements<'a>(
    pairs: impl IntoIterator<Item = (&'a PrefixTable, &'a SuffixTable)>,
) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for (f, g) in pairs {
        let by_graph =
            crate::tables::haspath(&crate::tables::ArcGraph::of_tables(f, g), f.starting_state(), g.accepting());
        if by_graph != m_entry_by_simulation(f, g)? {
            bad.push(format!("({f}) x ({g})"));
        }
    }
    Ok(bad)
}

/// For every augmentation quadruple of every table in `tables` and every `g`
/// in `suffixes`: `M[f][g] + M[f_ee'][g] = M[f_e][g] + M[f_e'][g]`.
/// Returns the number of (quadruple, column) instances checked and the violations.
pub fn augmentation_identity_violations(
    tables: &[PrefixTable],
    suffixes: &[SuffixTable],
) -> Result<(usize, Vec<String>)> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in tables {
        for (u1, u2, v1, v2) in f.augmentation_quadruples() {
            let a = f.augment(u1, u2, v1, v2)?;
            for g in suffixes {
                let e = |t: &PrefixTable| m_entry(t, g).map(u8::from);
                checked += 1;
                if e(f)? + e(&a.with_both)? != e(&a.with_e)? + e(&a.with_e_prime)? {
                    bad.push(format!("f = {f}, quadruple ({u1},{u2},{v1},{v2}), g = {g}"));
                }
            }
        }
    }
    Ok((checked, bad))
}

/// The accepting set of every `g_I` built from `f0`: all `v` with
/// `sl(v) ≥ k−1` if `k−1 ∈ I`, else those with `sl(v) = k`.
pub fn g_i_accepting_violations(f0: &PrefixTable) -> Result<Vec<String>> {
    let layers = LayerStructure::of(f0)?;
    let k = layers.rank();
    let mut bad = Vec::new();
    if k == 0 {
        return Ok(bad);
    }
    for i_set in LayerSet::subsets_below(k) {
        let g = build_g_i_from_layers(&layers, i_set)?;
        let expected: StateSet = (0..f0.n())
            .filter(|&v| {
                let s = layers.suffix_layer(v);
                if i_set.contains(k - 1) { s + 1 >= k } else { s == k }
            })
            .collect();
        if g.accepting() != expected {
            bad.push(format!("f0 = {f0}, I = {i_set}: A(g_I) = {}, expected {expected}", g.accepting()));
        }
    }
    Ok(bad)
}

/// For ordered `f` and `f0`:
/// * if `f ≠ f0` and `|f| ≥ |f0|`, `f` breaks through some layer of `f0`;
/// * if `f` drops down from some layer, `M[f][g_I] = 0` for every `I`;
/// * otherwise `M[f][g_I] = 1` iff `I ∪ B(f) = {0..k−1}`.
pub fn layer_claim_violations(f: &PrefixTable, f0: &PrefixTable) -> Result<Vec<String>> {
    let layers = LayerStructure::of(f0)?;
    if !f.is_ordered() {
        return Err(Error::argument(format!("{f} is not ordered")));
    }
    let k = layers.rank();
    let breaks = layers.break_set(f);
    let drops = !layers.drop_set(f).is_empty();
    let mut bad = Vec::new();
    if f != f0 && f.size() >= f0.size() && breaks.is_empty() {
        bad.push(format!("f = {f}, f0 = {f0}: no breakthrough"));
    }
    if k == 0 {
        return Ok(bad);
    }
    let all = LayerSet::below(k);
    for i_set in LayerSet::subsets_below(k) {
        let entry = m_entry(f, &build_g_i_from_layers(&layers, i_set)?)?;
        let expected = !drops && i_set.union(breaks) == all;
        if entry != expected {
            bad.push(format!(
                "f = {f}, f0 = {f0}, I = {i_set}: entry {}, expected {} (B = {breaks}, drops = {drops})",
                entry as u8, expected as u8
            ));
        }
    }
    Ok(bad)
}

fn pass(name: &'static str, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        detail: detail.into(),
        outcome: Outcome::Pass,
    }
}

fn judge(name: &'static str, detail: impl Into<String>, bad: &[String]) -> CheckResult {
    let detail = detail.into();
    if bad.is_empty() {
        return pass(name, detail);
    }
    CheckResult {
        name,
        detail,
        outcome: Outcome::Fail(format!("{} violation(s), first: {}", bad.len(), bad[0])),
    }
}

fn skipped(name: &'static str, why: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        detail: String::new(),
        outcome: Outcome::Skipped(why.into()),
    }
}

/// Runs every named check for `n`; `seed` drives all sampling.
pub fn run_checks(n: usize, level: Level, seed: u64) -> Result<Vec<CheckResult>> {
    if n == 0 || n > 8 {
        return Err(Error::argument("verify supports 1 <= n <= 8"));
    }
    let full = level == Level::Full;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let count = count_ordered_prefix_tables(n)?;

    // Counting formulas.
    let row = table1_row(n)?;
    let floor = asymptotic_floor(n)?;
    let mut bad = Vec::new();
    if row.nfa2ufa_lower != count {
        bad.push("table row disagrees with the count".to_string());
    }
    if floor > count {
        bad.push(format!("floor {floor} exceeds count {count}"));
    }
    out.push(judge("count-formula", format!("count = {count}, floor = {floor}"), &bad));

    // Enumerations.
    let ordered = if n <= MAX_ENUMERATION_N {
        let filtered = enumerate_ordered_by_filter(n)?;
        let generated = enumerate_ordered_prefix_tables(n)?;
        let a: HashSet<_> = filtered.iter().collect();
        let b: HashSet<_> = generated.iter().collect();
        let mut bad = Vec::new();
        if a != b || generated.len() != b.len() {
            bad.push("filter and layer-function enumerations differ".to_string());
        }
        if BigCount::from(filtered.len()) != count {
            bad.push(format!("{} ordered tables, count says {count}", filtered.len()));
        }
        out.push(judge("enumeration-consistency", format!("{} ordered tables", filtered.len()), &bad));
        Some(filtered)
    } else if n <= MAX_BIJECTION_N {
        let generated = enumerate_ordered_prefix_tables(n)?;
        let distinct: HashSet<_> = generated.iter().collect();
        let ok = distinct.len() == generated.len()
            && BigCount::from(generated.len()) == count
            && generated.iter().all(PrefixTable::is_ordered);
        let bad = if ok { vec![] } else { vec!["generated tables are not the ordered tables".into()] };
        out.push(judge("enumeration-consistency", format!("{} generated tables", generated.len()), &bad));
        None
    } else {
        out.push(skipped("enumeration-consistency", format!("n > {MAX_BIJECTION_N}")));
        None
    };

    let Some(ordered) = ordered else {
        for name in [
            "table-rank",
            "path-criterion",
            "augmentation-identity",
            "g_I-accepting-set",
            "layer-claims",
            "matrix-rank",
        ] {
            out.push(skipped(name, format!("tables enumerated only for n <= {MAX_ENUMERATION_N}")));
        }
        out.push(optimality_campaign(n, if full { 200 } else { 20 }, seed)?);
        return Ok(out);
    };
    let prefixes = enumerate_prefix_tables(n)?;
    let suffixes = enumerate_suffix_tables(n)?;

    // Table rank equals the rank of J − M(f).
    let mut bad = Vec::new();
    for f in &ordered {
        let k = LayerStructure::of(f)?.rank();
        let r = table_rank_via_matrix(f)?;
        if r != k {
            bad.push(format!("{f}: layer rank {k}, matrix rank {r}"));
        }
        if LayerStructure::of(f)?.prefix_layer(f.starting_state()) != 0 {
            bad.push(format!("{f}: starting state not on layer 0"));
        }
    }
    out.push(judge("table-rank", format!("{} ordered tables", ordered.len()), &bad));

    // Path criterion versus simulation.
    let total = prefixes.len() * suffixes.len();
    let samples = if full { 10_000 } else { 1_000 };
    let (pairs, how): (Vec<(&PrefixTable, &SuffixTable)>, String) = if total <= samples {
        (
            prefixes.iter().flat_map(|f| suffixes.iter().map(move |g| (f, g))).collect(),
            format!("all {total} pairs"),
        )
    } else {
        (
            (0..samples)
                .map(|_| (prefixes.choose(&mut rng).unwrap(), suffixes.choose(&mut rng).unwrap()))
                .collect(),
            format!("{samples} random pairs"),
        )
    };
    let bad = path_criterion_disagreements(pairs)?;
    out.push(judge("path-criterion", how, &bad));

    // Augmentation identity.
    let unordered: Vec<PrefixTable> = prefixes.iter().filter(|f| !f.is_ordered()).cloned().collect();
    let (rows, cols): (Vec<PrefixTable>, Vec<SuffixTable>) = if n <= 3 || full {
        (unordered, suffixes.clone())
    } else {
        (
            unordered.choose_multiple(&mut rng, 20).cloned().collect(),
            suffixes.choose_multiple(&mut rng, 200).cloned().collect(),
        )
    };
    let (checked, bad) = augmentation_identity_violations(&rows, &cols)?;
    out.push(judge("augmentation-identity", format!("{checked} instances"), &bad));

    // g_I accepting sets and the breakthrough / drop-down claims.
    let mut bad = Vec::new();
    for f0 in &ordered {
        bad.extend(g_i_accepting_violations(f0)?);
    }
    out.push(judge("g_I-accepting-set", format!("{} tables", ordered.len()), &bad));

    let pair_count = ordered.len() * ordered.len();
    let limit = if full { 20_000 } else { 1_000 };
    let (pairs, how): (Vec<(&PrefixTable, &PrefixTable)>, String) = if pair_count <= limit {
        (
            ordered.iter().flat_map(|f| ordered.iter().map(move |f0| (f, f0))).collect(),
            format!("all {pair_count} pairs"),
        )
    } else {
        (
            (0..limit)
                .map(|_| (ordered.choose(&mut rng).unwrap(), ordered.choose(&mut rng).unwrap()))
                .collect(),
            format!("{limit} random pairs"),
        )
    };
    let mut bad = Vec::new();
    for (f, f0) in pairs {
        bad.extend(layer_claim_violations(f, f0)?);
    }
    out.push(judge("layer-claims", how, &bad));

    // Rank of the acceptance matrices.
    out.push(if n <= 3 || full {
        matrix_rank_check(n, &count)?
    } else {
        skipped("matrix-rank", "runs only at --level full for n = 4")
    });

    out.push(optimality_campaign(n, if full { 200 } else { 20 }, seed)?);
    Ok(out)
}

fn matrix_rank_check(n: usize, count: &BigCount) -> Result<CheckResult> {
    let k = build_k(n)?;
    let mut bad = Vec::new();
    let detail = if n <= 3 {
        let m = build_m(n)?;
        let rm = rank_mod_p_bool(&m.matrix, MERSENNE_31)?;
        let rk = rank_mod_p_bool(&k.matrix, MERSENNE_31)?;
        let exact = rank_exact_bool(&k.matrix)?;
        for (what, r) in [("M mod p", rm), ("K mod p", rk), ("K exact", exact)] {
            if BigCount::from(r) != *count {
                bad.push(format!("rank {what} = {r}, expected {count}"));
            }
        }
        if n <= 2 {
            let exact_m = rank_exact_bool(&m.matrix)?;
            if BigCount::from(exact_m) != *count {
                bad.push(format!("exact rank of M = {exact_m}"));
            }
        }
        format!(
            "M {}x{}, K {}x{}, rank {rk}",
            m.matrix.rows(),
            m.matrix.cols(),
            k.matrix.rows(),
            k.matrix.cols()
        )
    } else {
        let rk = rank_mod_p_bool(&k.matrix, MERSENNE_31)?;
        if BigCount::from(rk) != *count {
            bad.push(format!("rank of K mod p = {rk}, expected {count}"));
        }
        format!("K {}x{}, rank mod p {rk}", k.matrix.rows(), k.matrix.cols())
    };
    Ok(judge("matrix-rank", detail, &bad))
}

fn optimality_campaign(n: usize, instances: u64, seed: u64) -> Result<CheckResult> {
    if n > 4 {
        return Ok(skipped("optimality-campaign", "runs for n <= 4"));
    }
    let mut bad = Vec::new();
    let mut max_rank = 0;
    for i in 0..instances {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
        let report = random_instance(n, 2, s)?.verify()?;
        max_rank = max_rank.max(report.rank);
        if !report.ok {
            bad.push(format!("seed {s}: {}", report.violations.join("; ")));
        }
    }
    Ok(judge(
        "optimality-campaign",
        format!("{instances} random {n}-state 2NFAs, max rank {max_rank}"),
        &bad,
    ))
}
