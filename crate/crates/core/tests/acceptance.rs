//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Run with `cargo test -p ufabound-core --test acceptance`; add
//! `--features extended` for the rank of K(4) modulo 2^31 − 1.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ufabound::combinatorics::{asymptotic_floor, enumerate_ordered_prefix_tables, factorial, table1_row};
use ufabound::crossing::random_instance;
use ufabound::linalg::{rank_exact_bool, rank_mod_p_bool};
use ufabound::tables::{enumerate_ordered_by_filter, enumerate_prefix_tables, enumerate_suffix_tables};
use ufabound::verify::{
    augmentation_identity_violations, g_i_accepting_violations, layer_claim_violations,
    path_criterion_disagreements,
};
use ufabound::witness::{build_k, build_m};
use ufabound::{count_ordered_prefix_tables, MERSENNE_31};

/// The lower-bound column of the comparison table, n = 1..8.
const ORDERED_COUNTS: [u64; 8] = [1, 7, 115, 3451, 164731, 11467387, 1096832395, 138027417451];

/// The four columns of the comparison table, n = 1..8.
const TABLE1: [[u64; 4]; 8] = [
    [1, 1, 1, 1],
    [6, 6, 7, 7],
    [39, 39, 115, 133],
    [276, 292, 3451, 7891],
    [2055, 2505, 164731, 1613581],
    [15798, 24306, 11467387, 1201168507],
    [124173, 263431, 1096832395, 3360710751133],
    [992232, 3154824, 138027417451, 36005748492454531],
];

type Outcome = Result<String, String>;

struct Criterion {
    id: &'static str,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn counting_formula() -> Outcome {
    for (i, &expected) in ORDERED_COUNTS.iter().enumerate() {
        let n = i + 1;
        let got = count_ordered_prefix_tables(n).map_err(err)?;
        ensure(got == BigUint::from(expected), || format!("n = {n}: {got} != {expected}"))?;
    }
    Ok("n = 1..8 exact".into())
}

fn table1_reproduction() -> Outcome {
    for (i, expected) in TABLE1.iter().enumerate() {
        let n = i + 1;
        let r = table1_row(n).map_err(err)?;
        let got = [r.dfa2ufa_lower, r.dfa2ufa_upper, r.nfa2ufa_lower, r.nfa2dfa];
        for (col, (g, &e)) in got.iter().zip(expected).enumerate() {
            ensure(*g == BigUint::from(e), || format!("n = {n}, column {}: {g} != {e}", col + 1))?;
        }
    }
    Ok("4 columns x n = 1..8 exact".into())
}

fn enumeration_consistency() -> Outcome {
    let mut sizes = Vec::new();
    for (n, expected) in [(2, 7), (3, 115), (4, 3451)] {
        let filtered = enumerate_ordered_by_filter(n).map_err(err)?;
        let generated = enumerate_ordered_prefix_tables(n).map_err(err)?;
        let a: HashSet<_> = filtered.iter().collect();
        let b: HashSet<_> = generated.iter().collect();
        ensure(a == b, || format!("n = {n}: enumerations differ as sets"))?;
        ensure(
            filtered.len() == expected && generated.len() == expected && b.len() == expected,
            || format!("n = {n}: sizes {} / {} (expected {expected})", filtered.len(), generated.len()),
        )?;
        sizes.push(expected.to_string());
    }
    Ok(format!("sizes {}", sizes.join(", ")))
}

fn rank_equals_count() -> Outcome {
    let m2 = build_m(2).map_err(err)?;
    let k2 = build_k(2).map_err(err)?;
    let (rm2, rk2) = (
        rank_exact_bool(&m2.matrix).map_err(err)?,
        rank_exact_bool(&k2.matrix).map_err(err)?,
    );
    ensure(rm2 == 7 && rk2 == 7, || format!("n = 2 exact ranks {rm2}, {rk2}"))?;

    let m3 = build_m(3).map_err(err)?;
    let k3 = build_k(3).map_err(err)?;
    ensure(
        (m3.matrix.rows(), m3.matrix.cols()) == (133, 217)
            && (k3.matrix.rows(), k3.matrix.cols()) == (115, 217),
        || "unexpected n = 3 matrix shapes".into(),
    )?;
    let rm3 = rank_mod_p_bool(&m3.matrix, MERSENNE_31).map_err(err)?;
    let rk3 = rank_mod_p_bool(&k3.matrix, MERSENNE_31).map_err(err)?;
    let ek3 = rank_exact_bool(&k3.matrix).map_err(err)?;
    ensure(rm3 == 115 && rk3 == 115 && ek3 == 115, || {
        format!("n = 3: rank M mod p {rm3}, rank K mod p {rk3}, exact rank K {ek3}")
    })?;
    Ok("rank M(2) = rank K(2) = 7; rank M(3) = rank K(3) = 115 mod p, 115 exact on K(3) 115x217".into())
}

#[cfg(feature = "extended")]
fn rank_k4() -> Outcome {
    let k4 = build_k(4).map_err(err)?;
    ensure(
        (k4.matrix.rows(), k4.matrix.cols()) == (3451, 17985),
        || "unexpected K(4) shape".into(),
    )?;
    let r = rank_mod_p_bool(&k4.matrix, MERSENNE_31).map_err(err)?;
    ensure(r == 3451, || format!("rank K(4) mod p = {r}"))?;
    Ok("rank K(4) mod 2^31-1 = 3451 on 3451x17985".into())
}

fn path_criterion() -> Outcome {
    let p2 = enumerate_prefix_tables(2).map_err(err)?;
    let s2 = enumerate_suffix_tables(2).map_err(err)?;
    let pairs: Vec<_> = p2.iter().flat_map(|f| s2.iter().map(move |g| (f, g))).collect();
    ensure(pairs.len() == 63, || format!("{} pairs at n = 2", pairs.len()))?;
    let bad2 = path_criterion_disagreements(pairs).map_err(err)?;

    let p3 = enumerate_prefix_tables(3).map_err(err)?;
    let s3 = enumerate_suffix_tables(3).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random: Vec<_> = (0..10_000)
        .map(|_| (p3.choose(&mut rng).unwrap(), s3.choose(&mut rng).unwrap()))
        .collect();
    let bad3 = path_criterion_disagreements(random).map_err(err)?;
    ensure(bad2.is_empty() && bad3.is_empty(), || {
        format!("{} + {} disagreements, first {:?}", bad2.len(), bad3.len(), bad2.iter().chain(&bad3).next())
    })?;
    Ok("63 pairs at n = 2, 10000 random pairs at n = 3, 0 disagreements".into())
}

fn augmentation_identity() -> Outcome {
    let prefixes = enumerate_prefix_tables(3).map_err(err)?;
    let suffixes = enumerate_suffix_tables(3).map_err(err)?;
    let (checked, bad) = augmentation_identity_violations(&prefixes, &suffixes).map_err(err)?;
    ensure(checked > 0 && bad.is_empty(), || {
        format!("{} violations of {checked}, first {:?}", bad.len(), bad.first())
    })?;
    Ok(format!("{checked} (quadruple, g) instances at n = 3, 0 violations"))
}

fn layer_claims() -> Outcome {
    let o3 = enumerate_ordered_by_filter(3).map_err(err)?;
    let mut bad = Vec::new();
    for f0 in &o3 {
        bad.extend(g_i_accepting_violations(f0).map_err(err)?);
        for f in &o3 {
            bad.extend(layer_claim_violations(f, f0).map_err(err)?);
        }
    }
    let o4 = enumerate_ordered_by_filter(4).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples = 2_000;
    for _ in 0..samples {
        let f = o4.choose(&mut rng).unwrap();
        let f0 = o4.choose(&mut rng).unwrap();
        bad.extend(g_i_accepting_violations(f0).map_err(err)?);
        bad.extend(layer_claim_violations(f, f0).map_err(err)?);
    }
    ensure(bad.is_empty(), || format!("{} violations, first {}", bad.len(), bad[0]))?;
    Ok(format!(
        "{} exhaustive pairs at n = 3, {samples} random pairs at n = 4, 0 violations",
        o3.len() * o3.len()
    ))
}

fn optimality_campaign() -> Outcome {
    let mut summary = Vec::new();
    for (states, instances, bound, base) in [(2usize, 500u64, 7usize, 10_000u64), (3, 100, 115, 20_000)] {
        let mut max_rank = 0;
        for seed in base..base + instances {
            let inst = random_instance(states, 2, seed).map_err(err)?;
            let report = inst.verify().map_err(err)?;
            ensure(report.rank <= bound, || format!("seed {seed}: rank {} > {bound}", report.rank))?;
            ensure(
                report.rank == report.rank_nonempty && report.rank == report.rank_distinct,
                || format!("seed {seed}: ranks {} / {} / {}", report.rank, report.rank_nonempty, report.rank_distinct),
            )?;
            ensure(report.ok, || format!("seed {seed}: {}", report.violations.join("; ")))?;
            max_rank = max_rank.max(report.rank);
        }
        summary.push(format!("{instances} {states}-state (max rank {max_rank} <= {bound})"));
    }
    Ok(summary.join(", "))
}

fn asymptotic_floor_check() -> Outcome {
    for n in 2..=8 {
        let floor = asymptotic_floor(n).map_err(err)?;
        let count = count_ordered_prefix_tables(n).map_err(err)?;
        ensure(floor <= count, || format!("n = {n}: floor {floor} > count {count}"))?;
        if n >= 6 {
            let upper = (BigUint::from(1u8) << n) * factorial(n);
            ensure(count > upper, || format!("n = {n}: count {count} <= 2^n n! = {upper}"))?;
        }
    }
    Ok("floor <= count for n = 2..8; count > 2^n n! for n = 6..8".into())
}

fn main() -> ExitCode {
    let criteria = vec![
        Criterion { id: "1", title: "counting formula", limit: Some(Duration::from_secs(1)), run: counting_formula },
        Criterion { id: "2", title: "table reproduction", limit: Some(Duration::from_secs(1)), run: table1_reproduction },
        Criterion { id: "3", title: "enumeration consistency", limit: Some(Duration::from_secs(10)), run: enumeration_consistency },
        Criterion { id: "4", title: "rank equals count", limit: Some(Duration::from_secs(60)), run: rank_equals_count },
        Criterion { id: "5", title: "path criterion agreement", limit: None, run: path_criterion },
        Criterion { id: "6", title: "augmentation identity", limit: None, run: augmentation_identity },
        Criterion { id: "7", title: "layer claims", limit: None, run: layer_claims },
        Criterion { id: "8", title: "optimality campaign", limit: Some(Duration::from_secs(300)), run: optimality_campaign },
        Criterion { id: "9", title: "asymptotic floor", limit: None, run: asymptotic_floor_check },
    ];
    #[cfg(feature = "extended")]
    let criteria = {
        let mut c = criteria;
        c.push(Criterion { id: "4x", title: "rank of K(4)", limit: None, run: rank_k4 });
        c
    };

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = c.limit.filter(|&l| elapsed > l);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(l)) => ("FAIL", format!("{d}; exceeded {l:?}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} criterion {:<2} {:<26} [{elapsed:.2?}] {detail}", c.id, c.title);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
