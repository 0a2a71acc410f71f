//! Exact rank of integer matrices over ℚ and over prime fields.
//!
//! Rank over ℚ uses fraction-free (Bareiss) elimination with pivots chosen as
//! the first nonzero entry in column order. Rank modulo a prime `p` is a lower
//! bound on the rank over ℚ; when it matches a claimed value it certifies it.

mod bool_matrix;
mod primes;

pub use bool_matrix::BoolMatrix;
pub use primes::is_prime;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::{Error, Result};

/// The Mersenne prime 2³¹ − 1, the default modulus.
pub const MERSENNE_31: u64 = 2_147_483_647;

/// Largest entry count accepted by [`rank_exact`].
pub const EXACT_ENTRY_LIMIT: usize = 10_000_000;

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from rows of machine integers; rows must be equally long.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::argument("rows of unequal length"));
        }
        Ok(IntMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j].into()))
    }

    pub fn from_bool(m: &BoolMatrix) -> Self {
        IntMatrix::from_fn(m.rows(), m.cols(), |i, j| BigInt::from(m.get(i, j) as u8))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Parses the 0/1 text format (`rows cols`, then one line per row).
    pub fn parse_text(text: &str) -> Result<Self> {
        BoolMatrix::parse_text(text).map(|m| IntMatrix::from_bool(&m))
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[BigInt]>::to_vec)
            .collect()
    }
}

/// Rank over ℚ by fraction-free Gaussian elimination.
///
/// Refuses matrices with more than [`EXACT_ENTRY_LIMIT`] entries.
pub fn rank_exact(m: &IntMatrix) -> Result<usize> {
    let entries = m.rows.saturating_mul(m.cols);
    if entries > EXACT_ENTRY_LIMIT {
        return Err(Error::capacity(
            format!("exact rank of a {}x{} matrix", m.rows, m.cols),
            EXACT_ENTRY_LIMIT,
        ));
    }
    if m.cols == 0 {
        return Ok(0);
    }
    let mut a = m.to_rows();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..m.cols {
        if rank == m.rows {
            break;
        }
        let Some(p) = (rank..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        rest.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..m.cols {
                // Every quotient is a minor of the input, so division is exact.
                let t = pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = t / &prev;
            }
        });
        prev = pivot.clone();
        rank += 1;
    }
    Ok(rank)
}

fn check_modulus(p: u64) -> Result<()> {
    if p >= 1 << 32 {
        return Err(Error::argument(format!("modulus {p} must be below 2^32")));
    }
    if !is_prime(p) {
        return Err(Error::argument(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Rank over GF(`p`). `p` must be a prime below 2³².
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    check_modulus(p)?;
    let big_p = BigInt::from(p);
    let rows = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .map(|j| {
                    let mut r = m.get(i, j) % &big_p;
                    if r.is_negative() {
                        r += &big_p;
                    }
                    r.to_u32().expect("residue below 2^32")
                })
                .collect()
        })
        .collect();
    Ok(eliminate_mod_p(rows, m.cols, p))
}

/// [`rank_mod_p`] reading a 0/1 matrix directly, without big integers.
pub fn rank_mod_p_bool(m: &BoolMatrix, p: u64) -> Result<usize> {
    check_modulus(p)?;
    let rows = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u32).collect())
        .collect();
    Ok(eliminate_mod_p(rows, m.cols(), p))
}

/// [`rank_exact`] on a 0/1 matrix.
pub fn rank_exact_bool(m: &BoolMatrix) -> Result<usize> {
    rank_exact(&IntMatrix::from_bool(m))
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn eliminate_mod_p(mut a: Vec<Vec<u32>>, cols: usize, p: u64) -> usize {
    let n_rows = a.len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == n_rows {
            break;
        }
        let Some(piv) = (rank..n_rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inverse_mod(a[rank][c] as u64, p);
        for x in a[rank][c..].iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        rest.par_iter_mut().for_each(|row| {
            let factor = row[c] as u64;
            if factor == 0 {
                return;
            }
            let neg = p - factor;
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = ((*x as u64 + neg * y as u64) % p) as u32;
                }
            }
        });
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    /// Textbook Gaussian elimination over ℚ.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != rank && !row[c].is_zero() {
                    let factor = &row[c] / &pivot[c];
                    for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *x -= &factor * y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn int(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn small_examples() {
        let id: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|j| (i == j) as i64).collect())
            .collect();
        assert_eq!(rank_exact(&int(&id)).unwrap(), 3);
        assert_eq!(rank_mod_p(&int(&id), 5).unwrap(), 3);
        assert_eq!(rank_mod_p(&int(&id), MERSENNE_31).unwrap(), 3);
        let ones = vec![vec![1i64; 4]; 4];
        assert_eq!(rank_exact(&int(&ones)).unwrap(), 1);
        assert_eq!(
            rank_mod_p(&int(&[vec![1, 1], vec![1, 1]]), MERSENNE_31).unwrap(),
            1
        );
        assert_eq!(rank_exact(&IntMatrix::zeros(0, 0)).unwrap(), 0);
        assert_eq!(rank_exact(&IntMatrix::zeros(3, 0)).unwrap(), 0);
        assert_eq!(rank_exact(&IntMatrix::zeros(0, 3)).unwrap(), 0);
    }

    #[test]
    fn modular_rank_can_drop() {
        // det = 2: full rank over ℚ, rank 1 over GF(2).
        let m = int(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank_exact(&m).unwrap(), 2);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 2);
    }

    #[test]
    fn rejects_bad_moduli() {
        let m = int(&[vec![1]]);
        assert!(matches!(rank_mod_p(&m, 4), Err(Error::Argument(_))));
        assert!(matches!(rank_mod_p(&m, 1), Err(Error::Argument(_))));
        assert!(matches!(rank_mod_p(&m, 4_294_967_311), Err(Error::Argument(_))));
    }

    #[test]
    fn exact_rank_capacity() {
        let m = BoolMatrix::zeros(10_001, 1_000);
        assert!(matches!(rank_exact_bool(&m), Err(Error::Capacity { .. })));
    }

    #[test]
    fn text_round_trip() {
        let m = IntMatrix::parse_text("2 3\n101\n011\n").unwrap();
        assert_eq!(rank_exact(&m).unwrap(), 2);
        assert!(IntMatrix::parse_text("2 3\n101\n").is_err());
    }

    fn arb_matrix(max: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (0usize..7, 0usize..7).prop_flat_map(move |(r, c)| {
            prop::collection::vec(prop::collection::vec(-max..=max, c), r)
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_oracle(rows in arb_matrix(3)) {
            prop_assert_eq!(rank_exact(&int(&rows)).unwrap(), rational_rank(&rows));
        }

        #[test]
        fn zero_one_matches_rational_oracle(rows in arb_matrix(1).prop_map(|m| {
            m.into_iter().map(|r| r.into_iter().map(|x| x.abs()).collect()).collect::<Vec<_>>()
        })) {
            let b = BoolMatrix::from_fn(rows.len(), rows.first().map_or(0, Vec::len), |i, j| rows[i][j] == 1);
            prop_assert_eq!(rank_exact_bool(&b).unwrap(), rational_rank(&rows));
            prop_assert_eq!(rank_mod_p_bool(&b, MERSENNE_31).unwrap(), rational_rank(&rows));
        }

        #[test]
        fn modular_rank_is_a_lower_bound(rows in arb_matrix(4), p in prop::sample::select(vec![2u64, 3, 5, 7, 65_537, MERSENNE_31])) {
            let m = int(&rows);
            prop_assert!(rank_mod_p(&m, p).unwrap() <= rank_exact(&m).unwrap());
        }

        #[test]
        fn transpose_invariance(rows in arb_matrix(3)) {
            let m = int(&rows);
            prop_assert_eq!(rank_exact(&m).unwrap(), rank_exact(&m.transpose()).unwrap());
        }

        #[test]
        fn permutation_invariance(rows in arb_matrix(2), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rng);
            let cols = rows.first().map_or(0, Vec::len);
            let mut perm: Vec<usize> = (0..cols).collect();
            perm.shuffle(&mut rng);
            let shuffled: Vec<Vec<i64>> = shuffled.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
            prop_assert_eq!(rank_exact(&int(&rows)).unwrap(), rank_exact(&int(&shuffled)).unwrap());
            prop_assert_eq!(
                rank_mod_p(&int(&rows), MERSENNE_31).unwrap(),
                rank_mod_p(&int(&shuffled), MERSENNE_31).unwrap()
            );
        }

        #[test]
        fn zero_and_duplicate_lines_do_not_change_rank(rows in arb_matrix(2), pick in any::<prop::sample::Index>()) {
            prop_assume!(!rows.is_empty());
            let cols = rows[0].len();
            let base = rank_exact(&int(&rows)).unwrap();
            let mut more = rows.clone();
            more.push(vec![0; cols]);
            more.push(rows[pick.index(rows.len())].clone());
            prop_assert_eq!(rank_exact(&int(&more)).unwrap(), base);
            prop_assert_eq!(rank_mod_p(&int(&more), MERSENNE_31).unwrap(), rank_mod_p(&int(&rows), MERSENNE_31).unwrap());
            if cols > 0 {
                let j = pick.index(cols);
                let wider: Vec<Vec<i64>> = rows.iter().map(|r| {
                    let mut r = r.clone();
                    r.push(0);
                    r.push(r[j]);
                    r
                }).collect();
                prop_assert_eq!(rank_exact(&int(&wider)).unwrap(), base);
            }
        }
    }
}
