use std::fmt::Write as _;

use crate::{Error, Result};

/// A dense 0/1 matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BoolMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BoolMatrix {
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BoolMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Assembles a matrix from packed rows as produced by [`BoolMatrix::pack_row`].
    pub fn from_packed_rows(cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let words = cols.div_ceil(64);
        let n = rows.len();
        let mut bits = Vec::with_capacity(n * words);
        for r in rows {
            assert_eq!(r.len(), words, "packed row width");
            bits.extend(r);
        }
        BoolMatrix {
            rows: n,
            cols,
            words,
            bits,
        }
    }

    /// Packs a row of booleans into words.
    pub fn pack_row(row: impl IntoIterator<Item = bool>, cols: usize) -> Vec<u64> {
        let mut out = vec![0u64; cols.div_ceil(64)];
        for (j, b) in row.into_iter().enumerate() {
            if b {
                out[j / 64] |= 1 << (j % 64);
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.bits[i * self.words + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn is_zero_col(&self, j: usize) -> bool {
        (0..self.rows).all(|i| !self.get(i, j))
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Self {
        BoolMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        BoolMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Text format: `rows cols`, then one line of `0`/`1` per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1) + 16);
        writeln!(s, "{} {}", self.rows, self.cols).unwrap();
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse("header must be `rows cols`"));
        };
        let mut m = BoolMatrix::zeros(rows, cols);
        for i in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(format!("expected {rows} rows, found {i}")))?
                .trim_end();
            if line.len() != cols {
                return Err(Error::parse(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    line.len()
                )));
            }
            for (j, ch) in line.bytes().enumerate() {
                match ch {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => return Err(Error::parse(format!("bad entry in row {}", i + 1))),
                }
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::parse(format!("more than {rows} rows")));
        }
        Ok(m)
    }
}

impl std::fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn text_format() {
        let m = BoolMatrix::from_fn(2, 3, |i, j| (i + j) % 2 == 0);
        assert_eq!(m.to_text(), "2 3\n101\n010\n");
        assert_eq!(BoolMatrix::parse_text(&m.to_text()).unwrap(), m);
        assert!(BoolMatrix::parse_text("1 2\n12\n").is_err());
        assert!(BoolMatrix::parse_text("1 2\n10\n01\n").is_err());
        assert!(BoolMatrix::parse_text("").is_err());
        let empty = BoolMatrix::zeros(2, 0);
        assert_eq!(BoolMatrix::parse_text(&empty.to_text()).unwrap(), empty);
    }

    proptest! {
        #[test]
        fn round_trips(rows in 0usize..5, cols in 0usize..140, seed in any::<u64>()) {
            let m = BoolMatrix::from_fn(rows, cols, |i, j| (seed >> ((i * 7 + j) % 64)) & 1 == 1);
            prop_assert_eq!(BoolMatrix::parse_text(&m.to_text()).unwrap(), m.clone());
            prop_assert_eq!(m.transpose().transpose(), m.clone());
            let packed: Vec<Vec<u64>> = (0..rows)
                .map(|i| BoolMatrix::pack_row((0..cols).map(|j| m.get(i, j)), cols))
                .collect();
            prop_assert_eq!(BoolMatrix::from_packed_rows(cols, packed), m);
        }
    }
}
