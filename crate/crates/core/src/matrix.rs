//! Sparse integer matrices with arbitrary-precision entries.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row-major sparse matrix over the integers.
///
/// Each row stores its nonzero entries sorted by column; zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, BigInt::one()));
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn from_triplets<V, I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        V: Into<BigInt>,
        I: IntoIterator<Item = (usize, usize, V)>,
    {
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "entry ({i}, {j}) outside {rows}x{cols}");
            *acc[i].entry(j).or_insert_with(BigInt::zero) += v.into();
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        IntegerMatrix { rows, cols, data }
    }

    pub fn from_dense<V: Into<BigInt> + Clone>(rows: &[Vec<V>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.data[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_default()
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.data[i]
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries().map(|(i, j, v)| (j, i, v.clone())),
        )
    }

    pub fn neg(&self) -> Self {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, -v)).collect())
                .collect(),
        }
    }

    /// Matrix product `self * rhs`.
    ///
    /// # Panics
    /// On a dimension mismatch.
    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    *acc.entry(*j).or_insert_with(BigInt::zero) += a * b;
                }
            }
            data.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
        IntegerMatrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    /// Reorders rows and columns: entry `(i, j)` moves to `(row_map[i], col_map[j])`.
    pub fn permuted(&self, row_map: &[usize], col_map: &[usize]) -> IntegerMatrix {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries()
                .map(|(i, j, v)| (row_map[i], col_map[j], v.clone())),
        )
    }

    /// Plain-text dump: a `rows cols` header followed by row-major entries.
    pub fn to_debug_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for row in self.to_dense() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }
}
