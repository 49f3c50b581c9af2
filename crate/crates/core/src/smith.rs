//! Smith normal form over the integers.
//!
//! [`smith_normal_form`] first eliminates unit pivots sparsely (each one
//! splits off an invariant factor 1 without coefficient growth) and then runs
//! the dense kernel on whatever is left. [`smith_normal_form_with_transforms`]
//! runs the dense kernel on the whole matrix and keeps unimodular `U`, `V`
//! with `A = U * D * V`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    rows: usize,
    cols: usize,
    diagonal: Vec<BigInt>,
    transforms: Option<(IntegerMatrix, IntegerMatrix)>,
}

impl SmithForm {
    /// Positive invariant factors `d_1 | d_2 | ... | d_r`.
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one())
    }

    /// The `rows x cols` diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_triplets(
            self.rows,
            self.cols,
            self.diagonal.iter().enumerate().map(|(i, d)| (i, i, d.clone())),
        )
    }

    /// `(U, V)` with `A = U * D * V`, when computed.
    pub fn transforms(&self) -> Option<(&IntegerMatrix, &IntegerMatrix)> {
        self.transforms.as_ref().map(|(u, v)| (u, v))
    }

    /// Every factor divides the next and all are positive.
    pub fn is_divisibility_chain(&self) -> bool {
        self.diagonal.iter().all(BigInt::is_positive)
            && self
                .diagonal
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (unit_pivots, rest) = eliminate_unit_pivots(a);
    let mut diagonal = vec![BigInt::one(); unit_pivots];
    if !rest.is_empty() {
        let cols = rest[0].len();
        let mut dense = rest;
        diagonal.extend(dense_smith(&mut dense, cols, None));
    }
    SmithForm {
        rows: a.rows(),
        cols: a.cols(),
        diagonal,
        transforms: None,
    }
}

pub fn smith_normal_form_with_transforms(a: &IntegerMatrix) -> SmithForm {
    let mut dense = a.to_dense();
    let mut u = IntegerMatrix::identity(a.rows()).to_dense();
    let mut v = IntegerMatrix::identity(a.cols()).to_dense();
    let diagonal = dense_smith(&mut dense, a.cols(), Some((&mut u, &mut v)));
    SmithForm {
        rows: a.rows(),
        cols: a.cols(),
        diagonal,
        transforms: Some((IntegerMatrix::from_dense(&u), IntegerMatrix::from_dense(&v))),
    }
}

type Row = Vec<(usize, BigInt)>;

/// Sparse elimination of `+-1` pivots. Returns the number of pivots removed and
/// the remaining nonzero block as a dense matrix (zero rows and columns dropped).
fn eliminate_unit_pivots(a: &IntegerMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut rows: Vec<Row> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].insert(i);
        }
    }

    let mut pivots = 0;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..a.cols() {
            let pivot = col_rows[c]
                .iter()
                .filter_map(|&r| {
                    let v = entry(&rows[r], c)?;
                    (v.abs().is_one()).then(|| (rows[r].len(), r, v.is_negative()))
                })
                .min();
            let Some((_, p, negative)) = pivot else {
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[p]);
            for (j, _) in &pivot_row {
                col_rows[*j].remove(&p);
            }
            let targets: Vec<usize> = col_rows[c].iter().copied().collect();
            for r in targets {
                let mut coef = entry(&rows[r], c).expect("column index is consistent");
                if negative {
                    coef = -coef;
                }
                rows[r] = axpy(&rows[r], &coef, &pivot_row);
                for (j, _) in &pivot_row {
                    if entry(&rows[r], *j).is_some() {
                        col_rows[*j].insert(r);
                    } else {
                        col_rows[*j].remove(&r);
                    }
                }
            }
            debug_assert!(col_rows[c].is_empty());
            pivots += 1;
            progress = true;
        }
    }

    let live_cols: Vec<usize> = (0..a.cols()).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut col_pos = vec![usize::MAX; a.cols()];
    for (k, &c) in live_cols.iter().enumerate() {
        col_pos[c] = k;
    }
    let rest = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut dense = vec![BigInt::zero(); live_cols.len()];
            for (j, v) in r {
                dense[col_pos[j]] = v;
            }
            dense
        })
        .collect();
    (pivots, rest)
}

fn entry(row: &Row, c: usize) -> Option<BigInt> {
    row.binary_search_by_key(&c, |&(j, _)| j)
        .ok()
        .map(|k| row[k].1.clone())
}

/// `row - coef * pivot` on sorted sparse rows.
fn axpy(row: &Row, coef: &BigInt, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < pivot.len() {
        let next_row = row.get(i).map(|e| e.0);
        let next_piv = pivot.get(k).map(|e| e.0);
        match (next_row, next_piv) {
            (Some(a), Some(b)) if a == b => {
                let v = &row[i].1 - coef * &pivot[k].1;
                if !v.is_zero() {
                    out.push((a, v));
                }
                i += 1;
                k += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(row[i].clone());
                i += 1;
            }
            (Some(a), None) => {
                out.push((a, row[i].1.clone()));
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, -(coef * &pivot[k].1)));
                k += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

type Transforms<'a> = (&'a mut Vec<Vec<BigInt>>, &'a mut Vec<Vec<BigInt>>);

struct Dense<'a> {
    m: &'a mut Vec<Vec<BigInt>>,
    cols: usize,
    tr: Option<Transforms<'a>>,
}

impl Dense<'_> {
    fn rows(&self) -> usize {
        self.m.len()
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.m.swap(i, k);
        if let Some((u, _)) = self.tr.as_mut() {
            for row in u.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.m.iter_mut() {
            row.swap(j, k);
        }
        if let Some((_, v)) = self.tr.as_mut() {
            v.swap(j, k);
        }
    }

    /// row_i += c * row_k
    fn add_row(&mut self, i: usize, k: usize, c: &BigInt) {
        let src = self.m[k].clone();
        for (dst, s) in self.m[i].iter_mut().zip(&src) {
            *dst += c * s;
        }
        if let Some((u, _)) = self.tr.as_mut() {
            for row in u.iter_mut() {
                let t = c * &row[i];
                row[k] -= t;
            }
        }
    }

    /// col_j += c * col_k
    fn add_col(&mut self, j: usize, k: usize, c: &BigInt) {
        for row in self.m.iter_mut() {
            let t = c * &row[k];
            row[j] += t;
        }
        if let Some((_, v)) = self.tr.as_mut() {
            let src = v[j].clone();
            for (dst, s) in v[k].iter_mut().zip(&src) {
                *dst -= c * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some((u, _)) = self.tr.as_mut() {
            for row in u.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    /// Smallest nonzero |entry| in the block `[t.., t..]`; ties by row, then column.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols {
                let v = &self.m[i][j];
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Smallest nonzero |entry| in row `t` and column `t` beyond the diagonal.
    fn min_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        let mut consider = |v: &BigInt, i: usize, j: usize| {
            if !v.is_zero() {
                let a = v.abs();
                if best.as_ref().is_none_or(|(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        };
        for i in t + 1..self.m.len() {
            consider(&self.m[i][t], i, t);
        }
        for j in t + 1..self.cols {
            consider(&self.m[t][j], t, j);
        }
        best.map(|(_, i, j)| (i, j))
    }
}

fn dense_smith(m: &mut Vec<Vec<BigInt>>, cols: usize, tr: Option<Transforms<'_>>) -> Vec<BigInt> {
    let mut d = Dense { m, cols, tr };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < d.rows().min(d.cols) {
        let Some((pi, pj)) = d.min_pivot(t) else {
            break;
        };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        loop {
            for i in t + 1..d.rows() {
                if !d.m[i][t].is_zero() {
                    let q = d.m[i][t].div_floor(&d.m[t][t]);
                    d.add_row(i, t, &-q);
                }
            }
            for j in t + 1..d.cols {
                if !d.m[t][j].is_zero() {
                    let q = d.m[t][j].div_floor(&d.m[t][t]);
                    d.add_col(j, t, &-q);
                }
            }
            if let Some((i, j)) = d.min_in_cross(t) {
                // A remainder smaller than the pivot survived; promote it.
                d.swap_rows(t, i);
                d.swap_cols(t, j);
                continue;
            }
            let pivot = d.m[t][t].clone();
            let offender = (t + 1..d.rows()).find(|&i| {
                (t + 1..d.cols).any(|j| !(&d.m[i][j] % &pivot).is_zero())
            });
            match offender {
                Some(i) => d.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if d.m[t][t].is_negative() {
            d.negate_row(t);
        }
        diagonal.push(d.m[t][t].clone());
        t += 1;
    }
    diagonal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_recomposition(a: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form_with_transforms(a);
        let (u, v) = s.transforms().unwrap();
        assert_eq!(u.mul(&s.diagonal_matrix()).mul(v), *a);
        assert!(s.is_divisibility_chain());
        assert_eq!(s.diagonal(), smith_normal_form(a).diagonal());
        s
    }

    #[test]
    fn identity_and_zero() {
        let s = check_recomposition(&IntegerMatrix::identity(4));
        assert_eq!(s.diagonal(), ints(&[1, 1, 1, 1]));
        let z = smith_normal_form(&IntegerMatrix::zeros(3, 5));
        assert_eq!(z.rank(), 0);
        assert!(z.diagonal().is_empty());
    }

    #[test]
    fn two_by_two_upper_triangular() {
        // gcd of entries is 2 and |det| is 12, so the factors are (2, 6).
        let a = IntegerMatrix::from_dense(&[vec![2, 4], vec![0, 6]]);
        assert_eq!(check_recomposition(&a).diagonal(), ints(&[2, 6]));
    }

    #[test]
    fn coprime_diagonal_merges() {
        let a = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(check_recomposition(&a).diagonal(), ints(&[1, 6]));
    }

    #[test]
    fn rectangular_and_negative() {
        let a = IntegerMatrix::from_dense(&[vec![-4, 6, 0], vec![10, -4, 8], vec![0, 0, 0], vec![2, 2, 2]]);
        let s = check_recomposition(&a);
        assert!(s.is_divisibility_chain());
    }

    #[test]
    fn empty_shapes() {
        let a = IntegerMatrix::zeros(0, 3);
        let s = check_recomposition(&a);
        assert_eq!(s.rank(), 0);
        let b = IntegerMatrix::zeros(2, 0);
        assert_eq!(check_recomposition(&b).rank(), 0);
    }

    #[test]
    fn sparse_path_handles_mixed_pivots() {
        let a = IntegerMatrix::from_dense(&[
            vec![1, 1, 0, 0],
            vec![0, 2, 2, 0],
            vec![0, 0, 3, 3],
            vec![1, 0, 0, 5],
        ]);
        check_recomposition(&a);
    }
}
