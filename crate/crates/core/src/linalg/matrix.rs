use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::LinalgError;
use crate::par::{self, Parallelism};

/// Below this many entries, row and column sweeps stay on the calling thread.
pub(crate) const PARALLEL_THRESHOLD: usize = 1 << 14;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Either dimension may be zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows. An empty outer vector yields a 0×0 matrix.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinalgError::RaggedRows {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product; zero entries of `self` are skipped.
    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        self.mul_with(rhs, Parallelism::Auto)
    }

    pub fn mul_with(&self, rhs: &IntMatrix, mode: Parallelism) -> Result<IntMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        let mode = if self.rows * rhs.cols >= PARALLEL_THRESHOLD {
            mode
        } else {
            Parallelism::Sequential
        };
        par::for_each_chunk_mut(&mut out.data, rhs.cols, mode, |i, out_row| {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        });
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = self.entry_mut(i, j);
            *x = -std::mem::take(x);
        }
    }

    /// `row[i] -= factors[i] * row[pivot]` for every row with a nonzero factor.
    pub(crate) fn subtract_row_multiples(
        &mut self,
        pivot: usize,
        factors: &[BigInt],
        mode: Parallelism,
    ) {
        let support: Vec<(usize, BigInt)> = self
            .row(pivot)
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        if support.is_empty() {
            return;
        }
        let mode = self.sweep_mode(mode);
        par::for_each_chunk_mut(&mut self.data, self.cols, mode, |i, row| {
            let q = &factors[i];
            if i == pivot || q.is_zero() {
                return;
            }
            for (j, x) in &support {
                row[*j] -= q * x;
            }
        });
    }

    /// `col[j] -= factors[j] * col[pivot]` for every column with a nonzero factor.
    pub(crate) fn subtract_col_multiples(
        &mut self,
        pivot: usize,
        factors: &[BigInt],
        mode: Parallelism,
    ) {
        let targets: Vec<usize> = (0..self.cols)
            .filter(|&j| j != pivot && !factors[j].is_zero())
            .collect();
        if targets.is_empty() {
            return;
        }
        let mode = self.sweep_mode(mode);
        par::for_each_chunk_mut(&mut self.data, self.cols, mode, |_, row| {
            if row[pivot].is_zero() {
                return;
            }
            let x = row[pivot].clone();
            for &j in &targets {
                row[j] -= &factors[j] * &x;
            }
        });
    }

    /// `col[target] += Σ_j factors[j] * col[j]`.
    pub(crate) fn add_col_combination(
        &mut self,
        target: usize,
        factors: &[BigInt],
        mode: Parallelism,
    ) {
        let sources: Vec<usize> = (0..self.cols)
            .filter(|&j| j != target && !factors[j].is_zero())
            .collect();
        if sources.is_empty() {
            return;
        }
        let mode = self.sweep_mode(mode);
        par::for_each_chunk_mut(&mut self.data, self.cols, mode, |_, row| {
            let mut acc = BigInt::zero();
            for &j in &sources {
                if !row[j].is_zero() {
                    acc += &factors[j] * &row[j];
                }
            }
            row[target] += acc;
        });
    }

    /// `row[target] += factor * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if !s.is_zero() {
                let delta = factor * s;
                *self.entry_mut(target, j) += delta;
            }
        }
    }

    /// `col[target] += factor * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        for i in 0..self.rows {
            let s = self.get(i, source);
            if !s.is_zero() {
                let delta = factor * s;
                *self.entry_mut(i, target) += delta;
            }
        }
    }

    fn sweep_mode(&self, mode: Parallelism) -> Parallelism {
        if self.data.len() >= PARALLEL_THRESHOLD {
            mode
        } else {
            Parallelism::Sequential
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_shapes_are_legal() {
        let m = IntMatrix::zeros(0, 3);
        assert_eq!((m.rows(), m.cols()), (0, 3));
        let n = IntMatrix::zeros(3, 0);
        let p = n.mul(&m).unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 3));
        assert!(p.is_zero());
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = IntMatrix::from_rows(&[vec![1, 2], vec![3]]).unwrap_err();
        assert!(matches!(err, LinalgError::RaggedRows { row: 1, .. }));
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]).unwrap());
        assert!(a.mul(&IntMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn row_sweep_skips_pivot() {
        let mut a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8], vec![1, 1]]).unwrap();
        let f: Vec<BigInt> = vec![5.into(), 3.into(), 0.into()];
        a.subtract_row_multiples(0, &f, Parallelism::Sequential);
        assert_eq!(
            a,
            IntMatrix::from_rows(&[vec![2, 4], vec![0, -4], vec![1, 1]]).unwrap()
        );
    }
}
