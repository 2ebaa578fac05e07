//! Column-style Hermite normal form and exact integer solving.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::LinalgError;
use crate::par::Parallelism;

/// `A · W = H` with `W` unimodular and `H` in column echelon form.
///
/// Column `j < rank` has its leading nonzero entry at `pivot_rows[j]`, which
/// is strictly increasing in `j` and positive. Entries to the left of a pivot
/// in its row are reduced into `[0, pivot)`. Columns from `rank` on are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub w: IntMatrix,
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    hermite_normal_form_with(a, Parallelism::Auto)
}

pub fn hermite_normal_form_with(a: &IntMatrix, mode: Parallelism) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut w = IntMatrix::identity(n);
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for r in 0..m {
        if c == n {
            break;
        }
        // Euclid across row r, columns c.., until one entry survives.
        loop {
            let smallest = (c..n)
                .filter(|&j| !h.get(r, j).is_zero())
                .min_by(|&a, &b| h.get(r, a).abs().cmp(&h.get(r, b).abs()));
            let Some(j) = smallest else { break };
            h.swap_cols(c, j);
            w.swap_cols(c, j);
            let pivot = h.get(r, c).clone();
            let mut factors = vec![BigInt::zero(); n];
            let mut any = false;
            for (j, f) in factors.iter_mut().enumerate().skip(c + 1) {
                let x = h.get(r, j);
                if !x.is_zero() {
                    *f = x.div_floor(&pivot);
                    any = true;
                }
            }
            if !any {
                break;
            }
            h.subtract_col_multiples(c, &factors, mode);
            w.subtract_col_multiples(c, &factors, mode);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_col(c);
            w.negate_col(c);
        }
        let pivot = h.get(r, c).clone();
        let mut factors = vec![BigInt::zero(); n];
        let mut any = false;
        for (l, f) in factors.iter_mut().enumerate().take(c) {
            let x = h.get(r, l);
            if !x.is_zero() {
                *f = x.div_floor(&pivot);
                any |= !f.is_zero();
            }
        }
        if any {
            h.subtract_col_multiples(c, &factors, mode);
            w.subtract_col_multiples(c, &factors, mode);
        }
        pivot_rows.push(r);
        c += 1;
    }
    HermiteForm { h, w, pivot_rows }
}

/// Reusable exact solver for `A · x = b` over the integers.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    a: IntMatrix,
    hnf: HermiteForm,
}

impl IntegerSolver {
    pub fn new(a: &IntMatrix) -> Self {
        Self::with_parallelism(a, Parallelism::Auto)
    }

    pub fn with_parallelism(a: &IntMatrix, mode: Parallelism) -> Self {
        IntegerSolver {
            a: a.clone(),
            hnf: hermite_normal_form_with(a, mode),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn hermite(&self) -> &HermiteForm {
        &self.hnf
    }

    /// Some integer `x` with `A · x = b`, or `None` when `b` is not in the
    /// integer column lattice of `A`.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if b.len() != self.a.rows() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.a.rows(),
                found: b.len(),
            });
        }
        let h = &self.hnf.h;
        let rank = self.hnf.rank();
        let mut y = vec![BigInt::zero(); self.a.cols()];
        for (j, &r) in self.hnf.pivot_rows.iter().enumerate() {
            let mut residual = b[r].clone();
            for (l, yl) in y.iter().enumerate().take(j) {
                let x = h.get(r, l);
                if !x.is_zero() && !yl.is_zero() {
                    residual -= x * yl;
                }
            }
            let (q, rem) = residual.div_rem(h.get(r, j));
            if !rem.is_zero() {
                return Ok(None);
            }
            y[j] = q;
        }
        // Rows without a pivot are only checked by the full product.
        let hy = h.mul_vec(&y)?;
        if hy != b {
            return Ok(None);
        }
        let mut x = vec![BigInt::zero(); self.a.cols()];
        for (j, yj) in y.iter().enumerate().take(rank) {
            if yj.is_zero() {
                continue;
            }
            for (i, xi) in x.iter_mut().enumerate() {
                let wij = self.hnf.w.get(i, j);
                if !wij.is_zero() {
                    *xi += wij * yj;
                }
            }
        }
        debug_assert_eq!(self.a.mul_vec(&x)?, b);
        Ok(Some(x))
    }
}

/// One-shot integer solve of `A · x = b`.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    IntegerSolver::new(a).solve(b)
}
