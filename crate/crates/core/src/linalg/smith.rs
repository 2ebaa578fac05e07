//! Smith normal form over the integers.
//!
//! Elimination always pivots on the entry of smallest absolute value in the
//! active block, taking the first one in row-major order on ties, so the
//! transforms are a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::par::Parallelism;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal.
///
/// The first `rank` diagonal entries are positive and each divides the next;
/// the remaining diagonal entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d_1 | d_2 | … | d_rank`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    smith_normal_form_with(a, Parallelism::Auto)
}

pub fn smith_normal_form_with(a: &IntMatrix, mode: Parallelism) -> SmithDecomposition {
    let mut e = Elimination::new(a, true, false, mode);
    e.run();
    e.into_decomposition()
}

/// Invariant factors only; skips transform bookkeeping.
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    invariant_factors_with(a, Parallelism::Auto)
}

pub fn invariant_factors_with(a: &IntMatrix, mode: Parallelism) -> Vec<BigInt> {
    let mut e = Elimination::new(a, false, false, mode);
    e.run();
    (0..e.rank).map(|i| e.d.get(i, i).clone()).collect()
}

/// Decomposition together with `U⁻¹`, whose columns give a basis adapted to
/// the image of `A`.
pub(crate) fn smith_with_left_inverse(
    a: &IntMatrix,
    mode: Parallelism,
) -> (SmithDecomposition, IntMatrix) {
    let mut e = Elimination::new(a, true, true, mode);
    e.run();
    let u_inv = e.u_inv.take().expect("left inverse tracked");
    (e.into_decomposition(), u_inv)
}

struct Elimination {
    d: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    rank: usize,
    mode: Parallelism,
}

impl Elimination {
    fn new(a: &IntMatrix, transforms: bool, left_inverse: bool, mode: Parallelism) -> Self {
        Elimination {
            d: a.clone(),
            u: transforms.then(|| IntMatrix::identity(a.rows())),
            v: transforms.then(|| IntMatrix::identity(a.cols())),
            u_inv: left_inverse.then(|| IntMatrix::identity(a.rows())),
            rank: 0,
            mode,
        }
    }

    fn into_decomposition(self) -> SmithDecomposition {
        SmithDecomposition {
            u: self.u.expect("transforms tracked"),
            v: self.v.expect("transforms tracked"),
            d: self.d,
            rank: self.rank,
        }
    }

    fn run(&mut self) {
        let (m, n) = (self.d.rows(), self.d.cols());
        let mut t = 0;
        while t < m.min(n) {
            let Some((pr, pc)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                self.clear_column(t);
                self.clear_row(t);
                if (t + 1..m).any(|i| !self.d.get(i, t).is_zero()) {
                    continue;
                }
                match self.non_multiple(t) {
                    Some(i) => self.add_row_to_pivot(t, i),
                    None => break,
                }
            }
            if self.d.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        self.rank = t;
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, b)| a < *b) {
                    best = Some(((i, j), a));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Reduces the pivot column below `t` to zero by Euclidean row steps.
    fn clear_column(&mut self, t: usize) {
        let m = self.d.rows();
        loop {
            let pivot = self.d.get(t, t).clone();
            let mut factors = vec![BigInt::zero(); m];
            let mut any = false;
            for (i, f) in factors.iter_mut().enumerate().skip(t + 1) {
                let x = self.d.get(i, t);
                if !x.is_zero() {
                    *f = x.div_floor(&pivot);
                    any |= !f.is_zero();
                }
            }
            if any {
                self.subtract_rows(t, &factors);
            }
            let next = (t + 1..m)
                .filter(|&i| !self.d.get(i, t).is_zero())
                .min_by(|&a, &b| self.d.get(a, t).abs().cmp(&self.d.get(b, t).abs()));
            match next {
                None => return,
                Some(i) => self.swap_rows(t, i),
            }
        }
    }

    /// Reduces the pivot row right of `t` to zero by Euclidean column steps.
    fn clear_row(&mut self, t: usize) {
        let n = self.d.cols();
        loop {
            let pivot = self.d.get(t, t).clone();
            let mut factors = vec![BigInt::zero(); n];
            let mut any = false;
            for (j, f) in factors.iter_mut().enumerate().skip(t + 1) {
                let x = self.d.get(t, j);
                if !x.is_zero() {
                    *f = x.div_floor(&pivot);
                    any |= !f.is_zero();
                }
            }
            if any {
                self.d.subtract_col_multiples(t, &factors, self.mode);
                if let Some(v) = self.v.as_mut() {
                    v.subtract_col_multiples(t, &factors, self.mode);
                }
            }
            let next = (t + 1..n)
                .filter(|&j| !self.d.get(t, j).is_zero())
                .min_by(|&a, &b| self.d.get(t, a).abs().cmp(&self.d.get(t, b).abs()));
            match next {
                None => return,
                Some(j) => self.swap_cols(t, j),
            }
        }
    }

    /// First row below `t` holding an entry not divisible by the pivot.
    fn non_multiple(&self, t: usize) -> Option<usize> {
        let pivot = self.d.get(t, t);
        (t + 1..self.d.rows()).find(|&i| {
            (t + 1..self.d.cols()).any(|j| {
                let x = self.d.get(i, j);
                !x.is_zero() && !x.is_multiple_of(pivot)
            })
        })
    }

    fn subtract_rows(&mut self, t: usize, factors: &[BigInt]) {
        self.d.subtract_row_multiples(t, factors, self.mode);
        if let Some(u) = self.u.as_mut() {
            u.subtract_row_multiples(t, factors, self.mode);
        }
        if let Some(w) = self.u_inv.as_mut() {
            // Inverse of the batched row step: col_t += Σ f_i col_i.
            w.add_col_combination(t, factors, self.mode);
        }
    }

    fn add_row_to_pivot(&mut self, t: usize, i: usize) {
        let one = BigInt::one();
        self.d.add_row_multiple(t, i, &one);
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(t, i, &one);
        }
        if let Some(w) = self.u_inv.as_mut() {
            w.add_col_multiple(i, t, &-one);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(a, b);
        }
        if let Some(w) = self.u_inv.as_mut() {
            w.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
    }

    fn negate_row(&mut self, t: usize) {
        self.d.negate_row(t);
        if let Some(u) = self.u.as_mut() {
            u.negate_row(t);
        }
        if let Some(w) = self.u_inv.as_mut() {
            w.negate_col(t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check(a: &IntMatrix, s: &SmithDecomposition) {
        let uav = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(uav, s.d);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let divs = s.divisors();
        assert!(divs.iter().all(|d| d.is_positive()));
        for w in divs.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn zero_one_by_one() {
        let a = m(&[vec![0]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn identity_one_by_one() {
        let a = m(&[vec![1]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.d, a);
        assert_eq!(s.u, a);
        assert_eq!(s.v, a);
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.divisors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_matrices() {
        for (r, c) in [(0, 0), (0, 4), (3, 0)] {
            let a = IntMatrix::zeros(r, c);
            let s = smith_normal_form(&a);
            assert_eq!(s.rank, 0);
            assert_eq!(s.u, IntMatrix::identity(r));
            assert_eq!(s.v, IntMatrix::identity(c));
        }
    }

    #[test]
    fn divisibility_fixup_needed() {
        // diag(2, 3) is not in normal form; the normal form is diag(1, 6).
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        check(&a, &s);
        assert_eq!(s.divisors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn left_inverse_is_inverse() {
        let a = m(&[vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5], vec![3, 5, 8]]);
        let (s, u_inv) = smith_with_left_inverse(&a, Parallelism::Sequential);
        check(&a, &s);
        assert_eq!(s.u.mul(&u_inv).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = IntMatrix::from_fn(40, 50, |i, j| BigInt::from(((i * 7 + j * 13) % 11) as i64 - 5));
        let s1 = smith_normal_form_with(&a, Parallelism::Sequential);
        let s2 = smith_normal_form_with(&a, Parallelism::Auto);
        assert_eq!(s1, s2);
        check(&a, &s1);
    }
}
