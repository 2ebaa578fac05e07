//! Brute-force oracles for cross-checking the exact engine.
//!
//! Everything here favours being obviously right over being fast, and none
//! of it is used by the library itself.

use abelian_cs::complex::{ChainComplex, IntegerChain};
use abelian_cs::linalg::IntMatrix;
use abelian_cs::manifold::{DualCycle, Triangulation};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Largest box [`bounded_solution_search`] will enumerate.
pub const MAX_CANDIDATES: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search box has {0} candidates, more than the limit of {MAX_CANDIDATES}")]
    BoxTooLarge(u128),
    #[error("right-hand side has {found} entries, matrix has {expected} rows")]
    Dimension { expected: usize, found: usize },
}

fn to_rows(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Rank over ℚ by fraction-free (Bareiss) elimination.
pub fn rank_oracle(a: &IntMatrix) -> usize {
    let mut m = to_rows(a);
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination; panics on non-square input.
pub fn determinant(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = to_rows(a);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank over the prime field `𝔽_q`.
pub fn rank_mod_prime(a: &IntMatrix, q: u64) -> usize {
    let qb = BigInt::from(q);
    let reduce = |x: &BigInt| -> u64 {
        let r = ((x % &qb) + &qb) % &qb;
        r.try_into().expect("residue below q")
    };
    let mut m: Vec<Vec<u64>> = (0..a.rows())
        .map(|i| a.row(i).iter().map(reduce).collect())
        .collect();
    let inv = |x: u64| -> u64 {
        // Fermat: x^(q-2) mod q.
        let (mut base, mut exp, mut acc) = (x % q, q - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        acc
    };
    let (rows, cols) = (a.rows(), a.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pinv = inv(m[rank][col]);
        for r in 0..rows {
            if r == rank || m[r][col] == 0 {
                continue;
            }
            let f = m[r][col] * pinv % q;
            for c in col..cols {
                m[r][c] = (m[r][c] + q * q - f * m[rank][c] % q) % q;
            }
        }
        rank += 1;
    }
    rank
}

/// `(betti, number of torsion coefficients divisible by q)` for `H_k`,
/// from ranks of the boundary maps over ℚ and over `𝔽_q`.
pub fn homology_rank_oracle(cx: &ChainComplex, k: usize, q: u64) -> (usize, usize) {
    let n = cx.size(k);
    let dk = cx.boundary_matrix(k);
    let dk1 = cx.boundary_matrix(k + 1);
    let betti = n - rank_oracle(&dk) - rank_oracle(&dk1);
    // Divisors of ∂_{k+1} divisible by q drop the rank mod q.
    let divisible = rank_oracle(&dk1) - rank_mod_prime(&dk1, q);
    (betti, divisible)
}

/// Exhaustive search for `x ∈ [-bound, bound]^n` with `A·x = b`. Returns
/// the first hit in lexicographic order.
pub fn bounded_solution_search(
    a: &IntMatrix,
    b: &[BigInt],
    bound: i64,
) -> Result<Option<Vec<BigInt>>, OracleError> {
    if b.len() != a.rows() {
        return Err(OracleError::Dimension {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let side = (2 * bound.unsigned_abs() + 1) as u128;
    let total = side.checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_CANDIDATES {
        return Err(OracleError::BoxTooLarge(total));
    }
    let mut x = vec![-bound.abs(); n];
    loop {
        let ok = (0..a.rows()).all(|i| {
            let s: BigInt = (0..n).map(|j| a.get(i, j) * BigInt::from(x[j])).sum();
            s == b[i]
        });
        if ok {
            return Ok(Some(x.into_iter().map(BigInt::from).collect()));
        }
        // Odometer increment.
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(None);
            }
            j -= 1;
            if x[j] < bound.abs() {
                x[j] += 1;
                break;
            }
            x[j] = -bound.abs();
        }
    }
}

fn permutation_parity(xs: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                s = -s;
            }
        }
    }
    s
}

/// Signed crossing count of `z` through `c`, by scanning every triangle of
/// the complex against every step and recomputing orientations from the
/// vertex tuples.
pub fn crossing_count_oracle(c: &IntegerChain, z: &DualCycle, tri: &Triangulation) -> BigInt {
    let mut total = BigInt::zero();
    for (f, face) in tri.faces().iter().enumerate() {
        let coeff = c.coefficient(f);
        for step in z.steps() {
            let tet = tri.tetrahedra()[step.tet];
            let local = step.face as usize;
            let rest: Vec<usize> = (0..4).filter(|&i| i != local).map(|i| tet[i]).collect();
            let mut sorted = rest.clone();
            sorted.sort_unstable();
            if sorted.as_slice() != face.as_slice() {
                continue;
            }
            let alt = if local % 2 == 0 { 1 } else { -1 };
            let sign = alt * permutation_parity(&rest);
            total += &coeff * BigInt::from(sign);
        }
    }
    total
}

/// The closed dual walk around edge `[a, b]`: the tetrahedra containing
/// it, in cyclic order.
pub fn edge_loop(tri: &Triangulation, a: usize, b: usize) -> Option<DualCycle> {
    let tets = tri.tetrahedra();
    let start = tets.iter().position(|t| t.contains(&a) && t.contains(&b))?;
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let t = tets[cur];
        let next = (0..4)
            .filter(|&i| t[i] != a && t[i] != b)
            .map(|i| tri.neighbor(cur, i))
            .find(|&u| u != prev)?;
        if next == start {
            break;
        }
        prev = cur;
        cur = next;
        walk.push(cur);
    }
    DualCycle::from_tets(tri, &walk).ok()
}

/// Largest absolute coefficient of a chain.
pub fn max_abs(c: &IntegerChain) -> BigInt {
    c.iter().map(|(_, v)| v.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_oracle(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_oracle(&IntMatrix::identity(5)), 5);
        assert_eq!(rank_oracle(&m(&[vec![1, 2], vec![2, 4]])), 1);
        assert_eq!(rank_mod_prime(&m(&[vec![2, 0], vec![0, 3]]), 2), 1);
        assert_eq!(rank_mod_prime(&m(&[vec![2, 0], vec![0, 3]]), 5), 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[vec![2, 4], vec![6, 8]])), BigInt::from(-8));
        assert_eq!(determinant(&m(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)), BigInt::one());
    }

    #[test]
    fn searches() {
        let a = m(&[vec![2]]);
        assert_eq!(
            bounded_solution_search(&a, &[BigInt::from(4)], 3).unwrap(),
            Some(vec![BigInt::from(2)])
        );
        assert_eq!(bounded_solution_search(&a, &[BigInt::from(3)], 5).unwrap(), None);
        assert!(matches!(
            bounded_solution_search(&IntMatrix::zeros(1, 12), &[BigInt::zero()], 5),
            Err(OracleError::BoxTooLarge(_))
        ));
    }
}
