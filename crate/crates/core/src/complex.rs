//! Chain complexes over ℤ and their homology.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::ChainError;
use crate::linalg::{invariant_factors_with, smith_with_left_inverse, IntMatrix};
use crate::par::{self, Parallelism};

/// Sparse ℤ-linear combination of basis cells of a fixed degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntegerChain {
    degree: usize,
    coeffs: BTreeMap<usize, BigInt>,
}

impl IntegerChain {
    pub fn zero(degree: usize) -> Self {
        IntegerChain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(degree: usize, index: usize) -> Self {
        let mut c = Self::zero(degree);
        c.coeffs.insert(index, BigInt::one());
        c
    }

    pub fn from_dense(degree: usize, dense: &[BigInt]) -> Self {
        let coeffs = dense
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        IntegerChain { degree, coeffs }
    }

    pub fn from_terms<I, T>(degree: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, T)>,
        T: Into<BigInt>,
    {
        let mut c = Self::zero(degree);
        for (i, x) in terms {
            c.add_term(i, x.into());
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficient(&self, index: usize) -> BigInt {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().map(|(&i, x)| (i, x))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, index: usize, value: BigInt) {
        if value.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(index).or_default();
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn to_dense(&self, size: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); size];
        for (&i, x) in &self.coeffs {
            v[i] = x.clone();
        }
        v
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.degree);
        }
        IntegerChain {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&i, x)| (i, x * factor))
                .collect(),
        }
    }

    pub fn add(&self, other: &IntegerChain) -> Self {
        assert_eq!(self.degree, other.degree, "adding chains of different degree");
        let mut out = self.clone();
        for (&i, x) in &other.coeffs {
            out.add_term(i, x.clone());
        }
        out
    }

    pub fn sub(&self, other: &IntegerChain) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }
}

impl fmt::Debug for IntegerChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}[", self.degree)?;
        for (n, (i, x)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}·e{i}")?;
        }
        write!(f, "]")
    }
}

/// `H_k ≅ ℤ^betti ⊕ ℤ/t_1 ⊕ … ⊕ ℤ/t_m` with `t_1 | … | t_m`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            betti: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|t| u64::try_from(t).expect("torsion coefficient fits in u64"))
            .collect()
    }

    /// Least common multiple of the torsion coefficients (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one)
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z_{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Free chain groups `C_0 … C_n` with boundary maps `∂_k : C_k → C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    sizes: Vec<usize>,
    /// `boundaries[k-1]` is `∂_k`, a `sizes[k-1] × sizes[k]` matrix.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Checks shapes and `∂_{k-1} ∘ ∂_k = 0`.
    pub fn new(sizes: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, ChainError> {
        if sizes.is_empty() || boundaries.len() + 1 != sizes.len() {
            return Err(ChainError::Shape(boundaries.len()));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let k = i + 1;
            if b.rows() != sizes[k - 1] || b.cols() != sizes[k] {
                return Err(ChainError::Shape(k));
            }
        }
        for k in 2..sizes.len() {
            let prod = boundaries[k - 2]
                .mul(&boundaries[k - 1])
                .map_err(|_| ChainError::Shape(k))?;
            if !prod.is_zero() {
                return Err(ChainError::NotAComplex(k));
            }
        }
        Ok(ChainComplex { sizes, boundaries })
    }

    pub fn dimension(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes.get(k).copied().unwrap_or(0)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// `∂_k`; degenerate degrees yield correctly shaped empty matrices.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        if k == 0 {
            IntMatrix::zeros(0, self.size(0))
        } else if k <= self.dimension() {
            self.boundaries[k - 1].clone()
        } else {
            IntMatrix::zeros(self.size(k - 1), 0)
        }
    }

    pub(crate) fn boundary_ref(&self, k: usize) -> &IntMatrix {
        &self.boundaries[k - 1]
    }

    fn check_chain(&self, c: &IntegerChain) -> Result<(), ChainError> {
        if c.degree() > self.dimension() {
            return Err(ChainError::DegreeOutOfRange {
                degree: c.degree(),
                max: self.dimension(),
            });
        }
        if let Some(i) = c.max_index() {
            if i >= self.size(c.degree()) {
                return Err(ChainError::IndexOutOfRange {
                    degree: c.degree(),
                    index: i,
                    size: self.size(c.degree()),
                });
            }
        }
        Ok(())
    }

    pub fn boundary(&self, c: &IntegerChain) -> Result<IntegerChain, ChainError> {
        if c.degree() == 0 {
            return Err(ChainError::DegreeZero);
        }
        self.check_chain(c)?;
        let k = c.degree();
        let b = self.boundary_ref(k);
        let mut out = IntegerChain::zero(k - 1);
        for (j, x) in c.iter() {
            for i in 0..b.rows() {
                let e = b.get(i, j);
                if !e.is_zero() {
                    out.add_term(i, e * x);
                }
            }
        }
        Ok(out)
    }

    /// True when `∂c = 0`; every 0-chain is a cycle.
    pub fn is_cycle(&self, c: &IntegerChain) -> bool {
        if c.degree() == 0 {
            return self.check_chain(c).is_ok();
        }
        self.boundary(c).is_ok_and(|b| b.is_zero())
    }

    pub fn homology(&self, k: usize) -> Result<HomologyGroup, ChainError> {
        if k > self.dimension() {
            return Err(ChainError::DegreeOutOfRange {
                degree: k,
                max: self.dimension(),
            });
        }
        let rank_out = invariant_factors_with(&self.boundary_matrix(k), Parallelism::Auto).len();
        let into = invariant_factors_with(&self.boundary_matrix(k + 1), Parallelism::Auto);
        Ok(assemble(self.size(k), rank_out, &into))
    }

    /// All homology groups `H_0 … H_n`, computing each `∂` normal form once.
    pub fn homology_all(&self, mode: Parallelism) -> Vec<HomologyGroup> {
        let n = self.dimension();
        let factors =
            par::map_range(n + 2, mode, |k| invariant_factors_with(&self.boundary_matrix(k), mode));
        (0..=n)
            .map(|k| assemble(self.size(k), factors[k].len(), &factors[k + 1]))
            .collect()
    }

    /// Coordinates on `H_k` derived from the normal form of `∂_{k+1}`.
    pub fn class_map(&self, k: usize) -> Result<HomologyClassMap, ChainError> {
        if k > self.dimension() {
            return Err(ChainError::DegreeOutOfRange {
                degree: k,
                max: self.dimension(),
            });
        }
        Ok(HomologyClassMap::new(&self.boundary_matrix(k + 1), k))
    }
}

fn assemble(size: usize, rank_out: usize, into: &[BigInt]) -> HomologyGroup {
    HomologyGroup {
        betti: size - rank_out - into.len(),
        torsion: into.iter().filter(|d| !d.is_one()).cloned().collect(),
    }
}

/// Homology class of a k-cycle: residues modulo each torsion coefficient plus
/// the coordinates outside the saturated boundary lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(Zero::is_zero) && self.free.iter().all(Zero::is_zero)
    }
}

/// Change of basis `y = U·x` on `C_k` adapted to `im ∂_{k+1}`, where
/// `U · ∂_{k+1} · V = D`.
#[derive(Clone, Debug)]
pub struct HomologyClassMap {
    degree: usize,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    divisors: Vec<BigInt>,
}

impl HomologyClassMap {
    fn new(boundary: &IntMatrix, degree: usize) -> Self {
        let (s, u_inv) = smith_with_left_inverse(boundary, Parallelism::Auto);
        let divisors = s.divisors();
        HomologyClassMap {
            degree,
            u: s.u,
            u_inv,
            v: s.v,
            divisors,
        }
    }

    fn torsion_slots(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.divisors
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_one())
    }

    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.torsion_slots().map(|(_, d)| d.clone()).collect()
    }

    /// Class of a cycle given as a dense coefficient vector.
    pub fn class_of_dense(&self, x: &[BigInt]) -> HomologyClass {
        let y = self.u.mul_vec(x).expect("chain length matches basis");
        let torsion = self
            .torsion_slots()
            .map(|(i, d)| y[i].mod_floor(d))
            .collect();
        let free = y[self.divisors.len()..].to_vec();
        HomologyClass { torsion, free }
    }

    pub fn class_of(&self, c: &IntegerChain) -> HomologyClass {
        assert_eq!(c.degree(), self.degree, "chain degree mismatch");
        self.class_of_dense(&c.to_dense(self.u.cols()))
    }

    /// Linear part of [`class_of_dense`] before reduction, restricted to the
    /// torsion slots; additive over arbitrary chains.
    pub(crate) fn torsion_coordinates(&self, c: &IntegerChain) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.torsion_orders().len()];
        for (slot, (i, _)) in self.torsion_slots().enumerate() {
            for (j, x) in c.iter() {
                let uij = self.u.get(i, j);
                if !uij.is_zero() {
                    out[slot] += uij * x;
                }
            }
        }
        out
    }

    /// `(g, d, w)` per torsion slot: `g = U⁻¹ e_i` is a cycle of order `d`
    /// and `∂w = d·g` with `w = V e_i`.
    pub fn torsion_generators(&self) -> Vec<(IntegerChain, BigInt, IntegerChain)> {
        self.torsion_slots()
            .map(|(i, d)| {
                let g = IntegerChain::from_dense(self.degree, &self.u_inv.column(i));
                let w = IntegerChain::from_dense(self.degree + 1, &self.v.column(i));
                (g, d.clone(), w)
            })
            .collect()
    }
}

/// Sign of the permutation sorting `xs` (all distinct).
pub(crate) fn permutation_sign(xs: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                sign = -sign;
            }
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Boundary of a single triangle [0,1,2]: a circle.
    fn circle() -> ChainComplex {
        // edges: 01, 02, 12
        let d1 = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]).unwrap();
        ChainComplex::new(vec![3, 3], vec![d1]).unwrap()
    }

    fn filled_triangle() -> ChainComplex {
        let d1 = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]).unwrap();
        // ∂[0,1,2] = [1,2] - [0,2] + [0,1]
        let d2 = IntMatrix::from_rows(&[vec![1], vec![-1], vec![1]]).unwrap();
        ChainComplex::new(vec![3, 3, 1], vec![d1, d2]).unwrap()
    }

    /// Cellular ℝP²: one cell per degree, ∂_1 = 0, ∂_2 = 2.
    fn rp2() -> ChainComplex {
        let d1 = IntMatrix::zeros(1, 1);
        let d2 = IntMatrix::from_rows(&[vec![2]]).unwrap();
        ChainComplex::new(vec![1, 1, 1], vec![d1, d2]).unwrap()
    }

    #[test]
    fn triangle_boundary_signs() {
        let cx = filled_triangle();
        let b = cx.boundary(&IntegerChain::basis(2, 0)).unwrap();
        assert_eq!(b, IntegerChain::from_terms(1, [(0, 1), (1, -1), (2, 1)]));
        assert!(cx.is_cycle(&b));
        assert!(cx.boundary(&b).unwrap().is_zero());
    }

    #[test]
    fn degree_zero_boundary_rejected() {
        let cx = circle();
        assert_eq!(
            cx.boundary(&IntegerChain::basis(0, 0)),
            Err(ChainError::DegreeZero)
        );
    }

    #[test]
    fn single_edge_is_not_cycle() {
        assert!(!circle().is_cycle(&IntegerChain::basis(1, 0)));
    }

    #[test]
    fn non_complex_rejected() {
        let d1 = IntMatrix::from_rows(&[vec![1]]).unwrap();
        let d2 = IntMatrix::from_rows(&[vec![1]]).unwrap();
        assert_eq!(
            ChainComplex::new(vec![1, 1, 1], vec![d1, d2]),
            Err(ChainError::NotAComplex(2))
        );
    }

    #[test]
    fn circle_and_disk_homology() {
        let c = circle();
        assert_eq!(c.homology(0).unwrap(), HomologyGroup::free(1));
        assert_eq!(c.homology(1).unwrap(), HomologyGroup::free(1));
        let d = filled_triangle();
        assert_eq!(d.homology_all(Parallelism::Sequential), vec![
            HomologyGroup::free(1),
            HomologyGroup::trivial(),
            HomologyGroup::trivial()
        ]);
        assert!(matches!(
            d.homology(3),
            Err(ChainError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn projective_plane_torsion() {
        let cx = rp2();
        let h1 = cx.homology(1).unwrap();
        assert_eq!(h1.torsion, vec![BigInt::from(2)]);
        assert_eq!(h1.to_string(), "Z_2");
        let map = cx.class_map(1).unwrap();
        let gens = map.torsion_generators();
        assert_eq!(gens.len(), 1);
        let (g, d, w) = &gens[0];
        assert_eq!(cx.boundary(w).unwrap(), g.scale(d));
        assert!(!map.class_of(g).is_zero());
        assert!(map.class_of(&g.scale(&BigInt::from(2))).is_zero());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }
}
