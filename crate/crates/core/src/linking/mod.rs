//! Cycle classification, transverse intersection and rational linking.
//!
//! Cycles are dual walks; bounding chains are primal 2-chains. A dual step
//! crosses exactly one triangle, so the pairing of a 2-chain with a walk is
//! an exact signed count.

mod pushoff;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::IntegerChain;
use crate::error::LinkingError;
use crate::linalg::{format_rational, parse_rational, PhaseModOne};
use crate::manifold::{DualCycle, Triangulation};
use crate::par::{self, Parallelism};

pub use pushoff::{
    default_pushoff, default_pushoff_avoiding, pushoff_with_self_linking,
    shortest_cycle_with_class,
};

/// Where a cycle sits in `H_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Trivial,
    /// Not a boundary; `p·z` bounds for the minimal `p ≥ 2`.
    Torsion(u64),
    Free,
}

impl ClassKind {
    /// Minimal `p` with `p·z` a boundary (1 when trivial).
    pub fn degree(self) -> Option<u64> {
        match self {
            ClassKind::Trivial => Some(1),
            ClassKind::Torsion(p) => Some(p),
            ClassKind::Free => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ClassKind::Trivial => "trivial",
            ClassKind::Torsion(_) => "torsion",
            ClassKind::Free => "free",
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Torsion(p) => write!(f, "torsion (degree {p})"),
            other => f.write_str(other.label()),
        }
    }
}

/// Classification result with its bounding chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClass {
    kind: ClassKind,
    witness: Option<IntegerChain>,
}

impl CycleClass {
    pub(crate) fn from_parts(kind: ClassKind, witness: Option<IntegerChain>) -> Self {
        CycleClass { kind, witness }
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn degree(&self) -> Option<u64> {
        self.kind.degree()
    }

    /// 2-chain `C` with `∂C = p·z`; absent for free classes.
    pub fn witness(&self) -> Option<&IntegerChain> {
        self.witness.as_ref()
    }

    /// Recomputes `∂C = p·z` for the primal representative of `z`.
    pub fn verify(&self, tri: &Triangulation, z: &DualCycle) -> bool {
        match (self.degree(), &self.witness) {
            (Some(p), Some(c)) => witness_bounds(tri, c, p, z),
            _ => false,
        }
    }
}

fn witness_bounds(tri: &Triangulation, c: &IntegerChain, p: u64, z: &DualCycle) -> bool {
    if c.degree() != 2 {
        return false;
    }
    let Ok(boundary) = tri.chain_complex().boundary(c) else {
        return false;
    };
    boundary == z.to_primal(tri).scale(&BigInt::from(p))
}

/// Smallest `p ≤ t` with `p·z` a boundary, `t` the exponent of torsion
/// `H_1`; free when none works.
pub fn classify(z: &DualCycle, tri: &Triangulation) -> CycleClass {
    classify_primal(&z.to_primal(tri), tri)
}

pub(crate) fn classify_primal(z: &IntegerChain, tri: &Triangulation) -> CycleClass {
    let t = tri
        .torsion_exponent()
        .to_u64()
        .expect("torsion exponent fits in u64");
    let size = tri.edges().len();
    let solver = tri.face_solver();
    for p in 1..=t {
        let b = z.scale(&BigInt::from(p)).to_dense(size);
        if let Some(x) = solver.solve(&b).expect("chain matches edge count") {
            let kind = if p == 1 {
                ClassKind::Trivial
            } else {
                ClassKind::Torsion(p)
            };
            return CycleClass {
                kind,
                witness: Some(IntegerChain::from_dense(2, &x)),
            };
        }
    }
    CycleClass {
        kind: ClassKind::Free,
        witness: None,
    }
}

/// `Σ sign · C[f]` over the triangles `f` crossed by `z`.
pub fn intersection_number(c: &IntegerChain, z: &DualCycle, tri: &Triangulation) -> BigInt {
    let mut total = BigInt::zero();
    for (k, step) in z.steps().iter().enumerate() {
        let coeff = c.coefficient(z.face_at(tri, k));
        if !coeff.is_zero() {
            total += coeff * BigInt::from(step.sign);
        }
    }
    total
}

/// An exact rational linking number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkingNumber(BigRational);

impl LinkingNumber {
    pub fn new(value: BigRational) -> Self {
        LinkingNumber(value)
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        LinkingNumber(BigRational::new(numer.into(), denom.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The residue in ℚ/ℤ.
    pub fn mod_one(&self) -> PhaseModOne {
        PhaseModOne::new(self.0.clone())
    }
}

impl fmt::Display for LinkingNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for LinkingNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkingNumber({self})")
    }
}

impl Serialize for LinkingNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LinkingNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s)
            .map(LinkingNumber)
            .map_err(serde::de::Error::custom)
    }
}

/// `lk(z1, z2) = (C · z2) / p` with `∂C = p·z1`.
pub fn linking_number(
    z1: &DualCycle,
    z2: &DualCycle,
    tri: &Triangulation,
) -> Result<LinkingNumber, LinkingError> {
    linking_number_labeled(("z1", z1), ("z2", z2), tri)
}

/// [`linking_number`] with component names for diagnostics.
pub fn linking_number_labeled(
    (name1, z1): (&str, &DualCycle),
    (name2, z2): (&str, &DualCycle),
    tri: &Triangulation,
) -> Result<LinkingNumber, LinkingError> {
    check_disjoint((name1, z1), (name2, z2))?;
    let class = classify(z1, tri);
    let (Some(p), Some(c)) = (class.degree(), class.witness()) else {
        return Err(LinkingError::FreeCycle(name1.to_string()));
    };
    if classify(z2, tri).kind() == ClassKind::Free {
        return Err(LinkingError::FreeCycle(name2.to_string()));
    }
    Ok(pairing(c, p, z2, tri))
}

/// Linking number from a caller-supplied witness `C` with `∂C = p·z1`.
pub fn linking_with_witness(
    z1: &DualCycle,
    witness: &IntegerChain,
    p: u64,
    z2: &DualCycle,
    tri: &Triangulation,
) -> Result<LinkingNumber, LinkingError> {
    check_disjoint(("z1", z1), ("z2", z2))?;
    if p == 0 || !witness_bounds(tri, witness, p, z1) {
        return Err(LinkingError::BadWitness { degree: p });
    }
    Ok(pairing(witness, p, z2, tri))
}

pub(crate) fn pairing(c: &IntegerChain, p: u64, z2: &DualCycle, tri: &Triangulation) -> LinkingNumber {
    LinkingNumber(BigRational::new(
        intersection_number(c, z2, tri),
        BigInt::from(p),
    ))
}

pub(crate) fn check_disjoint(
    (name1, z1): (&str, &DualCycle),
    (name2, z2): (&str, &DualCycle),
) -> Result<(), LinkingError> {
    match z1.shared_tet(z2) {
        Some(t) => Err(LinkingError::NotDisjoint(
            name1.to_string(),
            name2.to_string(),
            t,
        )),
        None => Ok(()),
    }
}

/// True when `a - b` bounds.
pub fn homologous(a: &DualCycle, b: &DualCycle, tri: &Triangulation) -> bool {
    let diff = a.to_primal(tri).sub(&b.to_primal(tri));
    tri.h1_class_map().class_of(&diff).is_zero()
}

/// A cycle with an explicit disjoint, homologous parallel copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedCycle {
    name: String,
    cycle: DualCycle,
    pushoff: DualCycle,
}

impl FramedCycle {
    pub fn new(
        tri: &Triangulation,
        name: impl Into<String>,
        cycle: DualCycle,
        pushoff: DualCycle,
    ) -> Result<Self, LinkingError> {
        let name = name.into();
        let pushoff_name = format!("{name}^f");
        check_disjoint((&name, &cycle), (&pushoff_name, &pushoff))?;
        if !homologous(&cycle, &pushoff, tri) {
            return Err(LinkingError::NotHomologous {
                cycle: name,
                pushoff: pushoff_name,
            });
        }
        Ok(FramedCycle {
            name,
            cycle,
            pushoff,
        })
    }

    /// Frames `cycle` with [`default_pushoff_avoiding`].
    pub fn with_twist(
        tri: &Triangulation,
        name: impl Into<String>,
        cycle: DualCycle,
        twist: i64,
        avoid: &[&DualCycle],
    ) -> Result<Self, LinkingError> {
        let name = name.into();
        let pushoff = default_pushoff_avoiding(tri, &name, &cycle, twist, avoid)?;
        Self::new(tri, name, cycle, pushoff)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cycle(&self) -> &DualCycle {
        &self.cycle
    }

    pub fn pushoff(&self) -> &DualCycle {
        &self.pushoff
    }
}

/// `lk(z, z^f)`.
pub fn self_linking(fz: &FramedCycle, tri: &Triangulation) -> Result<LinkingNumber, LinkingError> {
    let pushoff_name = format!("{}^f", fz.name);
    linking_number_labeled((&fz.name, &fz.cycle), (&pushoff_name, &fz.pushoff), tri)
}

/// Linking matrix of framed cycles: `lk(Z_i, Z_i^f)` on the diagonal and
/// `lk(Z_i, Z_j)` above it, mirrored below.
pub fn pairing_matrix(
    framed: &[FramedCycle],
    tri: &Triangulation,
    mode: Parallelism,
) -> Result<Vec<Vec<LinkingNumber>>, LinkingError> {
    for (i, a) in framed.iter().enumerate() {
        for b in &framed[i + 1..] {
            check_disjoint((a.name(), a.cycle()), (b.name(), b.cycle()))?;
        }
    }
    let classes = par::map(framed, mode, |f| classify(f.cycle(), tri));
    let mut witnesses = Vec::with_capacity(framed.len());
    for (f, class) in framed.iter().zip(&classes) {
        match (class.degree(), class.witness()) {
            (Some(p), Some(c)) => witnesses.push((c, p)),
            _ => return Err(LinkingError::FreeCycle(f.name().to_string())),
        }
    }
    let n = framed.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values = par::map(&pairs, mode, |&(i, j)| {
        let (c, p) = witnesses[i];
        let target = if i == j {
            framed[j].pushoff()
        } else {
            framed[j].cycle()
        };
        pairing(c, p, target, tri)
    });
    let mut m = vec![vec![LinkingNumber::from_ratio(0, 1); n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        m[j][i] = v.clone();
        m[i][j] = v;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{build_s3, build_s3_join};
    use num_traits::Signed;

    #[test]
    fn sphere_loops_are_trivial() {
        let tri = build_s3();
        let z = tri.designated("triangle_loop").unwrap();
        let class = classify(z, &tri);
        assert_eq!(class.kind(), ClassKind::Trivial);
        assert!(class.verify(&tri, z));
    }

    #[test]
    fn closed_surface_pairs_to_zero() {
        let tri = build_s3_join();
        let z = tri.designated("row_0").unwrap();
        // Boundary of one tetrahedron visited by the walk.
        let t = z.steps()[0].tet;
        let mut c = IntegerChain::zero(2);
        for i in 0..4 {
            c.add_term(tri.tet_face(t, i), BigInt::from(tri.tet_face_sign(t, i)));
        }
        assert!(intersection_number(&c, z, &tri).is_zero());
    }

    #[test]
    fn overlapping_cycles_rejected() {
        let tri = build_s3_join();
        let z = tri.designated("hopf_a").unwrap();
        let err = linking_number(z, z, &tri).unwrap_err();
        assert!(matches!(err, LinkingError::NotDisjoint(..)));
    }

    #[test]
    fn hopf_pair_links_once() {
        let tri = build_s3_join();
        let a = tri.designated("hopf_a").unwrap();
        let b = tri.designated("hopf_b").unwrap();
        let l = linking_number(a, b, &tri).unwrap();
        assert_eq!(l.value().abs(), BigRational::from_integer(1.into()));
    }

    #[test]
    fn linking_number_text_round_trip() {
        let l = LinkingNumber::from_ratio(-3, 2);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, "\"-3/2\"");
        assert_eq!(serde_json::from_str::<LinkingNumber>(&s).unwrap(), l);
    }
}
