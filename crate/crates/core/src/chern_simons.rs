//! Level and charge constraints and Wilson-line expectation values.
//!
//! For a link with components `Z_i`, charges `q_i`, framings `Z_i^f` and
//! level `k`, the expectation is `exp(2πi·φ)` with
//!
//! `φ = −(1/4k)·[Σ q_i²·lk(Z_i, Z_i^f) + 2·Σ_{i<j} q_i q_j·lk(Z_i, Z_j)]`
//!
//! reduced mod 1. Linking numbers resolve their first argument.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::complex::IntegerChain;
use crate::error::{CsError, LinkingError, Rejection};
use crate::linalg::PhaseModOne;
use crate::linking::{
    check_disjoint, classify, intersection_number, pairing, ClassKind, CycleClass, FramedCycle,
    LinkingNumber,
};
use crate::manifold::Triangulation;
use crate::par::{self, Parallelism};

/// A nonzero Chern-Simons level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CsLevel(i64);

impl CsLevel {
    pub fn new(k: i64) -> Result<Self, CsError> {
        if k == 0 {
            Err(CsError::ZeroLevel)
        } else {
            Ok(CsLevel(k))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }
}

fn torsion_exponent(tri: &Triangulation) -> Result<u64, CsError> {
    let h1 = tri.h1();
    if h1.betti > 0 {
        return Err(CsError::UnsupportedManifold(h1.betti));
    }
    Ok(h1
        .torsion_exponent()
        .to_u64()
        .expect("torsion exponent fits in u64"))
}

/// Accepts `k` iff the torsion exponent `p` of `H_1` divides it.
pub fn check_level(k: CsLevel, tri: &Triangulation) -> Result<(), CsError> {
    let p = torsion_exponent(tri)?;
    if k.0.rem_euclid(p as i64) == 0 {
        Ok(())
    } else {
        Err(CsError::Rejected(Rejection::Level { k: k.0, exponent: p }))
    }
}

/// Trivial cycles take any nonzero charge; torsion degree `p` needs `p | q`.
pub fn check_charge(
    component: &str,
    q: i64,
    class: &CycleClass,
    tri: &Triangulation,
) -> Result<(), CsError> {
    if q == 0 {
        return Err(CsError::ZeroCharge(component.to_string()));
    }
    match class.kind() {
        ClassKind::Trivial => Ok(()),
        ClassKind::Torsion(p) if q.rem_euclid(p as i64) == 0 => Ok(()),
        ClassKind::Torsion(p) => Err(CsError::Rejected(Rejection::Charge {
            component: component.to_string(),
            q,
            degree: p,
        })),
        ClassKind::Free => Err(CsError::UnsupportedManifold(tri.h1().betti)),
    }
}

/// A framed, charged component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilsonComponent {
    pub framed: FramedCycle,
    pub charge: i64,
}

/// Components whose cycles and pushoffs are pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WilsonLink {
    components: Vec<WilsonComponent>,
}

impl WilsonLink {
    pub fn new(components: Vec<WilsonComponent>) -> Result<Self, CsError> {
        for c in &components {
            if c.charge == 0 {
                return Err(CsError::ZeroCharge(c.framed.name().to_string()));
            }
        }
        for (i, a) in components.iter().enumerate() {
            let a_f = format!("{}^f", a.framed.name());
            for b in &components[i + 1..] {
                let b_f = format!("{}^f", b.framed.name());
                let pairs = [
                    ((a.framed.name(), a.framed.cycle()), (b.framed.name(), b.framed.cycle())),
                    ((a.framed.name(), a.framed.cycle()), (b_f.as_str(), b.framed.pushoff())),
                    ((a_f.as_str(), a.framed.pushoff()), (b.framed.name(), b.framed.cycle())),
                    ((a_f.as_str(), a.framed.pushoff()), (b_f.as_str(), b.framed.pushoff())),
                ];
                for (x, y) in pairs {
                    check_disjoint(x, y)?;
                }
            }
        }
        Ok(WilsonLink { components })
    }

    pub fn components(&self) -> &[WilsonComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// `exp(2πi·phase)`; the modulus is exactly 1 by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpectationValue {
    pub phase: PhaseModOne,
}

impl ExpectationValue {
    /// Decimal rendering of the complex value, for display only.
    pub fn render(&self, digits: usize) -> String {
        self.phase.render_complex(digits)
    }
}

/// Per-component data behind an evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    pub name: String,
    pub kind: ClassKind,
    pub charge: i64,
    pub self_linking: LinkingNumber,
}

/// Full result of [`evaluate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub components: Vec<ComponentData>,
    /// Symmetric; the diagonal holds self-linking numbers and entry
    /// `(i, j)` for `i < j` is `lk(Z_i, Z_j)`.
    pub linking: Vec<Vec<LinkingNumber>>,
    pub expectation: ExpectationValue,
}

/// `−(1/4k)·[Σ q_i² L_ii + 2 Σ_{i<j} q_i q_j L_ij]` mod 1.
pub fn phase_from_linking(charges: &[i64], linking: &[Vec<LinkingNumber>], k: CsLevel) -> PhaseModOne {
    let mut total = BigRational::zero();
    for (i, &qi) in charges.iter().enumerate() {
        let qi = BigInt::from(qi);
        total += linking[i][i].value() * BigRational::from_integer(&qi * &qi);
        for (j, &qj) in charges.iter().enumerate().skip(i + 1) {
            let w = BigInt::from(2) * &qi * BigInt::from(qj);
            total += linking[i][j].value() * BigRational::from_integer(w);
        }
    }
    let scale = BigRational::new(BigInt::from(-1), BigInt::from(4 * k.0));
    PhaseModOne::new(total * scale)
}

/// Checks constraints, then evaluates the expectation value.
pub fn wilson_expectation(
    link: &WilsonLink,
    k: CsLevel,
    tri: &Triangulation,
) -> Result<ExpectationValue, CsError> {
    Ok(evaluate(link, k, tri, Parallelism::Auto)?.expectation)
}

/// [`wilson_expectation`] with the linking data it was computed from.
pub fn evaluate(
    link: &WilsonLink,
    k: CsLevel,
    tri: &Triangulation,
    mode: Parallelism,
) -> Result<Evaluation, CsError> {
    check_level(k, tri)?;
    let classes = par::map(link.components(), mode, |c| classify(c.framed.cycle(), tri));
    let mut witnesses = Vec::with_capacity(classes.len());
    for (c, class) in link.components().iter().zip(&classes) {
        check_charge(c.framed.name(), c.charge, class, tri)?;
        let (Some(p), Some(w)) = (class.degree(), class.witness()) else {
            return Err(LinkingError::FreeCycle(c.framed.name().to_string()).into());
        };
        witnesses.push((w.clone(), p));
    }
    evaluate_unchecked(link, k, tri, &witnesses, mode)
}

/// Evaluates with caller-chosen bounding chains: `witnesses[i] = (C_i, p_i)`
/// with `∂C_i = p_i·Z_i`. Constraints are checked against `p_i`.
pub fn evaluate_with_witnesses(
    link: &WilsonLink,
    k: CsLevel,
    tri: &Triangulation,
    witnesses: &[(IntegerChain, u64)],
    mode: Parallelism,
) -> Result<Evaluation, CsError> {
    check_level(k, tri)?;
    if witnesses.len() != link.len() {
        return Err(LinkingError::BadWitness { degree: 0 }.into());
    }
    for (c, (w, p)) in link.components().iter().zip(witnesses) {
        let boundary = tri
            .chain_complex()
            .boundary(w)
            .map_err(|_| LinkingError::BadWitness { degree: *p })?;
        if *p == 0 || boundary != c.framed.cycle().to_primal(tri).scale(&BigInt::from(*p)) {
            return Err(LinkingError::BadWitness { degree: *p }.into());
        }
    }
    evaluate_unchecked(link, k, tri, witnesses, mode)
}

fn evaluate_unchecked(
    link: &WilsonLink,
    k: CsLevel,
    tri: &Triangulation,
    witnesses: &[(IntegerChain, u64)],
    mode: Parallelism,
) -> Result<Evaluation, CsError> {
    let comps = link.components();
    let n = comps.len();
    let mut kinds = Vec::with_capacity(n);
    for (c, (_, p)) in comps.iter().zip(witnesses) {
        let kind = if *p == 1 {
            ClassKind::Trivial
        } else {
            ClassKind::Torsion(*p)
        };
        check_charge(
            c.framed.name(),
            c.charge,
            &CycleClass::from_parts(kind, None),
            tri,
        )?;
        kinds.push(kind);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values = par::map(&pairs, mode, |&(i, j)| {
        let (c, p) = &witnesses[i];
        let target = if i == j {
            comps[j].framed.pushoff()
        } else {
            comps[j].framed.cycle()
        };
        pairing(c, *p, target, tri)
    });
    let mut linking = vec![vec![LinkingNumber::from_ratio(0, 1); n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        linking[j][i] = v.clone();
        linking[i][j] = v;
    }
    let charges: Vec<i64> = comps.iter().map(|c| c.charge).collect();
    let phase = phase_from_linking(&charges, &linking, k);
    let components = comps
        .iter()
        .zip(kinds)
        .enumerate()
        .map(|(i, (c, kind))| ComponentData {
            name: c.framed.name().to_string(),
            kind,
            charge: c.charge,
            self_linking: linking[i][i].clone(),
        })
        .collect();
    Ok(Evaluation {
        components,
        linking,
        expectation: ExpectationValue { phase },
    })
}

/// Phase of a single component from `I = C · Z^f` with `∂C = p·Z`:
/// `−(q²/4k)·(I/p)`.
pub fn single_component_phase(q: i64, k: CsLevel, intersection: &BigInt, p: u64) -> PhaseModOne {
    let q2 = BigInt::from(q) * BigInt::from(q);
    PhaseModOne::new(BigRational::new(
        -(q2 * intersection),
        BigInt::from(4 * k.0) * BigInt::from(p),
    ))
}

/// For a trivial framed cycle, evaluates the torsion-degree formula with
/// `2C` and with an independently solved `C'` (`∂C' = 2Z`), both at degree
/// 2, and checks they agree with the degree-1 formula on `C`.
pub fn torsion_form_contains_trivial_form(
    fz: &FramedCycle,
    q: i64,
    k: CsLevel,
    tri: &Triangulation,
) -> Result<bool, CsError> {
    let class = classify(fz.cycle(), tri);
    if class.kind() != ClassKind::Trivial {
        return Err(LinkingError::FreeCycle(fz.name().to_string()).into());
    }
    let c = class.witness().expect("trivial classes carry a witness");
    let direct = single_component_phase(q, k, &intersection_number(c, fz.pushoff(), tri), 1);
    let doubled = c.scale(&BigInt::from(2));
    let via_double = single_component_phase(q, k, &intersection_number(&doubled, fz.pushoff(), tri), 2);
    let size = tri.edges().len();
    let rhs = fz.cycle().to_primal(tri).scale(&BigInt::from(2)).to_dense(size);
    let solved = tri
        .face_solver()
        .solve(&rhs)
        .expect("chain matches edge count")
        .expect("twice a boundary is a boundary");
    let c2 = IntegerChain::from_dense(2, &solved);
    let via_solved = single_component_phase(q, k, &intersection_number(&c2, fz.pushoff(), tri), 2);
    Ok(direct == via_double && direct == via_solved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::FramedCycle;
    use crate::manifold::{build_s3, build_s3_join};

    #[test]
    fn zero_level_rejected() {
        assert_eq!(CsLevel::new(0), Err(CsError::ZeroLevel));
    }

    #[test]
    fn sphere_accepts_every_level() {
        let tri = build_s3();
        for k in [-3, 1, 2, 7] {
            assert!(check_level(CsLevel::new(k).unwrap(), &tri).is_ok());
        }
    }

    #[test]
    fn charge_zero_rejected() {
        let tri = build_s3();
        let z = tri.designated("triangle_loop").unwrap();
        let class = classify(z, &tri);
        assert!(matches!(
            check_charge("z", 0, &class, &tri),
            Err(CsError::ZeroCharge(_))
        ));
        assert!(check_charge("z", 3, &class, &tri).is_ok());
    }

    #[test]
    fn hopf_link_phase() {
        let tri = build_s3_join();
        let d = |n: &str| tri.designated(n).unwrap().clone();
        let a = FramedCycle::new(&tri, "a", d("hopf_a"), d("hopf_a_f")).unwrap();
        let b = FramedCycle::new(&tri, "b", d("hopf_b"), d("hopf_b_f")).unwrap();
        let link = WilsonLink::new(vec![
            WilsonComponent { framed: a, charge: 1 },
            WilsonComponent { framed: b, charge: 1 },
        ])
        .unwrap();
        let k = CsLevel::new(2).unwrap();
        let seq = evaluate(&link, k, &tri, Parallelism::Sequential).unwrap();
        let par = evaluate(&link, k, &tri, Parallelism::Auto).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.linking[0][1], LinkingNumber::from_ratio(1, 1));
        let expected = phase_from_linking(&[1, 1], &seq.linking, k);
        assert_eq!(seq.expectation.phase, expected);
    }

    #[test]
    fn overlapping_pushoffs_rejected() {
        let tri = build_s3_join();
        let d = |n: &str| tri.designated(n).unwrap().clone();
        let a = FramedCycle::new(&tri, "a", d("hopf_a"), d("hopf_a_f")).unwrap();
        let b = FramedCycle::new(&tri, "b", d("hopf_b"), d("hopf_a_f")).unwrap();
        let err = WilsonLink::new(vec![
            WilsonComponent { framed: a, charge: 1 },
            WilsonComponent { framed: b, charge: 1 },
        ])
        .unwrap_err();
        assert!(matches!(err, CsError::Linking(LinkingError::NotDisjoint(..))));
    }
}
