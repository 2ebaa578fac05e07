//! Closed walks in the dual 1-skeleton.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::triangulation::Triangulation;
use crate::complex::IntegerChain;

/// One step of a dual walk: leave `tet` through the face opposite its local
/// vertex `face`.
///
/// `sign` is `[∂tet : f]` for that face in its sorted orientation: a crossing
/// counts `+1` when it leaves the tetrahedron whose boundary orientation
/// agrees with the face's stored orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub tet: usize,
    pub face: u8,
    pub sign: i8,
}

impl Crossing {
    pub fn to_triple(self) -> [i64; 3] {
        [self.tet as i64, self.face as i64, self.sign as i64]
    }
}

/// A closed walk through face-adjacent tetrahedra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualCycle {
    steps: Vec<Crossing>,
}

impl DualCycle {
    /// Validates adjacency, closure and crossing signs against `tri`.
    pub fn from_crossings(tri: &Triangulation, steps: Vec<Crossing>) -> Result<Self, String> {
        if steps.is_empty() {
            return Err("walk is empty".into());
        }
        let n = tri.tetrahedra().len();
        for (k, s) in steps.iter().enumerate() {
            if s.tet >= n {
                return Err(format!("step {k}: tetrahedron {} out of range", s.tet));
            }
            if s.face > 3 {
                return Err(format!("step {k}: face index {} out of range 0..=3", s.face));
            }
            let expected = tri.tet_face_sign(s.tet, s.face as usize);
            if s.sign != expected {
                return Err(format!(
                    "step {k}: crossing sign {} disagrees with orientation (expected {expected})",
                    s.sign
                ));
            }
            let next = steps[(k + 1) % steps.len()].tet;
            let across = tri.neighbor(s.tet, s.face as usize);
            if across != next {
                return Err(format!(
                    "step {k}: face {} of tetrahedron {} leads to {across}, walk continues at {next}",
                    s.face, s.tet
                ));
            }
        }
        Ok(DualCycle { steps })
    }

    /// Builds the walk visiting `tets` in order and closing back to the start.
    pub fn from_tets(tri: &Triangulation, tets: &[usize]) -> Result<Self, String> {
        if tets.len() < 2 {
            return Err("a closed dual walk needs at least two tetrahedra".into());
        }
        let n = tri.tetrahedra().len();
        let mut steps = Vec::with_capacity(tets.len());
        for (k, &t) in tets.iter().enumerate() {
            let next = tets[(k + 1) % tets.len()];
            if t >= n || next >= n {
                return Err(format!("step {k}: tetrahedron out of range"));
            }
            let face = tri
                .shared_face(t, next)
                .ok_or_else(|| format!("step {k}: tetrahedra {t} and {next} are not adjacent"))?;
            steps.push(Crossing {
                tet: t,
                face: face as u8,
                sign: tri.tet_face_sign(t, face),
            });
        }
        Ok(DualCycle { steps })
    }

    pub fn from_triples(tri: &Triangulation, triples: &[[i64; 3]]) -> Result<Self, String> {
        let mut steps = Vec::with_capacity(triples.len());
        for (k, &[t, f, s]) in triples.iter().enumerate() {
            let tet = usize::try_from(t).map_err(|_| format!("step {k}: negative tetrahedron index"))?;
            let face = u8::try_from(f)
                .ok()
                .filter(|&f| f <= 3)
                .ok_or_else(|| format!("step {k}: face index {f} out of range 0..=3"))?;
            let sign = match s {
                1 => 1,
                -1 => -1,
                _ => return Err(format!("step {k}: sign {s} is not ±1")),
            };
            steps.push(Crossing { tet, face, sign });
        }
        Self::from_crossings(tri, steps)
    }

    pub fn steps(&self) -> &[Crossing] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn tets(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.tet).collect()
    }

    pub fn tet_set(&self) -> BTreeSet<usize> {
        self.steps.iter().map(|s| s.tet).collect()
    }

    /// No tetrahedron visited twice.
    pub fn is_simple(&self) -> bool {
        self.tet_set().len() == self.steps.len()
    }

    /// First tetrahedron shared with `other`, if any.
    pub fn shared_tet(&self, other: &DualCycle) -> Option<usize> {
        let mine = self.tet_set();
        other.steps.iter().map(|s| s.tet).find(|t| mine.contains(t))
    }

    pub fn to_triples(&self) -> Vec<[i64; 3]> {
        self.steps.iter().map(|s| s.to_triple()).collect()
    }

    /// The same walk traversed backwards.
    pub fn reversed(&self, tri: &Triangulation) -> DualCycle {
        let mut tets = self.tets();
        tets.reverse();
        DualCycle::from_tets(tri, &tets).expect("reversal of a valid walk is valid")
    }

    /// The walk traversed `times` times in a row.
    pub fn repeated(&self, times: usize) -> DualCycle {
        let mut steps = Vec::with_capacity(self.steps.len() * times);
        for _ in 0..times {
            steps.extend_from_slice(&self.steps);
        }
        DualCycle { steps }
    }

    /// Global face index crossed at step `k`.
    pub fn face_at(&self, tri: &Triangulation, k: usize) -> usize {
        let s = self.steps[k];
        tri.tet_face(s.tet, s.face as usize)
    }

    /// Dual 2-cochain: signed crossing count per face.
    pub fn crossing_counts(&self, tri: &Triangulation) -> IntegerChain {
        let mut c = IntegerChain::zero(2);
        for (k, s) in self.steps.iter().enumerate() {
            c.add_term(self.face_at(tri, k), BigInt::from(s.sign));
        }
        c
    }

    /// A primal 1-cycle homologous to this walk.
    pub fn to_primal(&self, tri: &Triangulation) -> IntegerChain {
        dual_to_primal(self, tri)
    }
}

/// Anchor vertex standing in for a tetrahedron's barycentre.
fn anchor(tri: &Triangulation, tet: usize) -> usize {
    *tri.tetrahedra()[tet].iter().min().expect("tetrahedron has vertices")
}

/// Primal edge path from the anchor of `tet` to the anchor of the
/// tetrahedron across its local face `face`, as signed edge indices.
pub(crate) fn step_path(tri: &Triangulation, tet: usize, face: usize) -> Vec<(usize, i8)> {
    let next = tri.neighbor(tet, face);
    let (a, b) = (anchor(tri, tet), anchor(tri, next));
    let edge = |x: usize, y: usize| {
        let idx = tri.edge_index(x, y).expect("path edge lies in the complex");
        (idx, if x < y { 1 } else { -1 })
    };
    if a == b {
        return Vec::new();
    }
    let here = &tri.tetrahedra()[tet];
    let there = &tri.tetrahedra()[next];
    if here.contains(&b) || there.contains(&a) {
        vec![edge(a, b)]
    } else {
        // Both anchors are apexes off the shared face; go through it.
        let w = *here
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != face)
            .map(|(_, v)| v)
            .min()
            .expect("face has vertices");
        vec![edge(a, w), edge(w, b)]
    }
}

/// Replaces each dual step `T → T'` by a primal path between the anchors of
/// `T` and `T'` inside `T ∪ T'`. The union is a ball containing the dual
/// step, so the resulting 1-cycle is homologous to the walk in the
/// complement of any cycle that avoids these tetrahedra.
pub fn dual_to_primal(z: &DualCycle, tri: &Triangulation) -> IntegerChain {
    let mut chain = IntegerChain::zero(1);
    for s in z.steps() {
        for (idx, sign) in step_path(tri, s.tet, s.face as usize) {
            chain.add_term(idx, BigInt::from(sign));
        }
    }
    chain
}
