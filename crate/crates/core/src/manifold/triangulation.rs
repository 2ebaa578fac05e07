use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use super::dual::{Crossing, DualCycle};
use crate::complex::{permutation_sign, ChainComplex, HomologyClassMap, HomologyGroup};
use crate::error::{ChainError, ManifoldError};
use crate::linalg::{IntMatrix, IntegerSolver};
use crate::par::Parallelism;

/// A closed, oriented, combinatorial 3-manifold.
///
/// Tetrahedra are ordered vertex 4-tuples; the order fixes the orientation.
/// Edges and triangles are stored sorted, and that sorted order is their
/// reference orientation in the chain complex.
#[derive(Clone, Debug)]
pub struct Triangulation {
    name: String,
    vertex_count: usize,
    tets: Vec<[usize; 4]>,
    edges: Vec<[usize; 2]>,
    faces: Vec<[usize; 3]>,
    edge_index: HashMap<[usize; 2], usize>,
    face_index: HashMap<[usize; 3], usize>,
    /// Global index of the face opposite local vertex `i`.
    tet_faces: Vec<[usize; 4]>,
    /// Incidence of that face in `∂T`, relative to its sorted orientation.
    tet_face_signs: Vec<[i8; 4]>,
    /// Tetrahedron across the face opposite local vertex `i`.
    neighbors: Vec<[usize; 4]>,
    complex: ChainComplex,
    designated: BTreeMap<String, DualCycle>,
    cache: Arc<Cache>,
}

#[derive(Debug, Default)]
struct Cache {
    homology: OnceLock<Vec<HomologyGroup>>,
    h1_map: OnceLock<HomologyClassMap>,
    face_solver: OnceLock<IntegerSolver>,
}

impl Triangulation {
    /// Builds and fully validates a triangulation.
    ///
    /// Checks run in order: tetrahedron well-formedness, every triangle in
    /// exactly two tetrahedra, opposite induced orientations on each shared
    /// triangle, circular edge links, spherical vertex links, `∂² = 0`.
    pub fn new(
        name: impl Into<String>,
        vertex_count: usize,
        tets: Vec<[usize; 4]>,
    ) -> Result<Self, ManifoldError> {
        let name = name.into();
        let mut seen = HashSet::new();
        for (t, tet) in tets.iter().enumerate() {
            if let Some(&v) = tet.iter().find(|&&v| v >= vertex_count) {
                return Err(ManifoldError::BadTetrahedron {
                    tet: t,
                    reason: format!("vertex {v} out of range 0..{vertex_count}"),
                });
            }
            let mut s = *tet;
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(ManifoldError::BadTetrahedron {
                    tet: t,
                    reason: "repeated vertex".into(),
                });
            }
            if !seen.insert(s) {
                return Err(ManifoldError::BadTetrahedron {
                    tet: t,
                    reason: "duplicate vertex set".into(),
                });
            }
        }
        if tets.is_empty() {
            return Err(ManifoldError::Parse("no tetrahedra".into()));
        }

        // Faces with their cobounding (tet, local index).
        let mut face_map: BTreeMap<[usize; 3], Vec<(usize, usize)>> = BTreeMap::new();
        let mut edge_set: BTreeMap<[usize; 2], ()> = BTreeMap::new();
        for (t, tet) in tets.iter().enumerate() {
            for i in 0..4 {
                face_map.entry(sorted_face(tet, i)).or_default().push((t, i));
            }
            for a in 0..4 {
                for b in a + 1..4 {
                    let e = sorted2(tet[a], tet[b]);
                    edge_set.insert(e, ());
                }
            }
        }
        for (face, cob) in &face_map {
            match cob.len() {
                2 => {}
                1 => return Err(ManifoldError::NotClosed { face: *face }),
                n => {
                    return Err(ManifoldError::NonManifoldFace {
                        face: *face,
                        count: n,
                    })
                }
            }
        }
        let faces: Vec<[usize; 3]> = face_map.keys().copied().collect();
        let face_index: HashMap<[usize; 3], usize> =
            faces.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let edges: Vec<[usize; 2]> = edge_set.keys().copied().collect();
        let edge_index: HashMap<[usize; 2], usize> =
            edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();

        let mut tet_faces = vec![[0usize; 4]; tets.len()];
        let mut tet_face_signs = vec![[0i8; 4]; tets.len()];
        for (t, tet) in tets.iter().enumerate() {
            for i in 0..4 {
                tet_faces[t][i] = face_index[&sorted_face(tet, i)];
                tet_face_signs[t][i] = face_incidence(tet, i);
            }
        }
        let mut neighbors = vec![[usize::MAX; 4]; tets.len()];
        for (face, cob) in &face_map {
            let (t0, i0) = cob[0];
            let (t1, i1) = cob[1];
            if tet_face_signs[t0][i0] + tet_face_signs[t1][i1] != 0 {
                return Err(ManifoldError::OrientationMismatch {
                    face: *face,
                    first: t0,
                    second: t1,
                });
            }
            neighbors[t0][i0] = t1;
            neighbors[t1][i1] = t0;
        }

        check_edge_links(&tets, &edges)?;
        check_vertex_links(vertex_count, &tets)?;

        let complex = build_complex(vertex_count, &tets, &edges, &edge_index, &faces, &tet_faces, &tet_face_signs)
            .map_err(|e| match e {
                ChainError::NotAComplex(k) => ManifoldError::BoundarySquared(k),
                other => ManifoldError::Parse(other.to_string()),
            })?;

        Ok(Triangulation {
            name,
            vertex_count,
            tets,
            edges,
            faces,
            edge_index,
            face_index,
            tet_faces,
            tet_face_signs,
            neighbors,
            complex,
            designated: BTreeMap::new(),
            cache: Arc::new(Cache::default()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn tetrahedra(&self) -> &[[usize; 4]] {
        &self.tets
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// `(vertices, edges, triangles, tetrahedra)`.
    pub fn f_vector(&self) -> [usize; 4] {
        [
            self.vertex_count,
            self.edges.len(),
            self.faces.len(),
            self.tets.len(),
        ]
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index.get(&sorted2(a, b)).copied()
    }

    pub fn face_index(&self, mut f: [usize; 3]) -> Option<usize> {
        f.sort_unstable();
        self.face_index.get(&f).copied()
    }

    /// Global index of the face of `tet` opposite its local vertex `local`.
    pub fn tet_face(&self, tet: usize, local: usize) -> usize {
        self.tet_faces[tet][local]
    }

    /// `[∂T : f]` for the face opposite local vertex `local`.
    pub fn tet_face_sign(&self, tet: usize, local: usize) -> i8 {
        self.tet_face_signs[tet][local]
    }

    pub fn neighbor(&self, tet: usize, local: usize) -> usize {
        self.neighbors[tet][local]
    }

    pub fn neighbors(&self, tet: usize) -> [usize; 4] {
        self.neighbors[tet]
    }

    /// Local face index through which `from` touches `to`, if adjacent.
    pub fn shared_face(&self, from: usize, to: usize) -> Option<usize> {
        self.neighbors[from].iter().position(|&n| n == to)
    }

    pub fn chain_complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn designated_cycles(&self) -> &BTreeMap<String, DualCycle> {
        &self.designated
    }

    pub fn designated(&self, name: &str) -> Option<&DualCycle> {
        self.designated.get(name)
    }

    /// Validates a crossing list and stores it under `name`.
    pub fn with_designated(
        mut self,
        name: impl Into<String>,
        steps: Vec<Crossing>,
    ) -> Result<Self, ManifoldError> {
        let name = name.into();
        let cycle = DualCycle::from_crossings(&self, steps).map_err(|reason| {
            ManifoldError::BadDualCycle {
                name: name.clone(),
                reason,
            }
        })?;
        self.designated.insert(name, cycle);
        Ok(self)
    }

    pub(crate) fn insert_designated(&mut self, name: String, cycle: DualCycle) {
        self.designated.insert(name, cycle);
    }

    /// `H_0 … H_3`, computed once.
    pub fn homology(&self) -> &[HomologyGroup] {
        self.cache
            .homology
            .get_or_init(|| self.complex.homology_all(Parallelism::Auto))
    }

    pub fn h1(&self) -> &HomologyGroup {
        &self.homology()[1]
    }

    /// Exponent of the torsion part of `H_1` (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.h1().torsion_exponent()
    }

    pub fn h1_class_map(&self) -> &HomologyClassMap {
        self.cache.h1_map.get_or_init(|| {
            self.complex
                .class_map(1)
                .expect("degree 1 exists in a 3-complex")
        })
    }

    /// Solver for `∂_2 · C = z`.
    pub fn face_solver(&self) -> &IntegerSolver {
        self.cache
            .face_solver
            .get_or_init(|| IntegerSolver::new(self.complex.boundary_ref(2)))
    }

    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        self.complex.boundary_matrix(k)
    }
}

pub(crate) fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

fn face_tuple(tet: &[usize; 4], i: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for (j, &v) in tet.iter().enumerate() {
        if j != i {
            out[k] = v;
            k += 1;
        }
    }
    out
}

fn sorted_face(tet: &[usize; 4], i: usize) -> [usize; 3] {
    let mut f = face_tuple(tet, i);
    f.sort_unstable();
    f
}

/// `(-1)^i` times the sign sorting the ordered face opposite vertex `i`.
fn face_incidence(tet: &[usize; 4], i: usize) -> i8 {
    let alt = if i % 2 == 0 { 1 } else { -1 };
    (alt * permutation_sign(&face_tuple(tet, i))) as i8
}

fn check_edge_links(tets: &[[usize; 4]], edges: &[[usize; 2]]) -> Result<(), ManifoldError> {
    let mut link: HashMap<[usize; 2], Vec<[usize; 2]>> = HashMap::new();
    for tet in tets {
        for a in 0..4 {
            for b in a + 1..4 {
                let rest: Vec<usize> = (0..4).filter(|&x| x != a && x != b).map(|x| tet[x]).collect();
                link.entry(sorted2(tet[a], tet[b]))
                    .or_default()
                    .push(sorted2(rest[0], rest[1]));
            }
        }
    }
    for e in edges {
        let segs = &link[e];
        if !graph_is_single_cycle(segs) {
            return Err(ManifoldError::NonManifoldLink {
                simplex: format!("edge {e:?}"),
                reason: "link is not a single circle".into(),
            });
        }
    }
    Ok(())
}

fn graph_is_single_cycle(segs: &[[usize; 2]]) -> bool {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for s in segs {
        adj.entry(s[0]).or_default().push(s[1]);
        adj.entry(s[1]).or_default().push(s[0]);
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    connected(&adj)
}

fn connected(adj: &HashMap<usize, Vec<usize>>) -> bool {
    let Some(&start) = adj.keys().min() else {
        return false;
    };
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

fn check_vertex_links(vertex_count: usize, tets: &[[usize; 4]]) -> Result<(), ManifoldError> {
    let mut link_tris: Vec<Vec<[usize; 3]>> = vec![Vec::new(); vertex_count];
    for tet in tets {
        for i in 0..4 {
            link_tris[tet[i]].push(sorted_face(tet, i));
        }
    }
    for (v, tris) in link_tris.iter().enumerate() {
        if tris.is_empty() {
            return Err(ManifoldError::NonManifoldLink {
                simplex: format!("vertex {v}"),
                reason: "vertex lies in no tetrahedron".into(),
            });
        }
        let mut verts = HashSet::new();
        let mut edges = HashSet::new();
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for t in tris {
            verts.extend(t.iter().copied());
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                if edges.insert([t[a], t[b]]) {
                    adj.entry(t[a]).or_default().push(t[b]);
                    adj.entry(t[b]).or_default().push(t[a]);
                }
            }
        }
        let euler = verts.len() as i64 - edges.len() as i64 + tris.len() as i64;
        if euler != 2 || !connected(&adj) {
            return Err(ManifoldError::NonManifoldLink {
                simplex: format!("vertex {v}"),
                reason: format!("link is not a 2-sphere (connected: {}, euler characteristic {euler})", connected(&adj)),
            });
        }
    }
    Ok(())
}

fn build_complex(
    vertex_count: usize,
    tets: &[[usize; 4]],
    edges: &[[usize; 2]],
    edge_index: &HashMap<[usize; 2], usize>,
    faces: &[[usize; 3]],
    tet_faces: &[[usize; 4]],
    tet_face_signs: &[[i8; 4]],
) -> Result<ChainComplex, ChainError> {
    let mut d1 = IntMatrix::zeros(vertex_count, edges.len());
    for (j, e) in edges.iter().enumerate() {
        d1.set(e[0], j, BigInt::from(-1));
        d1.set(e[1], j, BigInt::from(1));
    }
    let mut d2 = IntMatrix::zeros(edges.len(), faces.len());
    for (j, f) in faces.iter().enumerate() {
        // ∂[a,b,c] = [b,c] - [a,c] + [a,b]
        d2.set(edge_index[&[f[1], f[2]]], j, BigInt::from(1));
        d2.set(edge_index[&[f[0], f[2]]], j, BigInt::from(-1));
        d2.set(edge_index[&[f[0], f[1]]], j, BigInt::from(1));
    }
    let mut d3 = IntMatrix::zeros(faces.len(), tets.len());
    for t in 0..tets.len() {
        for i in 0..4 {
            d3.set(tet_faces[t][i], t, BigInt::from(tet_face_signs[t][i]));
        }
    }
    ChainComplex::new(
        vec![vertex_count, edges.len(), faces.len(), tets.len()],
        vec![d1, d2, d3],
    )
}
