//! Simplicial lens spaces `L(p, 1)`.
//!
//! The join of a `pa`-gon and a `pb`-gon is a 3-sphere on which ℤ/p acts
//! freely by rotating both polygons. With `a, b ≥ 2` every closed cell of the
//! quotient is embedded, so the barycentric subdivision of the quotient is a
//! simplicial complex. Edge contractions that satisfy the link condition then
//! shrink it without changing the PL type.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

type Simplex = Vec<usize>;

pub struct JoinQuotient {
    p: usize,
    a: usize,
    b: usize,
}

impl JoinQuotient {
    pub fn new(p: usize, a: usize, b: usize) -> Self {
        assert!(p >= 1 && a >= 2 && b >= 2);
        JoinQuotient { p, a, b }
    }

    fn n_a(&self) -> usize {
        self.p * self.a
    }

    fn n_b(&self) -> usize {
        self.p * self.b
    }

    fn va(&self, i: usize) -> usize {
        i % self.n_a()
    }

    fn vb(&self, j: usize) -> usize {
        self.n_a() + j % self.n_b()
    }

    fn act(&self, v: usize, t: usize) -> usize {
        if v < self.n_a() {
            self.va(v + t * self.a)
        } else {
            self.vb(v - self.n_a() + t * self.b)
        }
    }

    fn canonical(&self, s: &[usize]) -> Simplex {
        (0..self.p)
            .map(|t| {
                let mut img: Simplex = s.iter().map(|&v| self.act(v, t)).collect();
                img.sort_unstable();
                img
            })
            .min()
            .expect("p >= 1")
    }

    /// Oriented tetrahedra of the subdivided quotient, with vertex count.
    pub fn subdivision(&self) -> (usize, Vec<[usize; 4]>) {
        let mut ids: BTreeMap<Simplex, usize> = BTreeMap::new();
        let mut tets = Vec::new();
        for i in 0..self.n_a() {
            for j in 0..self.n_b() {
                let top = [self.va(i), self.va(i + 1), self.vb(j), self.vb(j + 1)];
                let mut sorted = top.to_vec();
                sorted.sort_unstable();
                if self.canonical(&sorted) != sorted {
                    continue;
                }
                for perm in permutations4() {
                    let mut flag = [0usize; 4];
                    for (k, slot) in flag.iter_mut().enumerate() {
                        let cell: Simplex = perm[..=k].iter().map(|&x| top[x]).collect();
                        let key = self.canonical(&cell);
                        let next = ids.len();
                        *slot = *ids.entry(key).or_insert(next);
                    }
                    if perm_sign(&perm) < 0 {
                        flag.swap(0, 1);
                    }
                    tets.push(flag);
                }
            }
        }
        (ids.len(), tets)
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct: HashSet<_> = p.iter().collect();
                    if distinct.len() == 4 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn perm_sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

fn face_key(tet: &[usize; 4], skip: usize) -> [usize; 3] {
    let mut f = [0; 3];
    let mut k = 0;
    for (i, &v) in tet.iter().enumerate() {
        if i != skip {
            f[k] = v;
            k += 1;
        }
    }
    f.sort_unstable();
    f
}

fn induced_sign(tet: &[usize; 4], skip: usize) -> i32 {
    let f: Vec<usize> = tet
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect();
    let alt = if skip % 2 == 0 { 1 } else { -1 };
    alt * perm_sign(&f)
}

/// Flips tetrahedra so neighbours induce opposite orientations on shared
/// faces. Returns `false` if the complex is not orientable.
pub fn orient_consistently(tets: &mut [[usize; 4]]) -> bool {
    let mut faces: HashMap<[usize; 3], Vec<(usize, usize)>> = HashMap::new();
    for (t, tet) in tets.iter().enumerate() {
        for i in 0..4 {
            faces.entry(face_key(tet, i)).or_default().push((t, i));
        }
    }
    let mut fixed = vec![false; tets.len()];
    for start in 0..tets.len() {
        if fixed[start] {
            continue;
        }
        fixed[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for i in 0..4 {
                let key = face_key(&tets[t], i);
                let s_t = induced_sign(&tets[t], i);
                for &(u, _) in &faces[&key] {
                    if u == t {
                        continue;
                    }
                    let j = tets[u].iter().position(|v| !key.contains(v)).unwrap();
                    let s_u = induced_sign(&tets[u], j);
                    if fixed[u] {
                        if s_u + s_t != 0 {
                            return false;
                        }
                    } else {
                        if s_u + s_t != 0 {
                            tets[u].swap(0, 1);
                        }
                        fixed[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    true
}

/// Closed simplicial 3-manifold under edge contraction.
pub struct Contractor {
    tets: Vec<[usize; 4]>,
}

impl Contractor {
    pub fn new(tets: Vec<[usize; 4]>) -> Self {
        Contractor { tets }
    }

    fn vertex_count(&self) -> usize {
        self.tets
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .len()
    }

    fn star(&self, v: usize) -> Vec<usize> {
        (0..self.tets.len())
            .filter(|&t| self.tets[t].contains(&v))
            .collect()
    }

    /// All nonempty faces of `σ \ removed` over tetrahedra σ in `star`.
    fn link(&self, star: &[usize], removed: &[usize]) -> HashSet<Simplex> {
        let mut out = HashSet::new();
        for &t in star {
            let rest: Vec<usize> = self.tets[t]
                .iter()
                .copied()
                .filter(|v| !removed.contains(v))
                .collect();
            for mask in 1u32..(1 << rest.len()) {
                let mut s: Simplex = (0..rest.len())
                    .filter(|&k| mask & (1 << k) != 0)
                    .map(|k| rest[k])
                    .collect();
                s.sort_unstable();
                out.insert(s);
            }
        }
        out
    }

    fn can_contract(&self, u: usize, v: usize) -> bool {
        let su = self.star(u);
        let sv = self.star(v);
        let suv: Vec<usize> = su.iter().copied().filter(|t| sv.contains(t)).collect();
        if suv.is_empty() {
            return false;
        }
        let lu = self.link(&su, &[u]);
        let lv = self.link(&sv, &[v]);
        let luv = self.link(&suv, &[u, v]);
        let inter: HashSet<Simplex> = lu.intersection(&lv).cloned().collect();
        inter == luv
    }

    fn contract(&mut self, u: usize, v: usize) {
        self.tets.retain(|t| !(t.contains(&u) && t.contains(&v)));
        for t in &mut self.tets {
            for x in t.iter_mut() {
                if *x == u {
                    *x = v;
                }
            }
        }
    }

    fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut e = BTreeSet::new();
        for t in &self.tets {
            for a in 0..4 {
                for b in a + 1..4 {
                    let (x, y) = (t[a].min(t[b]), t[a].max(t[b]));
                    e.insert((x, y));
                }
            }
        }
        e
    }

    /// Contracts admissible edges, lowest first, until `target` vertices
    /// remain or no edge qualifies.
    pub fn shrink(&mut self, target: usize) {
        loop {
            if self.vertex_count() <= target {
                return;
            }
            let mut done = false;
            for (x, y) in self.edges() {
                // Keep the smaller label; this keeps the survivors stable.
                if self.can_contract(y, x) {
                    self.contract(y, x);
                    done = true;
                    break;
                }
            }
            if !done {
                return;
            }
        }
    }

    /// Relabels vertices `0..n` in order of first appearance.
    pub fn finish(self) -> (usize, Vec<[usize; 4]>) {
        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut tets = self.tets;
        for t in &mut tets {
            for x in t.iter_mut() {
                let next = map.len();
                *x = *map.entry(*x).or_insert(next);
            }
        }
        (map.len(), tets)
    }
}
