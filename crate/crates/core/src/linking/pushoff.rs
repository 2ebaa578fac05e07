//! Parallel copies of dual cycles.
//!
//! Routes are found by breadth-first search in the dual graph with the
//! cycle's tetrahedra removed. To steer the homology class and the linking
//! with the original, the search runs on a lifted graph whose nodes also
//! carry the running torsion residue and the running intersection with a
//! fixed bounding chain.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{classify, pairing, ClassKind, CycleClass};
use crate::complex::IntegerChain;
use crate::error::LinkingError;
use crate::linalg::format_rational;
use crate::manifold::{step_path, DualCycle, Triangulation};

/// Upper bound on lifted-graph nodes visited by one search.
const MAX_STATES: usize = 4_000_000;

/// Torsion residues contributed by each dual step.
struct ClassWeights {
    orders: Vec<u64>,
    /// `steps[t][f]`: residues of the primal path for leaving `t` via `f`.
    steps: Vec<[Vec<u64>; 4]>,
}

impl ClassWeights {
    fn new(tri: &Triangulation) -> Option<Self> {
        let map = tri.h1_class_map();
        let orders: Vec<u64> = map
            .torsion_orders()
            .iter()
            .map(|d| d.to_u64())
            .collect::<Option<_>>()?;
        let reduce = |v: Vec<BigInt>| -> Vec<u64> {
            v.iter()
                .zip(&orders)
                .map(|(x, &d)| x.mod_floor(&BigInt::from(d)).to_u64().expect("residue < d"))
                .collect()
        };
        let steps = (0..tri.tetrahedra().len())
            .map(|t| {
                std::array::from_fn(|f| {
                    let mut chain = IntegerChain::zero(1);
                    for (idx, sign) in step_path(tri, t, f) {
                        chain.add_term(idx, BigInt::from(sign));
                    }
                    reduce(map.torsion_coordinates(&chain))
                })
            })
            .collect();
        Some(ClassWeights { orders, steps })
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.orders)
            .map(|((x, y), d)| (x + d - y) % d)
            .collect()
    }

    fn step(&self, from: usize, face: usize) -> &[u64] {
        &self.steps[from][face]
    }

    /// Residues of the closed walk visiting `tets` in order.
    fn of_walk(&self, tri: &Triangulation, tets: &[usize]) -> Vec<u64> {
        let mut r = self.zero();
        for (k, &t) in tets.iter().enumerate() {
            let next = tets[(k + 1) % tets.len()];
            let f = tri.shared_face(t, next).expect("walk is adjacent");
            r = self.add(&r, self.step(t, f));
        }
        r
    }
}

/// Breadth-first search over `(tetrahedron, label)` pairs restricted to
/// `allowed` tetrahedra. Returns the tetrahedra from start to goal; the
/// start node itself is never a goal.
fn lifted_search<L, G, S>(
    tri: &Triangulation,
    allowed: &[bool],
    start: (usize, L),
    is_goal: G,
    step: S,
) -> Option<Vec<usize>>
where
    L: Clone + Eq + Hash,
    G: Fn(usize, &L) -> bool,
    S: Fn(usize, usize, &L) -> Option<L>,
{
    let mut parent: HashMap<(usize, L), Option<(usize, L)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.clone(), None);
    queue.push_back(start);
    while let Some(node) = queue.pop_front() {
        let (t, label) = &node;
        for f in 0..4 {
            let u = tri.neighbor(*t, f);
            if !allowed[u] {
                continue;
            }
            let Some(next_label) = step(*t, f, label) else {
                continue;
            };
            let next = (u, next_label);
            if parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some(node.clone()));
            if is_goal(next.0, &next.1) {
                let mut path = vec![next.0];
                let mut cur = parent[&next].clone();
                while let Some(n) = cur {
                    path.push(n.0);
                    cur = parent[&n].clone();
                }
                path.reverse();
                return Some(path);
            }
            if parent.len() > MAX_STATES {
                return None;
            }
            queue.push_back(next);
        }
    }
    None
}

fn distances(tri: &Triangulation, allowed: &[bool], from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; allowed.len()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(t) = queue.pop_front() {
        let d = dist[t].expect("queued nodes have distances");
        for u in tri.neighbors(t) {
            if allowed[u] && dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

fn shortest_path(tri: &Triangulation, allowed: &[bool], from: usize, to: usize) -> Option<Vec<usize>> {
    if from == to {
        return Some(vec![from]);
    }
    lifted_search(tri, allowed, (from, ()), |t, _| t == to, |_, _, _| Some(()))
}

/// Closed walk `loop_tets` (starting at `walk[0]`, implicit return) spliced
/// in front of `walk`.
fn splice(loop_tets: &[usize], walk: &[usize]) -> Vec<usize> {
    debug_assert_eq!(loop_tets.first(), walk.first());
    let mut out = loop_tets.to_vec();
    out.extend_from_slice(walk);
    out
}

/// Drops the repeated endpoint of a closed path `[s, …, s]`.
fn open_loop(mut path: Vec<usize>) -> Vec<usize> {
    debug_assert_eq!(path.first(), path.last());
    path.pop();
    path
}

fn reverse_loop(loop_tets: &[usize]) -> Vec<usize> {
    let mut out = vec![loop_tets[0]];
    out.extend(loop_tets[1..].iter().rev());
    out
}

/// A parallel copy of `z` with `lk(z, result) − lk(z, result₀) = twist`,
/// where `result₀` is the copy for `twist = 0`.
pub fn default_pushoff(
    tri: &Triangulation,
    z: &DualCycle,
    twist: i64,
) -> Result<DualCycle, LinkingError> {
    default_pushoff_avoiding(tri, "z", z, twist, &[])
}

/// [`default_pushoff`] that also keeps clear of the tetrahedra of `avoid`.
pub fn default_pushoff_avoiding(
    tri: &Triangulation,
    name: &str,
    z: &DualCycle,
    twist: i64,
    avoid: &[&DualCycle],
) -> Result<DualCycle, LinkingError> {
    if !z.is_simple() {
        return Err(LinkingError::NotSimple(name.to_string()));
    }
    let class = classify(z, tri);
    if class.kind() == ClassKind::Free {
        return Err(LinkingError::FreeCycle(name.to_string()));
    }
    let no_route = || LinkingError::NoParallelRoute(name.to_string());
    let weights = ClassWeights::new(tri).ok_or_else(no_route)?;

    let mut allowed = vec![true; tri.tetrahedra().len()];
    for c in std::iter::once(z).chain(avoid.iter().copied()) {
        for t in c.tets() {
            allowed[t] = false;
        }
    }

    let base = parallel_walk(tri, z, &allowed).ok_or_else(no_route)?;
    let target = weights.of_walk(tri, &z.tets());
    let have = weights.of_walk(tri, &base);
    let diff = weights.sub(&target, &have);
    let s0 = base[0];
    let mut walk = base;
    if diff.iter().any(|&r| r != 0) {
        let fix = lifted_search(
            tri,
            &allowed,
            (s0, weights.zero()),
            |t, r| t == s0 && *r == diff,
            |t, f, r| Some(weights.add(r, weights.step(t, f))),
        )
        .ok_or_else(no_route)?;
        walk = splice(&open_loop(fix), &walk);
    }

    if twist != 0 {
        let meridian = meridian(tri, &class, &weights, &allowed, s0).ok_or_else(no_route)?;
        let piece = if twist > 0 {
            meridian
        } else {
            reverse_loop(&meridian)
        };
        for _ in 0..twist.unsigned_abs() {
            walk = splice(&piece, &walk);
        }
    }

    let result = DualCycle::from_tets(tri, &walk).map_err(|_| no_route())?;
    if !super::homologous(z, &result, tri) {
        return Err(no_route());
    }
    Ok(result)
}

/// Greedy route: a free neighbour for each tetrahedron of `z` that can
/// reach one, consecutive choices joined by shortest paths. Tetrahedra with
/// no reachable free neighbour are skipped.
fn parallel_walk(tri: &Triangulation, z: &DualCycle, allowed: &[bool]) -> Option<Vec<usize>> {
    let tets = z.tets();
    let candidates: Vec<Vec<usize>> = tets
        .iter()
        .map(|&t| {
            let mut c: Vec<usize> = tri.neighbors(t).into_iter().filter(|&u| allowed[u]).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let n = tets.len();
    for offset in 0..n {
        for &first in &candidates[offset] {
            if let Some(walk) = walk_from(tri, allowed, &candidates, offset, first) {
                return Some(walk);
            }
        }
    }
    None
}

fn walk_from(
    tri: &Triangulation,
    allowed: &[bool],
    candidates: &[Vec<usize>],
    offset: usize,
    first: usize,
) -> Option<Vec<usize>> {
    let n = candidates.len();
    let reach = distances(tri, allowed, first);
    let mut stops = vec![first];
    for k in 1..n {
        let cands = &candidates[(offset + k) % n];
        let prev = *stops.last().expect("nonempty");
        let dist = distances(tri, allowed, prev);
        let best = cands
            .iter()
            .filter(|&&c| reach[c].is_some())
            .filter_map(|&c| dist[c].map(|d| (d, c)))
            .min();
        if let Some((_, c)) = best {
            stops.push(c);
        }
    }
    let mut walk = vec![first];
    for k in 0..stops.len() {
        let (a, b) = (stops[k], stops[(k + 1) % stops.len()]);
        let path = shortest_path(tri, allowed, a, b)?;
        walk.extend_from_slice(&path[1..]);
    }
    // The final segment returns to `first`.
    walk.pop();
    if walk.len() < 2 {
        // Degenerate route; step out and back.
        let back = tri.neighbors(first).into_iter().find(|&u| allowed[u])?;
        walk = vec![first, back];
    }
    Some(walk)
}

/// Null-homologous closed walk at `s0` in the complement of `z` with
/// `lk(z, m) = 1`.
fn meridian(
    tri: &Triangulation,
    class: &CycleClass,
    weights: &ClassWeights,
    allowed: &[bool],
    s0: usize,
) -> Option<Vec<usize>> {
    let p = class.degree()? as i64;
    let c = class.witness()?;
    let coeff = |t: usize, f: usize| -> Option<i64> {
        let v = c.coefficient(tri.tet_face(t, f)) * BigInt::from(tri.tet_face_sign(t, f));
        v.to_i64()
    };
    let max_c = c
        .iter()
        .map(|(_, v)| v.abs().to_i64().unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0);
    let zero = weights.zero();
    // Running intersections can swing well past `p` on the way; widen the
    // window until a loop appears.
    let base = 2 * p + 2 * max_c;
    let path = [1, 4, 16, 64].into_iter().find_map(|factor| {
        let bound = base * factor;
        lifted_search(
            tri,
            allowed,
            (s0, (weights.zero(), 0i64)),
            |t, (r, phi)| t == s0 && *phi == p && *r == zero,
            |t, f, (r, phi)| {
                let next = phi + coeff(t, f)?;
                (next.abs() <= bound).then(|| (weights.add(r, weights.step(t, f)), next))
            },
        )
    })?;
    let m = open_loop(path);
    debug_assert!({
        let mc = DualCycle::from_tets(tri, &m).ok();
        mc.is_none_or(|mc| pairing(c, p as u64, &mc, tri).value() == &BigRational::from_integer(1.into()))
    });
    Some(m)
}

/// Pushoff whose self-linking with `z` equals `target`.
pub fn pushoff_with_self_linking(
    tri: &Triangulation,
    name: &str,
    z: &DualCycle,
    target: &BigRational,
    avoid: &[&DualCycle],
) -> Result<DualCycle, LinkingError> {
    let base = default_pushoff_avoiding(tri, name, z, 0, avoid)?;
    let class = classify(z, tri);
    let (Some(p), Some(c)) = (class.degree(), class.witness()) else {
        return Err(LinkingError::FreeCycle(name.to_string()));
    };
    let sl0 = pairing(c, p, &base, tri).into_value();
    let diff = target - &sl0;
    let unreachable = || LinkingError::UnreachableFraming {
        target: format_rational(target),
        base: format_rational(&sl0),
    };
    if !diff.is_integer() {
        return Err(unreachable());
    }
    let twist = diff.to_integer().to_i64().ok_or_else(unreachable)?;
    if twist == 0 {
        return Ok(base);
    }
    default_pushoff_avoiding(tri, name, z, twist, avoid)
}

/// Shortest simple dual cycle whose torsion residues equal `residues`,
/// avoiding the tetrahedra in `avoid`. Ties go to the lowest start.
pub fn shortest_cycle_with_class(
    tri: &Triangulation,
    residues: &[u64],
    avoid: &BTreeSet<usize>,
) -> Option<DualCycle> {
    let weights = ClassWeights::new(tri)?;
    if residues.len() != weights.orders.len() {
        return None;
    }
    let target: Vec<u64> = residues
        .iter()
        .zip(&weights.orders)
        .map(|(r, d)| r % d)
        .collect();
    let allowed: Vec<bool> = (0..tri.tetrahedra().len()).map(|t| !avoid.contains(&t)).collect();
    let mut best: Option<Vec<usize>> = None;
    for s in (0..allowed.len()).filter(|&s| allowed[s]) {
        let Some(path) = lifted_search(
            tri,
            &allowed,
            (s, weights.zero()),
            |t, r| t == s && *r == target,
            |t, f, r| Some(weights.add(r, weights.step(t, f))),
        ) else {
            continue;
        };
        let walk = open_loop(path);
        let simple = walk.iter().collect::<BTreeSet<_>>().len() == walk.len();
        if simple && walk.len() >= 2 && best.as_ref().is_none_or(|b| walk.len() < b.len()) {
            best = Some(walk);
        }
    }
    let walk = best?;
    let cycle = DualCycle::from_tets(tri, &walk).ok()?;
    // Residue zero with nonzero free part would still be a valid answer, but
    // callers ask for torsion classes; recheck against the class map.
    let class = tri.h1_class_map().class_of(&cycle.to_primal(tri));
    let expected: Vec<BigInt> = target.iter().map(|&r| BigInt::from(r)).collect();
    (class.torsion == expected).then_some(cycle)
}
