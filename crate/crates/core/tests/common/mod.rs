#![allow(dead_code)]

use std::collections::VecDeque;

use abelian_cs::complex::IntegerChain;
use abelian_cs::linalg::IntMatrix;
use abelian_cs::manifold::{builtin, builtin_names, DualCycle, Triangulation};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn model(name: &str) -> Triangulation {
    builtin(name)
        .unwrap_or_else(|| panic!("no builtin `{name}`"))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn all_models() -> Vec<Triangulation> {
    builtin_names().iter().map(|n| model(n)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, range: i64) -> IntMatrix {
    let rows = rng.gen_range(0..=max_dim);
    let cols = rng.gen_range(0..=max_dim);
    IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-range..=range)))
}

/// Sparse random chain of the given degree.
pub fn random_chain(rng: &mut impl Rng, degree: usize, size: usize, terms: usize) -> IntegerChain {
    let mut c = IntegerChain::zero(degree);
    for _ in 0..terms {
        let idx = rng.gen_range(0..size);
        c.add_term(idx, BigInt::from(rng.gen_range(-3i64..=3)));
    }
    c
}

fn shortest_path(tri: &Triangulation, from: usize, to: usize) -> Vec<usize> {
    let n = tri.tetrahedra().len();
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(t) = queue.pop_front() {
        if t == to {
            break;
        }
        for u in tri.neighbors(t) {
            if parent[u] == usize::MAX {
                parent[u] = t;
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    path
}

/// Random walk of `len` steps closed up by a shortest path home.
pub fn random_closed_walk(tri: &Triangulation, rng: &mut impl Rng, len: usize) -> DualCycle {
    let n = tri.tetrahedra().len();
    let start = rng.gen_range(0..n);
    let mut walk = vec![start];
    for _ in 0..len.max(1) {
        let cur = *walk.last().unwrap();
        let next = *tri.neighbors(cur).choose(rng).unwrap();
        walk.push(next);
    }
    let back = shortest_path(tri, *walk.last().unwrap(), start);
    walk.extend_from_slice(&back[1..]);
    walk.pop();
    if walk.len() < 2 {
        walk.push(tri.neighbor(start, 0));
    }
    DualCycle::from_tets(tri, &walk).unwrap()
}
