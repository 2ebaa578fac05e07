//! Shipped manifold models.

use num_bigint::BigInt;
use num_traits::One;

use super::dual::DualCycle;
use super::io::parse_triangulation;
use super::triangulation::Triangulation;
use crate::complex::HomologyGroup;
use crate::error::ManifoldError;

const RP3_DATA: &str = include_str!("data/rp3.json");
const LENS_DATA: [&str; 7] = [
    include_str!("data/lens-2.json"),
    include_str!("data/lens-3.json"),
    include_str!("data/lens-4.json"),
    include_str!("data/lens-5.json"),
    include_str!("data/lens-6.json"),
    include_str!("data/lens-7.json"),
    include_str!("data/lens-8.json"),
];

pub const LENS_RANGE: std::ops::RangeInclusive<i64> = 2..=8;

/// Side length of the polygons in [`build_s3_join`].
pub const JOIN_SIDES: usize = 10;

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<String> {
    let mut names = vec!["s3".to_string(), "s3-join".to_string(), "rp3".to_string()];
    names.extend(LENS_RANGE.map(|p| format!("lens-{p}")));
    names
}

/// Resolves `s3`, `s3-join`, `rp3` or `lens-<p>`.
pub fn builtin(name: &str) -> Option<Result<Triangulation, ManifoldError>> {
    match name {
        "s3" => Some(Ok(build_s3())),
        "s3-join" => Some(Ok(build_s3_join())),
        "rp3" => Some(build_rp3()),
        _ => {
            let p: i64 = name.strip_prefix("lens-")?.parse().ok()?;
            Some(build_lens(p))
        }
    }
}

/// Boundary of the 4-simplex: five vertices, five tetrahedra.
pub fn build_s3() -> Triangulation {
    let tets = (0..5)
        .map(|i| {
            let mut f: Vec<usize> = (0..5).filter(|&v| v != i).collect();
            if i % 2 == 1 {
                f.swap(0, 1);
            }
            [f[0], f[1], f[2], f[3]]
        })
        .collect();
    let tri = Triangulation::new("s3", 5, tets).expect("boundary of the 4-simplex is valid");
    let star = DualCycle::from_tets(&tri, &[0, 1, 2]).expect("any three tetrahedra are adjacent");
    let mut tri = tri;
    tri.insert_designated("triangle_loop".into(), star);
    tri
}

/// Tetrahedron index of the join cell `(i, j)`.
fn join_tet(n: usize, i: usize, j: usize) -> usize {
    (i % n) * n + (j % n)
}

/// The 3-sphere as the join of two `n`-gons `A` and `B`.
///
/// Tetrahedron `(i, j)` is `[A_i, A_{i+1}, B_j, B_{j+1}]`, so the dual graph
/// is the `n × n` torus grid. A walk of constant `j` runs parallel to the
/// core circle `A`; the staircase walks wind once around both cores and any
/// two of them form a Hopf link.
pub fn build_s3_join() -> Triangulation {
    let n = JOIN_SIDES;
    let a = |i: usize| i % n;
    let b = |j: usize| n + j % n;
    let mut tets = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            tets.push([a(i), a(i + 1), b(j), b(j + 1)]);
        }
    }
    let mut tri = Triangulation::new("s3-join", 2 * n, tets).expect("join of two polygons is a 3-sphere");

    let staircase = |offset: usize| -> Vec<usize> {
        let mut walk = Vec::with_capacity(2 * n);
        for i in 0..n {
            walk.push(join_tet(n, i, i + offset));
            walk.push(join_tet(n, i + 1, i + offset));
        }
        walk
    };
    let row = |j: usize| -> Vec<usize> { (0..n).map(|i| join_tet(n, i, j)).collect() };
    // Tetrahedra around the edge A_i B_j.
    let edge_loop = |i: usize, j: usize| -> Vec<usize> {
        let (im, jm) = (i + n - 1, j + n - 1);
        vec![
            join_tet(n, im, jm),
            join_tet(n, i, jm),
            join_tet(n, i, j),
            join_tet(n, im, j),
        ]
    };
    let named: Vec<(&str, Vec<usize>)> = vec![
        ("hopf_a", staircase(0)),
        ("hopf_a_f", staircase(2)),
        ("hopf_b", staircase(5)),
        ("hopf_b_f", staircase(7)),
        ("row_0", row(0)),
        ("row_5", row(5)),
        ("edge_loop_a", edge_loop(2, 6)),
        ("edge_loop_b", edge_loop(7, 1)),
    ];
    for (name, walk) in named {
        let cycle = DualCycle::from_tets(&tri, &walk).expect("join walks are adjacent");
        tri.insert_designated(name.to_string(), cycle);
    }
    tri
}

/// Real projective 3-space from embedded data, checked on load.
pub fn build_rp3() -> Result<Triangulation, ManifoldError> {
    load_lens_model(RP3_DATA, "rp3", 2)
}

/// The lens space `L(p, 1)` for `2 ≤ p ≤ 8`, from embedded data.
pub fn build_lens(p: i64) -> Result<Triangulation, ManifoldError> {
    if !LENS_RANGE.contains(&p) {
        return Err(ManifoldError::LensOutOfRange(p));
    }
    load_lens_model(LENS_DATA[(p - 2) as usize], &format!("lens-{p}"), p as u64)
}

fn load_lens_model(data: &str, name: &str, p: u64) -> Result<Triangulation, ManifoldError> {
    let embedded = |reason: String| ManifoldError::EmbeddedModel {
        name: name.to_string(),
        reason,
    };
    let tri = parse_triangulation(data).map_err(|e| embedded(e.to_string()))?;
    let expected = vec![
        HomologyGroup::free(1),
        HomologyGroup {
            betti: 0,
            torsion: vec![BigInt::from(p)],
        },
        HomologyGroup::trivial(),
        HomologyGroup::free(1),
    ];
    if tri.homology() != expected.as_slice() {
        return Err(ManifoldError::Homology {
            name: name.to_string(),
            reason: format!("got {:?}", tri.homology()),
        });
    }
    let tau = tri
        .designated("tau1")
        .ok_or_else(|| embedded("missing designated cycle `tau1`".into()))?;
    let z = tau.to_primal(&tri);
    let solver = tri.face_solver();
    let size = tri.edges().len();
    for k in 1..p {
        let b = z.scale(&BigInt::from(k)).to_dense(size);
        if solver.solve(&b).expect("shape").is_some() {
            return Err(embedded(format!("{k}·tau1 bounds; expected order {p}")));
        }
    }
    let b = z.scale(&BigInt::from(p)).to_dense(size);
    if solver.solve(&b).expect("shape").is_none() {
        return Err(embedded(format!("{p}·tau1 does not bound")));
    }
    debug_assert!(tri.torsion_exponent() == BigInt::from(p) || p.is_one());
    Ok(tri)
}
