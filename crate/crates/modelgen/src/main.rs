//! Regenerates the embedded `rp3` and `lens-<p>` models.

mod lens;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use abelian_cs::linking::{default_pushoff_avoiding, shortest_cycle_with_class};
use abelian_cs::manifold::{to_json, Triangulation};
use clap::Parser;

use lens::{orient_consistently, Contractor, JoinQuotient};

#[derive(Parser)]
#[command(about = "Generate lens-space triangulations with designated torsion cycles")]
struct Args {
    /// Output directory for the JSON tables.
    #[arg(long, default_value = "crates/core/src/manifold/data")]
    out_dir: PathBuf,
    /// Only regenerate these models (`rp3`, `lens-3`, ...).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
}

struct Spec {
    name: String,
    p: usize,
    a: usize,
    b: usize,
    /// Also require a pushoff of `tau2` clear of `tau1` and its pushoff.
    second_framing: bool,
}

fn specs() -> Vec<Spec> {
    let mut out = vec![Spec {
        name: "rp3".into(),
        p: 2,
        a: 3,
        b: 2,
        second_framing: false,
    }];
    for p in 2..=8 {
        out.push(Spec {
            name: format!("lens-{p}"),
            p,
            a: 2,
            b: 2,
            second_framing: true,
        });
    }
    out
}

fn with_cycles(mut tri: Triangulation, second_framing: bool) -> Option<Triangulation> {
    let tau1 = shortest_cycle_with_class(&tri, &[1], &BTreeSet::new())?;
    let tau2 = shortest_cycle_with_class(&tri, &[1], &tau1.tet_set())?;
    let tau1_f = default_pushoff_avoiding(&tri, "tau1", &tau1, 0, &[&tau2]).ok()?;
    let tau2_f = if second_framing {
        Some(default_pushoff_avoiding(&tri, "tau2", &tau2, 0, &[&tau1, &tau1_f]).ok()?)
    } else {
        None
    };
    let named = [("tau1", tau1), ("tau2", tau2), ("tau1_f", tau1_f)]
        .into_iter()
        .chain(tau2_f.map(|c| ("tau2_f", c)));
    for (name, c) in named {
        tri = tri.with_designated(name, c.steps().to_vec()).ok()?;
    }
    Some(tri)
}

fn generate(spec: &Spec) -> Result<Triangulation, String> {
    let (vertices, mut tets) = JoinQuotient::new(spec.p, spec.a, spec.b).subdivision();
    if !orient_consistently(&mut tets) {
        return Err("quotient is not orientable".into());
    }
    let full = tets.len();
    let mut last = None;
    for target in 4..=vertices {
        let mut c = Contractor::new(tets.clone());
        c.shrink(target);
        let (n, small) = c.finish();
        if last == Some(n) {
            // Contraction stalled; this complex was already tried.
            continue;
        }
        last = Some(n);
        let tri = Triangulation::new(spec.name.clone(), n, small).map_err(|e| e.to_string())?;
        let h1 = tri.h1();
        if h1.betti != 0 || h1.torsion_u64() != [spec.p as u64] {
            return Err(format!("unexpected H_1 = {h1}"));
        }
        if let Some(tri) = with_cycles(tri, spec.second_framing) {
            eprintln!(
                "{}: {} tetrahedra after subdivision, f-vector {:?} after contraction",
                spec.name,
                full,
                tri.f_vector()
            );
            return Ok(tri);
        }
    }
    Err("no vertex target leaves room for disjoint cycles".into())
}

fn main() -> ExitCode {
    let args = Args::parse();
    for spec in specs() {
        if !args.only.is_empty() && !args.only.contains(&spec.name) {
            continue;
        }
        match generate(&spec) {
            Ok(tri) => {
                let path = args.out_dir.join(format!("{}.json", spec.name));
                if let Err(e) = std::fs::write(&path, to_json(&tri)) {
                    eprintln!("{}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", spec.name);
                return ExitCode::FAILURE;
            }
        }
    }
    ExitCode::SUCCESS
}
