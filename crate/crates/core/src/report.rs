//! Serializable result records.
//!
//! Exact values are written as `num/den` strings so a parsed report
//! reproduces every rational bit for bit.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::chern_simons::{CsLevel, Evaluation};
use crate::complex::HomologyGroup;
use crate::linalg::PhaseModOne;
use crate::linking::{ClassKind, CycleClass, LinkingNumber};
use crate::manifold::{DualCycle, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyReport {
    pub manifold: String,
    pub f_vector: [usize; 4],
    pub groups: Vec<GroupEntry>,
}

impl HomologyReport {
    pub fn new(tri: &Triangulation) -> Self {
        let groups = tri
            .homology()
            .iter()
            .enumerate()
            .map(|(degree, g): (usize, &HomologyGroup)| GroupEntry {
                degree,
                betti: g.betti,
                torsion: g.torsion.iter().map(|d| d.to_string()).collect(),
                group: g.to_string(),
            })
            .collect();
        HomologyReport {
            manifold: tri.name().to_string(),
            f_vector: tri.f_vector(),
            groups,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let [v, e, f, t] = self.f_vector;
        writeln!(out, "manifold: {}", self.manifold).unwrap();
        writeln!(out, "f-vector: ({v}, {e}, {f}, {t})").unwrap();
        writeln!(out, "degree  betti  torsion  group").unwrap();
        for g in &self.groups {
            let torsion = format!("[{}]", g.torsion.join(", "));
            writeln!(out, "H_{:<5} {:<6} {:<8} {}", g.degree, g.betti, torsion, g.group).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub name: String,
    pub length: usize,
    pub class: String,
    pub degree: Option<u64>,
    /// Number of triangles carrying the bounding chain.
    pub witness_support: Option<usize>,
}

impl ClassEntry {
    pub fn new(name: &str, z: &DualCycle, class: &CycleClass) -> Self {
        ClassEntry {
            name: name.to_string(),
            length: z.len(),
            class: class.kind().label().to_string(),
            degree: class.degree(),
            witness_support: class.witness().map(|w| w.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyReport {
    pub manifold: String,
    pub cycles: Vec<ClassEntry>,
}

impl ClassifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "manifold: {}", self.manifold).unwrap();
        writeln!(out, "cycle  length  class  degree  witness").unwrap();
        for c in &self.cycles {
            let degree = c.degree.map_or("-".to_string(), |d| d.to_string());
            let witness = c
                .witness_support
                .map_or("-".to_string(), |n| format!("{n} triangles"));
            writeln!(
                out,
                "{}  {}  {}  {}  {}",
                c.name, c.length, c.class, degree, witness
            )
            .unwrap();
        }
        out
    }
}

fn matrix_text(out: &mut String, names: &[String], m: &[Vec<LinkingNumber>]) {
    let cells: Vec<Vec<String>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain(names.iter().map(String::len))
        .max()
        .unwrap_or(1);
    write!(out, "{:width$}", "").unwrap();
    for n in names {
        write!(out, "  {n:>width$}").unwrap();
    }
    out.push('\n');
    for (n, row) in names.iter().zip(&cells) {
        write!(out, "{n:width$}").unwrap();
        for c in row {
            write!(out, "  {c:>width$}").unwrap();
        }
        out.push('\n');
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkReport {
    pub manifold: String,
    pub components: Vec<String>,
    /// Diagonal: self-linking with the declared framing.
    pub linking_matrix: Vec<Vec<LinkingNumber>>,
}

impl LinkReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "manifold: {}", self.manifold).unwrap();
        writeln!(out, "linking matrix (diagonal: framed self-linking):").unwrap();
        matrix_text(&mut out, &self.components, &self.linking_matrix);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub name: String,
    pub class: String,
    pub degree: u64,
    pub charge: i64,
    pub self_linking: LinkingNumber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WilsonReport {
    pub manifold: String,
    pub level: i64,
    pub components: Vec<ComponentEntry>,
    pub linking_matrix: Vec<Vec<LinkingNumber>>,
    /// The expectation value is `exp(2πi·phase)`.
    pub phase: PhaseModOne,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl WilsonReport {
    pub fn new(tri: &Triangulation, k: CsLevel, eval: &Evaluation, digits: Option<usize>) -> Self {
        let components = eval
            .components
            .iter()
            .map(|c| ComponentEntry {
                name: c.name.clone(),
                class: c.kind.label().to_string(),
                degree: match c.kind {
                    ClassKind::Torsion(p) => p,
                    _ => 1,
                },
                charge: c.charge,
                self_linking: c.self_linking.clone(),
            })
            .collect();
        WilsonReport {
            manifold: tri.name().to_string(),
            level: k.value(),
            components,
            linking_matrix: eval.linking.clone(),
            phase: eval.expectation.phase.clone(),
            value: digits.map(|d| eval.expectation.render(d)),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "manifold: {}", self.manifold).unwrap();
        writeln!(out, "level k: {}", self.level).unwrap();
        writeln!(out, "components:").unwrap();
        for c in &self.components {
            writeln!(
                out,
                "  {}: class {} (degree {}), charge {}, self-linking {}",
                c.name, c.class, c.degree, c.charge, c.self_linking
            )
            .unwrap();
        }
        writeln!(out, "linking matrix:").unwrap();
        let names: Vec<String> = self.components.iter().map(|c| c.name.clone()).collect();
        matrix_text(&mut out, &names, &self.linking_matrix);
        writeln!(out, "phase: {}", self.phase).unwrap();
        if let Some(v) = &self.value {
            writeln!(out, "value: {v}").unwrap();
        }
        out
    }
}
