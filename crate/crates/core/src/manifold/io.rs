//! Triangulation files.
//!
//! ```json
//! {
//!   "name": "s3",
//!   "vertices": 5,
//!   "tetrahedra": [[1, 2, 3, 4], [2, 0, 3, 4], ...],
//!   "designated_cycles": { "loop": [[0, 1, -1], [3, 0, 1], ...] }
//! }
//! ```
//!
//! Each tetrahedron is an ordered vertex 4-tuple whose order fixes its
//! orientation. A designated cycle lists `[tetrahedron, face, sign]` steps:
//! leave `tetrahedron` through the face opposite its local vertex `face`
//! (0..=3); `sign` must equal the incidence of that face in the
//! tetrahedron's boundary. Unknown fields are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::dual::DualCycle;
use super::triangulation::Triangulation;
use crate::error::ManifoldError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub name: String,
    pub vertices: usize,
    pub tetrahedra: Vec<[usize; 4]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub designated_cycles: BTreeMap<String, Vec<[i64; 3]>>,
}

impl TriangulationFile {
    pub fn from_triangulation(tri: &Triangulation) -> Self {
        TriangulationFile {
            name: tri.name().to_string(),
            vertices: tri.vertex_count(),
            tetrahedra: tri.tetrahedra().to_vec(),
            designated_cycles: tri
                .designated_cycles()
                .iter()
                .map(|(k, c)| (k.clone(), c.to_triples()))
                .collect(),
        }
    }

    pub fn into_triangulation(self) -> Result<Triangulation, ManifoldError> {
        let mut tri = Triangulation::new(self.name, self.vertices, self.tetrahedra)?;
        for (name, triples) in self.designated_cycles {
            let cycle = DualCycle::from_triples(&tri, &triples).map_err(|reason| {
                ManifoldError::BadDualCycle {
                    name: name.clone(),
                    reason,
                }
            })?;
            tri.insert_designated(name, cycle);
        }
        Ok(tri)
    }
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation, ManifoldError> {
    let file: TriangulationFile =
        serde_json::from_str(text).map_err(|e| ManifoldError::Parse(e.to_string()))?;
    file.into_triangulation()
}

pub fn load_triangulation(path: impl AsRef<Path>) -> Result<Triangulation, ManifoldError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ManifoldError::Parse(format!("{}: {e}", path.display())))?;
    parse_triangulation(&text)
}

/// Compact JSON with one tetrahedron per line.
pub fn to_json(tri: &Triangulation) -> String {
    let file = TriangulationFile::from_triangulation(tri);
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(&file.name).unwrap()));
    out.push_str(&format!("  \"vertices\": {},\n", file.vertices));
    out.push_str("  \"tetrahedra\": [\n");
    for (i, t) in file.tetrahedra.iter().enumerate() {
        let sep = if i + 1 == file.tetrahedra.len() { "" } else { "," };
        out.push_str(&format!("    [{}, {}, {}, {}]{sep}\n", t[0], t[1], t[2], t[3]));
    }
    out.push_str("  ]");
    if !file.designated_cycles.is_empty() {
        out.push_str(",\n  \"designated_cycles\": {\n");
        let n = file.designated_cycles.len();
        for (i, (name, steps)) in file.designated_cycles.iter().enumerate() {
            let body: Vec<String> = steps
                .iter()
                .map(|s| format!("[{}, {}, {}]", s[0], s[1], s[2]))
                .collect();
            let sep = if i + 1 == n { "" } else { "," };
            out.push_str(&format!(
                "    {}: [{}]{sep}\n",
                serde_json::to_string(name).unwrap(),
                body.join(", ")
            ));
        }
        out.push_str("  }");
    }
    out.push_str("\n}\n");
    out
}
