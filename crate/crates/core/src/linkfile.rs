//! Link files.
//!
//! ```json
//! {
//!   "cycles": { "a": [[0, 0, 1], [10, 2, 1], ...] },
//!   "components": [
//!     { "cycle": "a", "framing": { "twist": 0 }, "charge": 1 },
//!     { "cycle": "tau1", "framing": { "pushoff": "tau1_f" }, "charge": 2 }
//!   ]
//! }
//! ```
//!
//! Cycles use the `[tetrahedron, face, sign]` steps of triangulation files.
//! A component may name a cycle declared here or one designated by the
//! manifold; local declarations win. Framings are an explicit pushoff
//! cycle, a twist relative to the default pushoff, or a target
//! self-linking number such as `"-1/2"`. Without a framing the twist is 0.
//! Unknown fields are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chern_simons::WilsonComponent;
use crate::error::LinkFileError;
use crate::linalg::parse_rational;
use crate::linking::{default_pushoff_avoiding, pushoff_with_self_linking, FramedCycle};
use crate::manifold::{DualCycle, Triangulation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cycles: BTreeMap<String, Vec<[i64; 3]>>,
    pub components: Vec<ComponentSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub cycle: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<Framing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Framing {
    Pushoff(String),
    Twist(i64),
    SelfLinking(String),
}

impl Default for Framing {
    fn default() -> Self {
        Framing::Twist(0)
    }
}

pub fn parse_link_file(text: &str) -> Result<LinkFile, LinkFileError> {
    serde_json::from_str(text).map_err(|e| LinkFileError::Parse(e.to_string()))
}

pub fn load_link_file(path: impl AsRef<Path>) -> Result<LinkFile, LinkFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| LinkFileError::Parse(format!("{}: {e}", path.display())))?;
    parse_link_file(&text)
}

impl LinkFile {
    /// Looks up `name` among local declarations, then designated cycles.
    pub fn cycle(&self, tri: &Triangulation, name: &str) -> Result<DualCycle, LinkFileError> {
        if let Some(steps) = self.cycles.get(name) {
            return DualCycle::from_triples(tri, steps).map_err(|reason| LinkFileError::BadCycle {
                name: name.to_string(),
                reason,
            });
        }
        tri.designated(name)
            .cloned()
            .ok_or_else(|| LinkFileError::UnknownCycle(name.to_string()))
    }

    /// All declared cycles, validated, in name order.
    pub fn declared_cycles(&self, tri: &Triangulation) -> Result<Vec<(String, DualCycle)>, LinkFileError> {
        self.cycles
            .keys()
            .map(|n| Ok((n.clone(), self.cycle(tri, n)?)))
            .collect()
    }

    /// Builds framed components. Computed pushoffs avoid every component
    /// cycle, every explicit pushoff and every pushoff built before them.
    pub fn framed_components(&self, tri: &Triangulation) -> Result<Vec<FramedCycle>, LinkFileError> {
        if self.components.is_empty() {
            return Err(LinkFileError::Empty);
        }
        let cycles: Vec<DualCycle> = self
            .components
            .iter()
            .map(|c| self.cycle(tri, &c.cycle))
            .collect::<Result<_, _>>()?;
        let mut pushoffs: Vec<Option<DualCycle>> = Vec::with_capacity(cycles.len());
        for c in &self.components {
            pushoffs.push(match &c.framing {
                Some(Framing::Pushoff(name)) => Some(self.cycle(tri, name)?),
                _ => None,
            });
        }
        for (i, c) in self.components.iter().enumerate() {
            if pushoffs[i].is_some() {
                continue;
            }
            let avoid: Vec<&DualCycle> = cycles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, z)| z)
                .chain(pushoffs.iter().flatten())
                .collect();
            let z = &cycles[i];
            let pushoff = match c.framing.clone().unwrap_or_default() {
                Framing::Twist(n) => default_pushoff_avoiding(tri, &c.cycle, z, n, &avoid)?,
                Framing::SelfLinking(target) => {
                    let target = parse_rational(&target).map_err(LinkFileError::Parse)?;
                    pushoff_with_self_linking(tri, &c.cycle, z, &target, &avoid)?
                }
                Framing::Pushoff(_) => unreachable!("explicit pushoffs resolved above"),
            };
            pushoffs[i] = Some(pushoff);
        }
        self.components
            .iter()
            .zip(cycles)
            .zip(pushoffs)
            .map(|((c, z), f)| {
                let f = f.expect("every pushoff resolved");
                Ok(FramedCycle::new(tri, c.cycle.clone(), z, f)?)
            })
            .collect()
    }

    /// Framed components with charges; `overrides` replaces file charges.
    pub fn wilson_components(
        &self,
        tri: &Triangulation,
        overrides: Option<&[i64]>,
    ) -> Result<Vec<WilsonComponent>, LinkFileError> {
        if let Some(q) = overrides {
            if q.len() != self.components.len() {
                return Err(LinkFileError::ChargeCount {
                    expected: self.components.len(),
                    found: q.len(),
                });
            }
        }
        let framed = self.framed_components(tri)?;
        self.components
            .iter()
            .zip(framed)
            .enumerate()
            .map(|(i, (spec, framed))| {
                let charge = match overrides {
                    Some(q) => q[i],
                    None => spec
                        .charge
                        .ok_or_else(|| LinkFileError::MissingCharge(spec.cycle.clone()))?,
                };
                Ok(WilsonComponent { framed, charge })
            })
            .collect()
    }
}
