//! Oriented simplicial 3-manifolds and their dual 1-skeleton.

mod builders;
mod dual;
mod io;
mod triangulation;

pub use builders::{
    build_lens, build_rp3, build_s3, build_s3_join, builtin, builtin_names, JOIN_SIDES,
    LENS_RANGE,
};
pub use dual::{dual_to_primal, Crossing, DualCycle};
pub(crate) use dual::step_path;
pub use io::{load_triangulation, parse_triangulation, to_json, TriangulationFile};
pub use triangulation::Triangulation;
