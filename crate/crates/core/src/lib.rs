pub mod chern_simons;
pub mod complex;
pub mod error;
pub mod linalg;
pub mod manifold;
pub mod linkfile;
pub mod linking;
pub mod par;
pub mod report;
