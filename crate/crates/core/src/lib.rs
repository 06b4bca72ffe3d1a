//! Exact symbolic verification engine for κ-deformed Poincaré and Weyl
//! groups and algebras over an arbitrary rational metric.

pub mod cli;
pub mod duality;
pub mod error;
pub mod generator;
pub mod hopf;
pub mod liealg;
pub mod linsolve;
pub mod metric;
pub mod mutation;
pub mod ortho;
pub mod poisson;
pub mod poly;
pub mod qalg;
pub mod qgroup;
pub mod report;
pub mod rmatrix;
pub mod rewrite;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use generator::Generator;
pub use metric::Metric;
pub use poly::{NCPoly, TensorPoly, Word};
pub use rewrite::RelationSet;
pub use scalar::Scalar;
pub use series::Series;
