//! Exact star calculus on second barycentric subdivisions, piecewise-linear
//! sweeping-out, order-complex realizations of layered set systems, and
//! synthesis of binary families with machine-checkable certificates.

pub mod certificate;
pub mod classes;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod family;
pub mod io;
pub mod knet;
pub mod lp;
pub mod rational;
pub mod realization;
pub mod star;
pub mod sweep;

pub use complex::{Point, Simplex, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use family::NamedSet;
pub use realization::SetSystem;
pub use rational::Q;
pub use star::{Chain, StarFamily};
