//! Side-length polyhedra of polygons in the rank-two symmetric spaces.

pub mod cli;
pub mod cone;
pub mod configurations;
pub mod coxeter;
pub mod error;
pub mod inequalities;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polygons;
pub mod rational;
pub mod schubert;

pub use error::{Error, Result};
