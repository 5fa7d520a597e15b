//! Exact rational linear algebra and polyhedral geometry.

pub mod complex;
pub mod cone;
mod dd;
pub mod linalg;
pub mod polyhedron;
pub mod scalar;
pub mod vector;

pub use complex::{common_refinement, covered, PolyhedralComplex};
pub use cone::Cone;
pub use linalg::{EchelonBasis, LinearMap};
pub use polyhedron::{HalfSpace, Polyhedron};
pub use scalar::{parse_rational, rat, ratio, ExtRational, Rational};
pub use vector::QVector;
