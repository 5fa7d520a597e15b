//! Spherical tropicalization through toric embeddings.
//!
//! * [`qpoly`]: exact rational cones, polyhedra and complexes.
//! * [`colored_fans`]: palettes, colored cones and fans, polyhedrality.
//! * [`fan_builder`]: the toric fans `Σ_Z`, `Σ_Ẑ` and the torus `Γ`.
//! * [`trop_engine`]: tropical hypersurfaces, prevarieties, extended closures.
//! * [`spherical`]: `ψ`, `ψ̄`, valuation cones and tropicalizations of
//!   subvarieties and their closures.

pub mod colored_fans;
pub mod error;
pub mod fan_builder;
pub mod qpoly;
pub mod spherical;
pub mod trop_engine;

pub use error::{Error, Result};
