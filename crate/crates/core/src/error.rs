use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation undefined on the empty polyhedron")]
    EmptyPolyhedron,
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("unknown color `{0}`")]
    UnknownColor(String),
    #[error("not a face: {0}")]
    NotAFace(String),
    #[error("colored fan is not polyhedral: relative interiors of cones {0} and {1} meet")]
    NonPolyhedralFan(usize, usize),
    #[error("cone is not strictly convex: {0}")]
    NotStrictlyConvex(String),
    #[error("fan axiom violated: {0}")]
    FanAxiomViolation(String),
    #[error("invalid colored fan: {0}")]
    InvalidColoredFan(String),
    #[error("union of cells is not convex")]
    NonConvexUnion,
    #[error("union of cells is convex but not a cone")]
    NotConic,
    #[error("tropicalization is empty")]
    EmptyTropicalization,
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("character is not in the dual cone")]
    NotInDualCone,
    #[error("point outside the domain: {0}")]
    DomainViolation(String),
    #[error("no provenance recorded for toric cone {0}")]
    ProvenanceMissing(usize),
    #[error("orbit {0} carries a nonempty piece but has no target")]
    UnmappedOrbit(usize),
    #[error("restriction of the lift map to the unit lattice is not invertible")]
    LiftNotInvertible,
    #[error("color mismatch: {0}")]
    ColorMismatch(String),
    #[error("subset is not in the admissible family: {0}")]
    InvalidAFamily(String),
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
