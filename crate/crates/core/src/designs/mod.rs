//! Latin squares, MOLS, transversal designs and the affine planes built from them.

mod io;
mod latin;
mod plane;
mod point;
mod transversal;

use thiserror::Error;

pub use io::{plane_from_json, plane_from_text, plane_to_json, plane_to_text, ClassFile, PlaneFile};
pub use latin::{
    are_orthogonal, canonical_mols4, prime_mols, validate_latin_square, LatinReport, LatinSquare, LatinViolation,
    MolsSet,
};
pub use plane::{
    affine_plane_prime, build_affine_plane, canonical_pi4, validate_plane, AffinePlane, LineId, ParallelClass,
    PlaneReport, PlaneViolation, PointId, INDEX_CLASS_NAME,
};
pub use point::{PlanePoint, PointClass};
pub use transversal::{
    mols_to_transversal_design, resolve_by_last_square, ResolutionClass, TdViolation, TransversalDesign,
};

#[derive(Debug, Error)]
pub enum DesignError {
    #[error("malformed square: {0}")]
    Shape(String),
    #[error("not a Latin square ({} violations)", .0.len())]
    NotLatin(Vec<LatinViolation>),
    #[error("squares have different orders ({0} and {1})")]
    OrderMismatch(usize, usize),
    #[error("squares {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("empty MOLS family")]
    EmptyMols,
    #[error("resolving needs at least 2 squares, got {0}")]
    UnsupportedArity(usize),
    #[error("transversal design has no resolution")]
    NotResolved,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("bad point name `{0}`")]
    BadPointName(String),
    #[error("{0}")]
    Structure(String),
    #[error("not an affine plane: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    InvalidPlane(Vec<PlaneViolation>),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}
