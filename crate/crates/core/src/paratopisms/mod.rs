//! Paratopisms of a pair of orthogonal Latin squares of order 4.

mod group;
mod paratopism;
mod perm;

use thiserror::Error;

pub use group::{autoparatopism_group, canonical_autoparatopisms, orbits, stabilizer, Orbit, PermGroup};
pub use paratopism::{apply_to_mols, is_autoparatopism, Paratopism};
pub use perm::Perm4;

use crate::designs::DesignError;

/// The two autoparatopisms fixing the first-case opening position
/// X = {r1, r3, c1}, O = {r2, r4}.
pub const PSI1: &str = "(i,(13)(24),i,(13)(24),(12)(34))";
pub const PSI2: &str = "((34),(13),(23),(2134),(3124))";

#[derive(Debug, Error)]
pub enum ParatopismError {
    #[error("bad permutation {0}")]
    BadPermutation(String),
    #[error("paratopisms act on a pair of order-4 squares, got {squares} squares of order {order}")]
    UnsupportedMols { order: usize, squares: usize },
    #[error("fixed point sets overlap")]
    OverlappingSets,
    #[error("group moves a point outside the given set (to {0})")]
    NotInvariant(String),
    #[error(transparent)]
    Design(#[from] DesignError),
}
