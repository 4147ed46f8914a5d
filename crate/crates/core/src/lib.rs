//! Tic-tac-toe on finite affine planes.
//!
//! Builds the affine plane of order 4 from three mutually orthogonal Latin
//! squares, plays positional games on it, and carries an explicit winning
//! strategy for the first player together with an exhaustive verifier and
//! an independent game-tree solver.

pub mod designs;
pub mod game;
pub mod paratopisms;
pub mod solver;
pub mod strategy;
