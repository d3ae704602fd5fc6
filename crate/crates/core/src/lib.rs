//! Pipe puzzles for separated-descent Grothendieck structure constants.

pub mod demazure;
pub mod engine;
pub mod exec;
pub mod lattice;
pub mod perm;
pub mod puzzle;
pub mod ring;
pub mod special;
