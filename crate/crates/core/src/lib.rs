//! Coxeter groups, Renner–Coxeter monoids and their adherence orders.
//!
//! The rook monoid `R_n` is the worked instance; see [`renner::rook_system`].

pub mod adherence;
pub mod coxeter;
pub mod greens;
pub mod hasse;
pub mod parabolic;
pub mod renner;
pub mod verify;

#[cfg(test)]
mod fixtures;
