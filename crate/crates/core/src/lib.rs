//! Exact computations for the Drinfeld modular curve X_0(xy) over F_q(T):
//! Hecke and Brandt matrices, Eisenstein series on the quotient graph,
//! integral Jacquet-Langlands conjugators and closed-form group invariants.

pub mod error;
pub mod ffpoly;
pub mod zlinalg;

pub use error::{Error, Result};
pub mod cochain;
pub mod eisenstein;
pub mod level;
pub mod search;
pub mod brandt;
pub mod hecke;
pub mod jl;
pub mod tables;
pub mod invariants;
