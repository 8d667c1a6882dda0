//! Shuffle and quasi-shuffle algebras, Lyndon words, noncommutative rational
//! series and the numerics of multiple zeta values and their regularizations.

pub mod coeff;
pub mod error;
pub mod ncalg;
pub mod ratseries;
pub mod regular;
pub mod special;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
