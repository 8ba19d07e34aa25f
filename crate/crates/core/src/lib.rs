//! Exact commutative algebra for moduli of strongly nilpotent 2×2 matrices.

pub mod cli;
pub mod error;
pub mod groebner;
pub mod invariants;
pub mod moduli;
pub mod p1geom;
pub mod par;
pub mod polyalg;
pub mod report;
pub mod syzygy;

pub use error::{Error, Result};
