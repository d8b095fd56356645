//! Bergman-space Toeplitz operator toolkit: self-commutator norms for
//! polynomial analytic symbols, torsional rigidity of conformal images of
//! the unit disk, and verification of the isoperimetric sandwich
//! `rho/Area <= ||[T*, T]|| <= Area/(2 pi)` with its disk equality cases.

pub mod cli;
pub mod diskalg;
pub mod error;
pub mod hankel;
pub mod operator;
pub mod report;
pub mod scalar;
pub mod symbol;
pub mod torsion;

pub use error::{Error, Result};
pub use symbol::TaylorSymbol;
