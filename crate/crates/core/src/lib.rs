//! Exact Askey-Wilson operator calculus.
//!
//! Everything is computed over the rationals with no tolerance: a check
//! passes only when a residual is exactly zero.
//!
//! - [`scalars`]: `q`-numbers for a rational `v = q^{1/2}`.
//! - [`qpoly`]: polynomials in `x` and their symmetric Laurent images.
//! - [`qoperators`]: the divided-difference and averaging operators.
//! - [`askey_wilson`]: monic families solving the second-order operator equation.
//! - [`proof_engine`]: derived families and the proof chain built on them.
//! - [`cli`]: the `awproof` command-line driver.

pub mod askey_wilson;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod proof_engine;
pub mod qoperators;
pub mod qpoly;
pub mod scalars;

pub use askey_wilson::{build_family, AWFamily, AWParams, FamilyJson};
pub use error::{Error, Result};
pub use proof_engine::{run_chain, ProofReport};
pub use qpoly::PolyX;
pub use scalars::{QContext, Rational};
