//! Homogeneous Bell inequalities for `n` parties with two `d`-valued
//! observables each.
//!
//! Dit functions `f: Z_d^n → U` index everything: their Fourier spectra are
//! the coefficients of the Bell polynomials [`bellpoly::BellPolynomial`],
//! the facets of the local polytope ([`polytope`]) and the quantum
//! operators `Q_f` ([`quantum`]).

pub mod bellpoly;
pub mod cli;
pub mod cyclotomic;
pub mod dft;
pub mod error;
pub mod params;
pub mod polytope;
pub mod quantum;
pub mod report;

pub use cyclotomic::{CycMatrix, CycNum, Cyclotomic};
pub use error::{Error, Result};
pub use params::{MultiIndex, Params};
