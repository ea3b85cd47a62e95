//! Exact analysis of Shapiro's Conjecture 12 for real polynomials of even degree.
//!
//! The crate classifies a polynomial `p` by the real-axis root locus of
//! `p''p / (p')^2`, predicts whether `(n-1)(p')^2 - n p p''` and `p` together
//! have a real zero, and checks that prediction by exact root counting.
//! All arithmetic is over arbitrary-precision rationals.

pub mod error;
pub mod harness;
mod intpoly;
pub mod plot;
pub mod poly;
pub mod realroots;
pub mod report;
pub mod rootlocus;
pub mod shapiro;

pub use error::{Error, Result};
pub use poly::{Polynomial, Rational};
