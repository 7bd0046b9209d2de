//! Noncommutative polynomials, Gröbner–Shirshov bases in both the classical
//! and the truncated power series setting, truncated quotients and their
//! dimension invariants, and verification of explicit resolutions.

pub mod bundled;
pub mod certify;
pub mod error;
pub mod expr;
pub mod field;
pub mod file;
pub mod gsbases;
pub mod linalg;
pub mod poly;
pub mod presentation;
pub mod quotients;
pub mod resolution;
pub mod rewrite;
pub mod words;

pub use error::{Error, Result};
pub use field::{Coeff, CoefficientField};
pub use poly::{LeadMode, Poly};
pub use words::{Alphabet, Letter, OrderSpec, Word};
