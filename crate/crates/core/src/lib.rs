//! Exact commutative algebra over `F_p` and `Q` for studying Frobenius
//! powers of ideals in graded rings: Gröbner bases, Hilbert series and
//! multiplicities, the numbers `ν_a^J(q)`, F-threshold estimates and
//! multiplicity bounds.

pub mod error;
pub mod scalar;
pub mod monomial;
pub mod poly;
mod parse;
pub mod groebner;
pub mod elimination;
pub mod monomial_tools;
pub mod hilbert;
pub mod ratio;
pub mod frobenius;
pub mod template;
pub mod bounds;
pub mod case;
pub mod report;
pub mod runner;
pub mod cli;

pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial, RingPresentation, Variable};
pub use scalar::{CoefficientField, Scalar};
