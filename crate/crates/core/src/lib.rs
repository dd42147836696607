//! Exact-arithmetic machinery for the polynomial solution theory of the
//! Navier equations of linear elasticity and their wave-type extension,
//! the Lamé equations.
//!
//! The crate is organised around three layers:
//!
//! * [`poly`] / [`vecpoly`] — sparse multivariate polynomials and
//!   vector-valued polynomials over arbitrary-precision rationals,
//! * [`diffops`], [`harmonics`], [`decomp`], [`flag`] — the differential
//!   operators, harmonic bases, the three-summand decomposition of the
//!   homogeneous solution spaces, and the uniform/Lamé solution bases,
//! * [`ivp`] — truncated Fourier-series solvers for the Navier and Lamé
//!   initial value problems on a box, with finite-difference residual
//!   verification.
//!
//! Everything outside `ivp` is exact: results are polynomial identities
//! over reduced fractions, checked by construction-time verification and
//! by independent nullspace oracles ([`decomp::oracle_nullspace`]).

pub mod decomp;
pub mod diffops;
pub mod error;
pub mod flag;
pub mod harmonics;
pub mod ivp;
pub mod json;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod rational;
pub mod vecpoly;

pub use decomp::{BasisVector, Family};
pub use diffops::LameParameters;
pub use error::Error;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use rational::Rational;
pub use vecpoly::VectorPolynomial;
