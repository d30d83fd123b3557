//! Construction and verification of constant scalar curvature Kähler
//! profiles: rotationally symmetric metrics on punctured balls and spaces,
//! momentum profiles on vector bundles, and profiles that close up on the
//! projective completion.
//!
//! Closed-form objects are exact polynomials over [`Rational`]; floating
//! point is used only to sample them and in the independent [`oracle`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod error;
pub mod flat;
pub mod momentum;
pub mod numeric;
pub mod oracle;
pub mod poly;
pub mod projective;
pub mod scalar;

pub use error::{CoreError, Result};
pub use poly::{Poly, RatFunc, RootInterval};
pub use scalar::Field;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Exact rational polynomial.
pub type PolyQ = Poly<Rational>;
/// Double-precision polynomial.
pub type PolyF = Poly<f64>;
/// Exact rational function.
pub type RatFuncQ = RatFunc<Rational>;
/// Floating scalar used by samplers and the oracle.
pub type Real = f64;
