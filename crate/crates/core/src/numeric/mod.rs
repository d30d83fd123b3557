//! Floating-point numerics used by the profile samplers and the oracle.

pub mod lsq;
pub mod ode;
pub mod quad;
pub mod roots;

pub use lsq::{least_squares, LsqFit};
pub use ode::{dopri5, OdeOptions};
pub use quad::{integrate, integrate_log, integrate_to_infinity, QuadOptions, QuadResult};
pub use roots::{bisect, cumulative_trapezoid, geomspace, linspace, scan_brackets};
