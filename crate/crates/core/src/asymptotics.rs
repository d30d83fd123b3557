//! Expected asymptotic expansions of potentials, as data for the fitter.
//!
//! Every basis function is written in the logarithmic radial variable
//! `t = log r²` (for bundles the same role is played by `ν = log r²`).

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Location {
    /// `r² → 0`.
    PunctureZero,
    /// `r² → ∞` on an asymptotically locally Euclidean end.
    InfinityAle,
    /// `r² → 1` on a disc-type end of Poincaré type.
    BoundaryPoincare,
    /// `r² → ∞` on an end of finite length.
    InfinityIncomplete,
    /// `r² → ∞` on a complete bundle end.
    InfinityBundle,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Basis {
    /// 1
    Const,
    /// r² = e^t
    R2,
    /// log r² = t
    LogR2,
    /// (r²)^p = e^{pt}
    PowR2(f64),
    /// (log r²)^p = t^p (t > 0) or sign-carrying power for negative t with integer p
    LogR2Pow(i32),
    /// log(−log r²)
    LogNegLogR2,
    /// −log(−log r²), positive near the puncture or the unit circle
    PoincareLog,
    /// (−log r²)^p
    NegLogR2Pow(f64),
    /// log(log r²), for r² → ∞
    LogLogR2,
    /// log(−log r²) / log r²
    LogNegLogOverLogR2,
    /// log(log r²) / log r²
    LogLogOverLogR2,
    /// r^{−2/κ} = e^{−t/κ}
    RPowNeg2OverKappa(f64),
    /// (log(−log r²))^i (−log r²)^{−j}, for r² → 0
    NegLogSeries(i32, i32),
    /// (log(log r²))^i (log r²)^{−j}, for r² → ∞
    LogSeries(i32, i32),
}

impl Basis {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Basis::Const => 1.0,
            Basis::R2 => t.exp(),
            Basis::LogR2 => t,
            Basis::PowR2(p) => (p * t).exp(),
            Basis::LogR2Pow(p) => t.powi(p),
            Basis::LogNegLogR2 => (-t).ln(),
            Basis::PoincareLog => -(-t).ln(),
            Basis::NegLogR2Pow(p) => (-t).powf(p),
            Basis::LogLogR2 => t.ln(),
            Basis::LogNegLogOverLogR2 => (-t).ln() / t,
            Basis::LogLogOverLogR2 => t.ln() / t,
            Basis::RPowNeg2OverKappa(k) => (-t / k).exp(),
            Basis::NegLogSeries(i, j) => (-t).ln().powi(i) * (-t).powi(-j),
            Basis::LogSeries(i, j) => t.ln().powi(i) * t.powi(-j),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Basis::Const => "1".into(),
            Basis::R2 => "r^2".into(),
            Basis::LogR2 => "log r^2".into(),
            Basis::PowR2(p) => format!("(r^2)^{p}"),
            Basis::LogR2Pow(p) => format!("(log r^2)^{p}"),
            Basis::LogNegLogR2 => "log(-log r^2)".into(),
            Basis::PoincareLog => "-log(-log r^2)".into(),
            Basis::NegLogR2Pow(p) => format!("(-log r^2)^{p}"),
            Basis::LogLogR2 => "log(log r^2)".into(),
            Basis::LogNegLogOverLogR2 => "log(-log r^2)/log r^2".into(),
            Basis::LogLogOverLogR2 => "log(log r^2)/log r^2".into(),
            Basis::RPowNeg2OverKappa(k) => format!("r^(-2/{k})"),
            Basis::NegLogSeries(i, j) => format!("log(-log r^2)^{i} (-log r^2)^-{j}"),
            Basis::LogSeries(i, j) => format!("log(log r^2)^{i} (log r^2)^-{j}"),
        }
    }
}

/// A term of an expansion. `coefficient: None` marks a term whose size
/// depends on the additive normalisation of the radial variable; the fitter
/// estimates it but does not compare it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coefficient: Option<f64>,
    pub basis: Basis,
}

impl Term {
    pub fn known(coefficient: f64, basis: Basis) -> Self {
        Term { coefficient: Some(coefficient), basis }
    }

    pub fn free(basis: Basis) -> Self {
        Term { coefficient: None, basis }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Remainder {
    /// O((log r²)^{-1})
    InvLogR2,
    /// O(log(−log r²))
    LogNegLogR2,
    /// O((−log r²)^p)
    NegLogR2Pow(f64),
    /// O((r²)^p)
    PowR2(f64),
    /// O(log r²) near r² = 1
    LogR2,
    /// O(r^{−4/κ})
    RPowNeg4OverKappa(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticModel {
    pub location: Location,
    pub terms: Vec<Term>,
    pub remainder: Remainder,
}

impl AsymptoticModel {
    pub fn coefficient_of(&self, basis: Basis) -> Option<f64> {
        self.terms.iter().find(|t| t.basis == basis).and_then(|t| t.coefficient)
    }
}
