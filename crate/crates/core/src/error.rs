use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge: value {value:e}, error estimate {error:e} at {panels} panels")]
    NonConvergence { value: f64, error: f64, panels: usize },

    #[error("optimizer did not converge after {evaluations} energy evaluations")]
    OptimizerNonConvergence { evaluations: usize },

    #[error("no sign change on [{lo}, {hi}]: g(lo) = {g_lo:e}, g(hi) = {g_hi:e}")]
    NoSignChange { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },

    #[error("triplet exponents must differ (got {0} twice)")]
    DegenerateTriplet(f64),

    #[error("orbital exponent must be positive and finite, got {0}")]
    NonPositiveExponent(f64),

    #[error("no bound state at Z = {z}: optimized energy {energy} is not below the one-electron threshold {threshold}")]
    NoBoundState { z: f64, energy: f64, threshold: f64 },

    #[error("density must be unity-normalized")]
    NotUnityNormalized,

    #[error("density is already unity-normalized")]
    AlreadyUnity,

    #[error("one-electron density is not the marginal of the pair density (deviation {deviation:e} at x = {at})")]
    MarginalMismatch { at: f64, deviation: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
