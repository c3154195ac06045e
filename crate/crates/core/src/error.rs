use thiserror::Error;

/// Errors raised by the spectral computations and the file readers.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the domain of the function (non-finite, wrong sign, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A Gamma or digamma argument hit a pole at a nonpositive integer.
    #[error("pole of Gamma at nonpositive integer argument {0}")]
    Pole(f64),

    /// Parameters outside the regime in which a formula is valid.
    #[error("regime error: {0}")]
    Regime(String),

    /// A series or iteration did not reach the requested tolerance.
    #[error("no convergence after {iterations} iterations (estimated error {estimate:e}, tolerance {tolerance:e})")]
    NonConvergence {
        iterations: usize,
        estimate: f64,
        tolerance: f64,
    },

    /// A computed quantity failed an internal consistency check.
    #[error("numerical integrity: {0}")]
    NumericalIntegrity(String),

    /// A root could not be bracketed.
    #[error("bracketing failure: {0}")]
    Bracketing(String),

    /// A derivative direction incompatible with the point's tag.
    #[error("direction {direction} is not defined for {tag} b")]
    DirectionMismatch {
        direction: &'static str,
        tag: &'static str,
    },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid spectral path: {0}")]
    InvalidPath(String),

    /// A path endpoint where some track sits on the Jacobi threshold.
    #[error("degenerate endpoint at t = {t}: track {track} is within {gap:e} of the threshold")]
    EndpointDegenerate { t: f64, track: usize, gap: f64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::NumericalIntegrity(_) | Error::Bracketing(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
