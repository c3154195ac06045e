//! Spectral symbol of the fractional conformal Laplacian on
//! `S^{n−k−1} × H^{k+1}` and on its quotients `S^{n−2} × Σ²`, with the Morse
//! count of the trivial Yamabe solution and its bifurcation instants along
//! paths of surface spectra.

// NaN must fail validation, so `!(x > 0.0)` is intended throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bifurcation;
pub mod error;
pub mod golden;
pub mod morse;
pub mod roots;
pub mod specfun;
pub mod spectrum;
pub mod symbol;
pub mod thresholds;

pub use bifurcation::{
    detect_instants, pinching_family, product_volume, BifurcationReport, CrossingDirection, DetectOptions, Instant,
    PathKind, SpectralPath, Track, Warning,
};
pub use error::{Error, Result};
pub use morse::{
    check_bifurcation_inequality, jacobi_threshold, lambda_of_theta, morse_index_nullity, InequalityCheck,
    MorseReport,
};
pub use specfun::{ComplexValue, SeriesStop};
pub use spectrum::SurfaceSpectrum;
pub use symbol::{BValue, Direction, HalfAxisPoint, SpectralParams, ThetaGrid};
pub use thresholds::CnRecord;
