//! Morse index and nullity of the trivial solution on `S^{n−2} × Σ²`.
//!
//! For `k = 1` and `0 < γ < n/2 − 1` only the eigenvalues `Θ_{0,ℓ}`,
//! `ℓ ≥ 1`, can lie at or below the Jacobi threshold
//! `(n+2γ)/(n−2γ) · Θ_{0,0}`, because `Θ_{m,ℓ} ≥ Θ_{1,0}` for `m ≥ 1` and
//! `Θ_{1,0} = (n+2γ−2)/(n−2γ−2) · Θ_{0,0}` exceeds the threshold. The
//! count therefore runs over the surface spectrum alone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots;
use crate::spectrum::SurfaceSpectrum;
use crate::symbol::{a_m, b_of_lambda, q_gamma_trivial, theta, xi_const, BValue, HalfAxisPoint, SpectralParams};

/// Default nullity band, relative to the threshold.
pub const DEFAULT_NULL_TOL_REL: f64 = 1e-9;

/// `(n+2γ)/(n−2γ) · Q_γ(n, 1)`.
pub fn jacobi_threshold(params: &SpectralParams) -> Result<f64> {
    params.require_circle_regime()?;
    let n = f64::from(params.n());
    let g = params.gamma();
    Ok((n + 2.0 * g) / (n - 2.0 * g) * q_gamma_trivial(params)?)
}

pub fn default_null_tol(threshold: f64) -> f64 {
    DEFAULT_NULL_TOL_REL * threshold
}

/// `Θ_{0,ℓ} = Θ(a_0, b(λ))`.
pub(crate) fn theta_zero(lambda: f64, params: &SpectralParams) -> Result<f64> {
    let point = HalfAxisPoint::new(a_m(0, params), b_of_lambda(lambda, params.k())?, params.k())?;
    theta(point, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairClass {
    Negative,
    Null,
}

/// An eigenvalue `Θ_{m,ℓ}` of the Jacobi count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContributingPair {
    pub m: u32,
    pub l: usize,
    pub lambda: f64,
    pub theta: f64,
    pub class: PairClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorseReport {
    pub index: usize,
    pub nullity: usize,
    pub threshold: f64,
    pub null_tol: f64,
    pub contributing_pairs: Vec<ContributingPair>,
    /// The truncation bound certifies that no omitted eigenvalue contributes.
    pub complete: bool,
}

/// Index `#{ℓ ≥ 1 : Θ_{0,ℓ} < T − tol}` and nullity `#{ℓ ≥ 1 : |Θ_{0,ℓ} − T| ≤ tol}`.
///
/// `null_tol = None` uses `1e-9 · T`. The report is `complete` when
/// `Θ(a_0, b(truncation_bound)) > T + tol`, which by monotonicity in `b`
/// bounds every omitted eigenvalue.
pub fn morse_index_nullity(
    spectrum: &SurfaceSpectrum,
    params: &SpectralParams,
    null_tol: Option<f64>,
) -> Result<MorseReport> {
    let threshold = jacobi_threshold(params)?;
    let null_tol = null_tol.unwrap_or_else(|| default_null_tol(threshold));
    if !(null_tol >= 0.0 && null_tol.is_finite()) {
        return Err(Error::Domain(format!("null tolerance must be nonnegative, got {null_tol}")));
    }
    let mut pairs = Vec::new();
    for (l, &lambda) in spectrum.eigenvalues().iter().enumerate().skip(1) {
        let value = theta_zero(lambda, params)?;
        let class = if value < threshold - null_tol {
            PairClass::Negative
        } else if (value - threshold).abs() <= null_tol {
            PairClass::Null
        } else {
            continue;
        };
        pairs.push(ContributingPair { m: 0, l, lambda, theta: value, class });
    }
    let index = pairs.iter().filter(|p| p.class == PairClass::Negative).count();
    let nullity = pairs.len() - index;
    let complete = theta_zero(spectrum.truncation_bound(), params)? > threshold + null_tol;
    Ok(MorseReport { index, nullity, threshold, null_tol, contributing_pairs: pairs, complete })
}

/// The unique `λ > 1/4` with `Θ(a_0, sqrt(λ − 1/4)) = ϑ`, for `ϑ > Ξ`.
pub fn lambda_of_theta(vartheta: f64, params: &SpectralParams) -> Result<f64> {
    params.require_circle_regime()?;
    let xi = xi_const(params)?;
    if !(vartheta > xi && vartheta.is_finite()) {
        return Err(Error::Domain(format!("ϑ = {vartheta} must exceed Ξ = {xi}")));
    }
    let a0 = a_m(0, params);
    let residual = |b: f64| theta(HalfAxisPoint { a: a0, b: BValue::Real(b) }, params).map(|v| v - vartheta);
    let (lo, hi) = roots::expand_upward(residual, 0.0, 1.0, 200)?;
    let root = roots::brent(residual, lo, hi, 1e-15 * hi.max(1.0))?;
    let lambda = root.x * root.x + 0.25;
    let check = theta_zero(lambda, params)?;
    if (check - vartheta).abs() > 1e-10 * vartheta {
        return Err(Error::NumericalIntegrity(format!(
            "λ(ϑ) = {lambda} reproduces Θ = {check}, target {vartheta}"
        )));
    }
    Ok(lambda)
}

/// Outcome of comparing `Ξ` with the Jacobi threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub holds: bool,
    /// `threshold − Ξ`.
    pub margin: f64,
    pub xi: f64,
    pub threshold: f64,
}

/// Whether `Ξ < (n+2γ)/(n−2γ) · Θ_{0,0}`, the condition under which
/// pinching can push eigenvalues below the threshold.
pub fn check_bifurcation_inequality(params: &SpectralParams) -> Result<InequalityCheck> {
    let threshold = jacobi_threshold(params)?;
    let xi = xi_const(params)?;
    Ok(InequalityCheck { holds: xi < threshold, margin: threshold - xi, xi, threshold })
}
