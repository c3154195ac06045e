//! Spectral data of the conformal fractional Laplacian on
//! `S^{n−k−1} × Σ^{k+1}` with the product metric.
//!
//! The eigenvalues are `Θ_{m,ℓ} = Θ(a_m, b_ℓ)` with
//!
//! ```text
//! Θ(a, b) = 4^γ Γ((1+γ)/2 + (a+bi)/2) Γ((1+γ)/2 + (a−bi)/2)
//!             / [Γ((1−γ)/2 + (a+bi)/2) Γ((1−γ)/2 + (a−bi)/2)]
//! a_m = sqrt(m(m+n−k−2) + ((n−k−2)/2)^2),   b_ℓ = sqrt(λ_ℓ − (k/2)^2)
//! ```
//!
//! where `b_ℓ` is taken purely imaginary when `λ_ℓ < (k/2)^2`.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{
    self, digamma, digamma_real, ln_gamma_ratio, ln_gamma_ratio_real, ln_gamma_real, psi_shift_series, SeriesStop,
};
use crate::spectrum::SurfaceSpectrum;

/// Relative size of the imaginary residue tolerated when Θ is evaluated
/// with complex arithmetic.
pub const REALITY_TOL: f64 = 1e-10;

/// Dimension `n`, singular-set dimension `k` and order `γ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralParams {
    n: u32,
    k: u32,
    gamma: f64,
    extended: bool,
}

impl SpectralParams {
    /// Requires `n ≥ 3`, `0 ≤ k < n`, `γ ∈ (0, n/2)` and `γ` not an integer.
    pub fn new(n: u32, k: u32, gamma: f64) -> Result<Self> {
        let p = Self::new_extended(n, k, gamma)?;
        if p.extended {
            return Err(Error::Domain(format!(
                "integer order γ = {gamma} is only available as an extended evaluation"
            )));
        }
        Ok(p)
    }

    /// Like [`SpectralParams::new`] but also admits integer `γ`, flagged as extended.
    pub fn new_extended(n: u32, k: u32, gamma: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("dimension n must be at least 3, got {n}")));
        }
        if k >= n {
            return Err(Error::Domain(format!("need k < n, got k = {k}, n = {n}")));
        }
        if !(gamma > 0.0 && gamma < f64::from(n) / 2.0) {
            return Err(Error::Domain(format!("order γ must lie in (0, n/2) = (0, {}), got {gamma}", f64::from(n) / 2.0)));
        }
        Ok(Self { n, k, gamma, extended: gamma == gamma.floor() })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    fn kf(&self) -> f64 {
        f64::from(self.k)
    }

    /// `k < n/2 − γ`, where the trivial curvature is positive.
    pub fn positive_regime(&self) -> bool {
        self.kf() < self.nf() / 2.0 - self.gamma
    }

    /// `1 ≤ k < n/2 − γ`, where the eigenvalue formula applies.
    pub fn admissible_spectrum(&self) -> bool {
        self.k >= 1 && self.positive_regime()
    }

    pub(crate) fn require_spectral(&self) -> Result<()> {
        if self.admissible_spectrum() {
            Ok(())
        } else {
            Err(Error::Regime(format!(
                "eigenvalue formula needs 1 ≤ k < n/2 − γ; got n = {}, k = {}, γ = {}",
                self.n, self.k, self.gamma
            )))
        }
    }

    /// `k = 1` and `γ < n/2 − 1`, the setting of the Morse index count.
    pub(crate) fn require_circle_regime(&self) -> Result<()> {
        if self.k == 1 && self.gamma < self.nf() / 2.0 - 1.0 {
            Ok(())
        } else {
            Err(Error::Regime(format!(
                "needs k = 1 and γ < n/2 − 1; got n = {}, k = {}, γ = {}",
                self.n, self.k, self.gamma
            )))
        }
    }
}

/// Second symbol argument: real `b ≥ 0` or `b = iβ` with `β ∈ (0, k/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BValue {
    Real(f64),
    Imaginary(f64),
}

impl BValue {
    fn tag(&self) -> &'static str {
        match self {
            BValue::Real(_) => "real",
            BValue::Imaginary(_) => "imaginary",
        }
    }

    pub fn as_complex(&self) -> Complex64 {
        match *self {
            BValue::Real(b) => Complex64::new(b, 0.0),
            BValue::Imaginary(beta) => Complex64::new(0.0, beta),
        }
    }
}

/// A point `(a, b)` at which the symbol is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfAxisPoint {
    pub a: f64,
    pub b: BValue,
}

impl HalfAxisPoint {
    pub fn new(a: f64, b: BValue, k: u32) -> Result<Self> {
        if !(a >= 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("a must be finite and nonnegative, got {a}")));
        }
        match b {
            BValue::Real(v) if !(v >= 0.0 && v.is_finite()) => {
                return Err(Error::Domain(format!("real b must be finite and nonnegative, got {v}")))
            }
            BValue::Imaginary(beta) if !(beta > 0.0 && beta <= f64::from(k) / 2.0) => {
                return Err(Error::Domain(format!("imaginary part β must lie in (0, k/2] = (0, {}], got {beta}", f64::from(k) / 2.0)))
            }
            _ => {}
        }
        Ok(Self { a, b })
    }
}

/// `μ_m = m(m + n − k − 2)`, eigenvalues of the Laplacian on `S^{n−k−1}`.
pub fn mu_m(m: u32, params: &SpectralParams) -> f64 {
    let m = f64::from(m);
    m * (m + params.nf() - params.kf() - 2.0)
}

pub fn a_m(m: u32, params: &SpectralParams) -> f64 {
    let half = (params.nf() - params.kf() - 2.0) / 2.0;
    (mu_m(m, params) + half * half).sqrt()
}

/// `b = sqrt(λ − (k/2)^2)`, imaginary below `(k/2)^2`.
pub fn b_of_lambda(lambda: f64, k: u32) -> Result<BValue> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("eigenvalue λ must be finite and nonnegative, got {lambda}")));
    }
    let shift = (f64::from(k) / 2.0).powi(2);
    Ok(if lambda >= shift {
        BValue::Real((lambda - shift).sqrt())
    } else {
        BValue::Imaginary((shift - lambda).sqrt())
    })
}

fn require_positive_args(args: &[Complex64]) -> Result<()> {
    match args.iter().find(|z| !(z.re > 0.0)) {
        Some(z) => Err(Error::Regime(format!("Gamma argument {z} has nonpositive real part"))),
        None => Ok(()),
    }
}

/// `Θ(a, b)` for an admissible point. The real-b branch is evaluated in
/// complex arithmetic and its imaginary residue checked against
/// [`REALITY_TOL`]; the imaginary-b branch uses only real Gamma values.
pub fn theta(point: HalfAxisPoint, params: &SpectralParams) -> Result<f64> {
    params.require_spectral()?;
    let g = params.gamma;
    let base = (1.0 - g) / 2.0;
    match point.b {
        BValue::Imaginary(beta) => {
            if beta > params.kf() / 2.0 {
                return Err(Error::Domain(format!("β = {beta} exceeds k/2")));
            }
            let xp = base + (point.a + beta) / 2.0;
            let xm = base + (point.a - beta) / 2.0;
            require_positive_args(&[Complex64::new(xm, 0.0)])?;
            let ln = g * 2.0 * LN_2 + ln_gamma_ratio_real(xp, g)? + ln_gamma_ratio_real(xm, g)?;
            let value = ln.exp();
            if !value.is_finite() {
                return Err(Error::NumericalIntegrity(format!("Θ({:e}, {beta:e}i) overflows", point.a)));
            }
            Ok(value)
        }
        BValue::Real(b) => {
            let z = Complex64::new(base + point.a / 2.0, b / 2.0);
            require_positive_args(&[z])?;
            let zc = z.conj();
            let ln = ln_gamma_ratio(z, g)? + ln_gamma_ratio(zc, g)? + g * 2.0 * LN_2;
            let value = ln.exp();
            if !value.re.is_finite() {
                return Err(Error::NumericalIntegrity(format!("Θ({:e}, {b:e}) overflows", point.a)));
            }
            if value.im.abs() > REALITY_TOL * value.re.abs() {
                return Err(Error::NumericalIntegrity(format!(
                    "Θ({}, {b}) has imaginary residue {:e} against real part {:e}",
                    point.a, value.im, value.re
                )));
            }
            Ok(value.re)
        }
    }
}

/// The four-Gamma product for arbitrary complex `b`, computed with complex
/// Gamma values and no symmetry shortcuts. Used to cross-check [`theta`].
pub fn theta_complex(a: f64, b: Complex64, gamma: f64) -> Result<Complex64> {
    let ib = Complex64::i() * b;
    let up_plus = (a + ib) / 2.0 + (1.0 + gamma) / 2.0;
    let up_minus = (a - ib) / 2.0 + (1.0 + gamma) / 2.0;
    let down_plus = (a + ib) / 2.0 + (1.0 - gamma) / 2.0;
    let down_minus = (a - ib) / 2.0 + (1.0 - gamma) / 2.0;
    require_positive_args(&[up_plus, up_minus, down_plus, down_minus])?;
    let num = specfun::gamma(up_plus)? * specfun::gamma(up_minus)?;
    let den = specfun::gamma(down_plus)? * specfun::gamma(down_minus)?;
    Ok(num / den * 4f64.powf(gamma))
}

/// `Θ_{m,ℓ}` from the sphere index `m` and the surface eigenvalue `λ_ℓ`.
pub fn theta_eigenvalue(m: u32, lambda: f64, params: &SpectralParams) -> Result<f64> {
    params.require_spectral()?;
    let point = HalfAxisPoint::new(a_m(m, params), b_of_lambda(lambda, params.k)?, params.k)?;
    theta(point, params)
}

/// `4^γ Γ((n+2γ)/4) Γ((n−2k+2γ)/4) / [Γ((n−2γ)/4) Γ((n−2k−2γ)/4)]`
/// without regime checks; only poles are reported. The sign is kept.
pub fn q_gamma_formula(n: u32, k: u32, gamma: f64) -> Result<f64> {
    let (n, k) = (f64::from(n), f64::from(k));
    let (z1, z2) = ((n - 2.0 * gamma) / 4.0, (n - 2.0 * k - 2.0 * gamma) / 4.0);
    if z1 > 0.0 && z2 > 0.0 && gamma > 0.0 {
        return Ok((gamma * 2.0 * LN_2 + ln_gamma_ratio_real(z1, gamma)? + ln_gamma_ratio_real(z2, gamma)?).exp());
    }
    let (l1, s1) = ln_gamma_real((n + 2.0 * gamma) / 4.0)?;
    let (l2, s2) = ln_gamma_real((n - 2.0 * k + 2.0 * gamma) / 4.0)?;
    let (l3, s3) = ln_gamma_real((n - 2.0 * gamma) / 4.0)?;
    let (l4, s4) = ln_gamma_real((n - 2.0 * k - 2.0 * gamma) / 4.0)?;
    Ok(s1 * s2 * s3 * s4 * (gamma * 2.0 * LN_2 + l1 + l2 - l3 - l4).exp())
}

/// Constant fractional curvature `Q_γ(n, k)` of the trivial solution,
/// for `0 ≤ k < n/2 − γ` (so `k = 0` is admitted here).
pub fn q_gamma_trivial(params: &SpectralParams) -> Result<f64> {
    if !params.positive_regime() {
        return Err(Error::Regime(format!(
            "Q_γ(n, k) needs k < n/2 − γ; got n = {}, k = {}, γ = {}",
            params.n, params.k, params.gamma
        )));
    }
    q_gamma_formula(params.n, params.k, params.gamma)
}

/// `Ξ = Θ(a_0, 0) = 4^γ Γ(n/4 + γ/2 − 1/4)^2 / Γ(n/4 − γ/2 − 1/4)^2` for `k = 1`.
pub fn xi_const(params: &SpectralParams) -> Result<f64> {
    params.require_circle_regime()?;
    let n = params.nf();
    let g = params.gamma;
    let ratio = ln_gamma_ratio_real(n / 4.0 - g / 2.0 - 0.25, g)?;
    Ok((g * 2.0 * LN_2 + 2.0 * ratio).exp())
}

/// `d_γ = 4^γ Γ(γ) / Γ(−γ)`, the normalizer of the scattering operator.
pub fn d_gamma_normalizer(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!("γ must be positive, got {gamma}")));
    }
    if gamma == gamma.floor() {
        return Err(Error::Pole(-gamma));
    }
    let (num, s_num) = ln_gamma_real(gamma)?;
    let (den, s_den) = ln_gamma_real(-gamma)?;
    Ok(s_num * s_den * (gamma * 2.0 * LN_2 + num - den).exp())
}

/// Direction of a logarithmic derivative of Θ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `∂/∂a`, any tag.
    A,
    /// `∂/∂b`, real `b > 0` only.
    B,
    /// `∂/∂β` where `b = iβ`, imaginary only.
    Beta,
}

impl Direction {
    fn name(self) -> &'static str {
        match self {
            Direction::A => "a",
            Direction::B => "b",
            Direction::Beta => "beta",
        }
    }
}

fn check_direction(point: &HalfAxisPoint, direction: Direction) -> Result<()> {
    let ok = match (direction, point.b) {
        (Direction::A, _) => true,
        (Direction::B, BValue::Real(b)) => b > 0.0,
        (Direction::Beta, BValue::Imaginary(_)) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        let tag = match point.b {
            BValue::Real(0.0) => "zero",
            other => other.tag(),
        };
        Err(Error::DirectionMismatch { direction: direction.name(), tag })
    }
}

/// Shared assembly of the logarithmic derivative from a difference
/// `D(z) = ψ(z + γ) − ψ(z)`, evaluated either through digamma or the series.
fn dlog_theta_with<D>(point: HalfAxisPoint, params: &SpectralParams, direction: Direction, diff: D) -> Result<f64>
where
    D: Fn(Complex64) -> Result<Complex64>,
{
    params.require_spectral()?;
    check_direction(&point, direction)?;
    let base = (1.0 - params.gamma) / 2.0;
    match point.b {
        BValue::Imaginary(beta) => {
            let xp = Complex64::new(base + (point.a + beta) / 2.0, 0.0);
            let xm = Complex64::new(base + (point.a - beta) / 2.0, 0.0);
            require_positive_args(&[xm])?;
            let (dp, dm) = (diff(xp)?.re, diff(xm)?.re);
            Ok(match direction {
                Direction::A => 0.5 * (dp + dm),
                _ => 0.5 * (dp - dm),
            })
        }
        BValue::Real(b) => {
            let z = Complex64::new(base + point.a / 2.0, b / 2.0);
            require_positive_args(&[z])?;
            let d = diff(z)?;
            Ok(match direction {
                Direction::A => d.re,
                _ => -d.im,
            })
        }
    }
}

/// Logarithmic derivative of Θ along `direction`, from digamma values.
pub fn dlog_theta(point: HalfAxisPoint, params: &SpectralParams, direction: Direction) -> Result<f64> {
    let g = params.gamma;
    dlog_theta_with(point, params, direction, |z| {
        if z.im == 0.0 {
            Ok(Complex64::new(digamma_real(z.re + g)? - digamma_real(z.re)?, 0.0))
        } else {
            Ok(digamma(z + g)? - digamma(z)?)
        }
    })
}

/// Same derivative summed from the series `Σ γ / ((j+z)(j+z+γ))`.
pub fn dlog_theta_series(
    point: HalfAxisPoint,
    params: &SpectralParams,
    direction: Direction,
    stop: SeriesStop,
) -> Result<f64> {
    let g = params.gamma;
    dlog_theta_with(point, params, direction, |z| psi_shift_series(z, g, stop))
}

/// Table of `Θ_{m,ℓ}` for `0 ≤ m ≤ m_max`, `0 ≤ ℓ ≤ l_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaGrid {
    pub m_max: u32,
    pub l_max: usize,
    pub lambdas: Vec<f64>,
    /// Row-major, `values[m * (l_max + 1) + ℓ]`.
    pub values: Vec<f64>,
}

impl ThetaGrid {
    pub fn compute(params: &SpectralParams, spectrum: &SurfaceSpectrum, m_max: u32, l_max: usize) -> Result<Self> {
        params.require_spectral()?;
        let eig = spectrum.eigenvalues();
        if l_max >= eig.len() {
            return Err(Error::Domain(format!(
                "grid needs λ_0..λ_{l_max} but the spectrum lists only {} eigenvalues",
                eig.len()
            )));
        }
        let lambdas = eig[..=l_max].to_vec();
        let mut values = Vec::with_capacity((m_max as usize + 1) * (l_max + 1));
        for m in 0..=m_max {
            for &lambda in &lambdas {
                values.push(theta_eigenvalue(m, lambda, params)?);
            }
        }
        Ok(Self { m_max, l_max, lambdas, values })
    }

    pub fn get(&self, m: u32, l: usize) -> f64 {
        self.values[m as usize * (self.l_max + 1) + l]
    }
}
