//! The threshold function `F(x) = Γ(x/2+1) Γ(x/2−1/2) / Γ(x/2−1/4)^2` and
//! the constants `c_n` solving `F(n/2 − c) = F(n/2 + c)`.
//!
//! For `n ≥ 4` and `0 < γ < n/2 − 1`, `Ξ` lies below the Jacobi threshold
//! exactly when `F(n/2 − γ) < F(n/2 + γ)`, i.e. when `γ < c_n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots;
use crate::specfun::{digamma_real, ln_gamma_ratio_real};

pub const DEFAULT_CN_TOL: f64 = 1e-12;

fn require_domain(x: f64) -> Result<()> {
    if x > 1.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("F is defined for x > 1, got {x}")))
    }
}

/// `ln F(x)`; stays finite where `F` itself would overflow.
pub fn ln_f(x: f64) -> Result<f64> {
    require_domain(x)?;
    // Γ(x/2+1)/Γ(x/2−1/4) divided by Γ(x/2−1/4)/Γ(x/2−1/2)
    Ok(ln_gamma_ratio_real(x / 2.0 - 0.25, 1.25)? - ln_gamma_ratio_real(x / 2.0 - 0.5, 0.25)?)
}

pub fn f(x: f64) -> Result<f64> {
    Ok(ln_f(x)?.exp())
}

/// `d/dx ln F(x) = (ψ(x/2+1) + ψ(x/2−1/2) − 2ψ(x/2−1/4)) / 2`.
pub fn dlog_f(x: f64) -> Result<f64> {
    require_domain(x)?;
    Ok(0.5 * (digamma_real(x / 2.0 + 1.0)? + digamma_real(x / 2.0 - 0.5)? - 2.0 * digamma_real(x / 2.0 - 0.25)?))
}

/// Minimizer of `F` on `(1, ∞)`, the zero of `d/dx ln F` in `[1.2, 2]`.
pub fn find_x0(tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(roots::brent(dlog_f, 1.2, 2.0, tol)?.x)
}

/// A solved threshold `c_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CnRecord {
    pub n: u32,
    pub c_n: f64,
    /// `|F(n/2 − c_n) − F(n/2 + c_n)|`.
    pub residual: f64,
    pub bracket: (f64, f64),
}

impl CnRecord {
    /// `(n/2 − 1) − c_n`.
    pub fn gap_to_asymptote(&self) -> f64 {
        f64::from(self.n) / 2.0 - 1.0 - self.c_n
    }
}

/// `ln F(n/2 + c) − ln F(n/2 − c)`: positive for small `c` (F increases
/// past `x_0 < n/2`) and negative near `n/2 − 1` where `F(n/2 − c)` blows up.
fn cn_objective(half_n: f64, c: f64) -> Result<f64> {
    Ok(ln_f(half_n + c)? - ln_f(half_n - c)?)
}

/// Root `c ∈ (0, n/2 − 1)` of `F(n/2 + c) = F(n/2 − c)`, located to within
/// `tol` or tighter.
pub fn solve_cn(n: u32, tol: f64) -> Result<CnRecord> {
    if n < 4 {
        return Err(Error::Domain(format!("c_n is defined for n ≥ 4, got {n}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let half_n = f64::from(n) / 2.0;
    let span = half_n - 1.0;
    let lo = 0.05f64.min(span / 10.0);
    let hi = span * (1.0 - 1e-9);
    let g_lo = cn_objective(half_n, lo)?;
    let g_hi = cn_objective(half_n, hi)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::Bracketing(format!(
            "c_{n}: expected sign change on [{lo}, {hi}], got {g_lo:e} and {g_hi:e}"
        )));
    }
    // F(n/2 − c) sits near its pole, so the residual is much more sensitive
    // than c itself; always refine to near machine precision.
    let root = roots::brent(|c| cn_objective(half_n, c), lo, hi, tol.min(4.0 * f64::EPSILON * span))?;
    let c_n = root.x;
    let upper = f(half_n + c_n)?;
    let residual = upper * (ln_f(half_n - c_n)? - ln_f(half_n + c_n)?).exp_m1().abs();
    Ok(CnRecord { n, c_n, residual, bracket: (lo, hi) })
}

pub fn cn_table(n_min: u32, n_max: u32, tol: f64) -> Result<Vec<CnRecord>> {
    if n_min < 4 || n_min > n_max {
        return Err(Error::Domain(format!("need 4 ≤ n_min ≤ n_max, got {n_min}..{n_max}")));
    }
    (n_min..=n_max).map(|n| solve_cn(n, tol)).collect()
}

/// `F(n/2 − γ) < F(n/2 + γ)`, tested in logarithms.
pub fn f_inequality_holds(n: u32, gamma: f64) -> Result<bool> {
    let half_n = f64::from(n) / 2.0;
    Ok(ln_f(half_n - gamma)? < ln_f(half_n + gamma)?)
}
