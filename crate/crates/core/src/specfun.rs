//! Complex log-Gamma, Gamma and digamma.
//!
//! Arguments with `Re z < 10` are lifted with the recurrences
//! `ln Γ(z) = ln Γ(z + N) − Σ ln(z + j)` and `ψ(z) = ψ(z + N) − Σ 1/(z + j)`,
//! after which the Stirling series (Bernoulli coefficients, 8 terms) is
//! summed. At `|w| ≥ 10` the first omitted term is below `1e-17`.
//! Arguments with `Re z ≤ 0` go through the reflection formulas.
//!
//! The kernel is conjugate-symmetric to the last bit: every operation it
//! uses (complex `+ − × ÷`, `ln`, `exp`) commutes exactly with conjugation
//! off the negative real axis.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex argument or value of the special functions.
pub type ComplexValue = Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Arguments are shifted up to this real part before the asymptotic series.
const SHIFT_CUTOFF: f64 = 10.0;

/// `B_{2k} / (2k (2k − 1))` for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `B_{2k} / (2k)` for k = 1..8.
const DIGAMMA_ASYMP: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Bernoulli numbers `B_2, B_4, ..., B_14`.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn check_finite(z: Complex64) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {z}")))
    }
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor()
}

/// `1/w` by Smith's algorithm, free of the intermediate `|w|^2` and exactly
/// conjugate-symmetric.
fn recip(w: Complex64) -> Complex64 {
    if w.re.abs() >= w.im.abs() {
        let r = w.im / w.re;
        let den = w.re + w.im * r;
        Complex64::new(1.0 / den, -r / den)
    } else {
        let r = w.re / w.im;
        let den = w.re * r + w.im;
        Complex64::new(r / den, -1.0 / den)
    }
}

/// Stirling series, valid for `Re w ≥ SHIFT_CUTOFF`.
fn ln_gamma_stirling(w: Complex64) -> Complex64 {
    let inv = recip(w);
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

fn ln_gamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut logs = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_CUTOFF {
        logs += w.ln();
        w += 1.0;
    }
    ln_gamma_stirling(w) - logs
}

/// `sin(π z)` with the real part reduced modulo 2 first.
fn sin_pi(z: Complex64) -> Complex64 {
    let r = z.re - 2.0 * (z.re / 2.0).round();
    (Complex64::new(r, z.im) * PI).sin()
}

fn cos_pi(z: Complex64) -> Complex64 {
    let r = z.re - 2.0 * (z.re / 2.0).round();
    (Complex64::new(r, z.im) * PI).cos()
}

/// Principal-branch `ln Γ(z)`: continuous on `Re z > 0` and real on the
/// positive axis. For `Re z ≤ 0` the result `L` satisfies `exp(L) = Γ(z)`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if is_pole(z) {
        return Err(Error::Pole(z.re));
    }
    if z.re > 0.0 {
        Ok(ln_gamma_right(z))
    } else {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        Ok(Complex64::new(PI.ln(), 0.0) - sin_pi(z).ln() - ln_gamma_right(one_minus))
    }
}

pub fn gamma(z: ComplexValue) -> Result<ComplexValue> {
    Ok(log_gamma(z)?.exp())
}

fn digamma_right(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_CUTOFF {
        acc -= recip(w);
        w += 1.0;
    }
    let inv = recip(w);
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for c in DIGAMMA_ASYMP {
        series += power * c;
        power *= inv2;
    }
    acc + w.ln() - inv * 0.5 - series
}

/// `ln(1 + u)` accurate for small `|u|`, for `Re u > −1`.
fn ln_1p(u: Complex64) -> Complex64 {
    Complex64::new(0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p(), u.im.atan2(1.0 + u.re))
}

/// `ln Γ(z + s) − ln Γ(z)` for `Re z > 0`, `s ≥ 0`.
///
/// Computed without forming either log-Gamma: the shift is carried as
/// `Σ ln(1 + s/(z + j))` and the remainder by the difference of two Stirling
/// series, `(w − 1/2) ln(1 + s/w) + s ln(w + s) − s + ...`. Both pieces are
/// small when `s` is, so the result keeps its accuracy where the difference
/// of two large log-Gammas would cancel.
pub fn ln_gamma_ratio(z: ComplexValue, s: f64) -> Result<ComplexValue> {
    check_finite(z)?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("ratio needs Re z > 0, got {z}")));
    }
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("ratio needs a finite shift s ≥ 0, got {s}")));
    }
    if s == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut w = z;
    let mut logs = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_CUTOFF {
        logs += ln_1p(recip(w) * s);
        w += 1.0;
    }
    let v = w + s;
    let (iw, iv) = (recip(w), recip(v));
    let (iw2, iv2) = (iw * iw, iv * iv);
    let (mut pw, mut pv) = (iw, iv);
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += (pv - pw) * c;
        pw *= iw2;
        pv *= iv2;
    }
    let head = (w - 0.5) * ln_1p(iw * s) - s;
    Ok(head + v.ln() * s + series - logs)
}

/// Real `ln(Γ(x + s) / Γ(x))` for `x > 0`, `s ≥ 0`.
///
/// Where both log-Gammas are small the plain difference of `lgamma` values
/// is the more accurate route; the rounding of each route is bounded by the
/// magnitudes it adds up, and the smaller bound wins.
pub fn ln_gamma_ratio_real(x: f64, s: f64) -> Result<f64> {
    let ratio = ln_gamma_ratio(Complex64::new(x, 0.0), s)?.re;
    let (upper, lower) = (libm::lgamma_r(x + s).0, libm::lgamma_r(x).0);
    let w = x.max(SHIFT_CUTOFF);
    let ratio_bound = s * ((w + s).ln() + (w / x).ln()) + ratio.abs();
    Ok(if upper.abs() + lower.abs() < ratio_bound { upper - lower } else { ratio })
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    check_finite(z)?;
    if is_pole(z) {
        return Err(Error::Pole(z.re));
    }
    if z.re > 0.0 {
        Ok(digamma_right(z))
    } else {
        // ψ(z) = ψ(1 − z) − π cot(π z)
        let one_minus = Complex64::new(1.0, 0.0) - z;
        Ok(digamma_right(one_minus) - cos_pi(z) / sin_pi(z) * PI)
    }
}

/// `(ln |Γ(x)|, sign Γ(x))` for real `x`.
pub fn ln_gamma_real(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::Pole(x));
    }
    let (ln_abs, sign) = libm::lgamma_r(x);
    Ok((ln_abs, if sign < 0 { -1.0 } else { 1.0 }))
}

/// Real Gamma function, including negative non-integer arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    ln_gamma_real(x)?;
    Ok(libm::tgamma(x))
}

pub fn digamma_real(x: f64) -> Result<f64> {
    Ok(digamma(Complex64::new(x, 0.0))?.re)
}

/// Euler–Mascheroni constant, `−ψ(1)`.
pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// How far to sum the series of [`psi_shift_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesStop {
    /// Plain partial sum of this many terms, no tail correction.
    Terms(usize),
    /// Partial sum plus an Euler–Maclaurin tail, with the estimated
    /// remaining error below this absolute tolerance.
    Tolerance(f64),
}

impl Default for SeriesStop {
    fn default() -> Self {
        SeriesStop::Tolerance(DEFAULT_SERIES_TOL)
    }
}

pub const DEFAULT_SERIES_TOL: f64 = 1e-12;

/// Maximum number of directly summed terms.
pub const SERIES_TERM_CAP: usize = 1_000_000;

fn shift_term(z: Complex64, shift: f64, j: usize) -> Complex64 {
    let u = z + j as f64;
    shift / (u * (u + shift))
}

/// Euler–Maclaurin estimate of `Σ_{j ≥ J} [1/(j+z) − 1/(j+z+s)]` with
/// `u = J + z`. Returns the tail and the size of the last correction.
fn shift_tail(u: Complex64, shift: f64) -> (Complex64, f64) {
    let v = u + shift;
    let (iu, iv) = (recip(u), recip(v));
    let mut tail = (v * iu).ln() + (iu - iv) * 0.5;
    let (iu2, iv2) = (iu * iu, iv * iv);
    let (mut pu, mut pv) = (iu2, iv2);
    let mut last = 0.0;
    for (p, b) in BERNOULLI.iter().enumerate() {
        let term = (pu - pv) * (b / (2.0 * (p + 1) as f64));
        tail += term;
        last = term.norm();
        pu *= iu2;
        pv *= iv2;
    }
    (tail, last)
}

/// `ψ(z + s) − ψ(z) = Σ_{j ≥ 0} s / ((j + z)(j + z + s))` summed directly.
///
/// With [`SeriesStop::Tolerance`] the number of direct terms doubles from 16
/// until truncation plus accumulated rounding falls below the tolerance.
pub fn psi_shift_series(z: ComplexValue, shift: f64, stop: SeriesStop) -> Result<ComplexValue> {
    check_finite(z)?;
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("series needs Re z > 0, got {z}")));
    }
    if !(shift > 0.0 && shift.is_finite()) {
        return Err(Error::Domain(format!("series needs shift > 0, got {shift}")));
    }
    match stop {
        SeriesStop::Terms(count) => {
            if count > SERIES_TERM_CAP {
                return Err(Error::Domain(format!("term count {count} exceeds cap {SERIES_TERM_CAP}")));
            }
            Ok((0..count).map(|j| shift_term(z, shift, j)).sum())
        }
        SeriesStop::Tolerance(tol) => {
            if !(tol > 0.0) {
                return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
            }
            let mut partial = Complex64::new(0.0, 0.0);
            let mut abs_sum = 0.0;
            let mut summed = 0usize;
            let mut target = 16usize;
            loop {
                while summed < target {
                    let t = shift_term(z, shift, summed);
                    partial += t;
                    abs_sum += t.norm();
                    summed += 1;
                }
                let (tail, last) = shift_tail(z + summed as f64, shift);
                let value = partial + tail;
                let rounding = 4.0 * f64::EPSILON * (summed as f64).sqrt() * (abs_sum + tail.norm());
                let estimate = last + rounding;
                if estimate <= tol {
                    return Ok(value);
                }
                if target >= SERIES_TERM_CAP {
                    return Err(Error::NonConvergence {
                        iterations: summed,
                        estimate,
                        tolerance: tol,
                    });
                }
                target = (target * 2).min(SERIES_TERM_CAP);
            }
        }
    }
}
