//! Bracketed scalar root finding.

use crate::error::{Error, Result};

/// A converged root with its final bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

const MAX_ITER: usize = 200;

fn check_bracket(a: f64, fa: f64, b: f64, fb: f64) -> Result<()> {
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(Error::Bracketing(format!("non-finite values f({a}) = {fa}, f({b}) = {fb}")));
    }
    if fa.signum() == fb.signum() && fa != 0.0 && fb != 0.0 {
        return Err(Error::Bracketing(format!("no sign change on [{a}, {b}]: f = {fa:e}, {fb:e}")));
    }
    Ok(())
}

/// Plain bisection until the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    check_bracket(lo, flo, hi, fhi)?;
    if flo == 0.0 {
        return Ok(Root { x: lo, fx: 0.0, bracket: (lo, lo), iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(Root { x: hi, fx: 0.0, bracket: (hi, hi), iterations: 0 });
    }
    let mut iterations = 0;
    while (hi - lo).abs() > tol && iterations < 4 * MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid)?;
        iterations += 1;
        if fm == 0.0 {
            return Ok(Root { x: mid, fx: 0.0, bracket: (mid, mid), iterations });
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(Root { x, fx: f(x)?, bracket: (lo.min(hi), lo.max(hi)), iterations })
}

/// Brent's method (inverse quadratic interpolation safeguarded by bisection).
pub fn brent<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Root>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    check_bracket(a, fa, b, fb)?;
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);
    for iterations in 0..MAX_ITER {
        if fb.signum() == fc.signum() && fb != 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(Root { x: b, fx: fb, bracket: (b.min(c), b.max(c)), iterations });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Err(Error::NonConvergence { iterations: MAX_ITER, estimate: (c - b).abs(), tolerance: tol })
}

/// Grow `hi` geometrically away from `lo` until `f(hi)` has the sign
/// opposite to `f(lo)`. Returns the bracket `(lo', hi')`.
pub fn expand_upward<F>(mut f: F, lo: f64, mut hi: f64, max_doublings: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let flo = f(lo)?;
    let mut last_lo = lo;
    for _ in 0..max_doublings {
        let fhi = f(hi)?;
        if fhi.signum() != flo.signum() || fhi == 0.0 {
            return Ok((last_lo, hi));
        }
        last_lo = hi;
        hi = lo + 2.0 * (hi - lo);
    }
    Err(Error::Bracketing(format!("no sign change found above {lo} up to {hi}")))
}
