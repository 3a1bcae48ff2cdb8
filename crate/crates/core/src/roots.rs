//! Scalar root finding: closed-form cubic roots and a bracketing bisection.

use crate::error::{Error, Result};
use crate::Real;

/// Real roots of `a x³ + b x² + c x + d = 0` (`a != 0`), ascending.
///
/// Three distinct real roots are produced by the trigonometric method, a
/// single real root by Cardano's formula.
pub fn cubic_real_roots<T: Real>(a: T, b: T, c: T, d: T) -> Vec<T> {
    let three = T::lit(3.0);
    let (b, c, d) = (b / a, c / a, d / a);
    // Depressed cubic y³ + p y + q with x = y - b/3.
    let shift = b / three;
    let p = c - b * b / three;
    let q = T::lit(2.0) * b * b * b / T::lit(27.0) - b * c / three + d;
    let disc = (q / T::lit(2.0)).powi(2) + (p / three).powi(3);
    let mut roots = if p < T::zero() && disc <= T::zero() {
        let m = T::lit(2.0) * (-p / three).sqrt();
        let arg = (three * q / (p * m)).max(-T::one()).min(T::one());
        let theta = arg.acos() / three;
        let step = T::lit(2.0) * T::PI() / three;
        (0..3).map(|k| m * (theta - step * T::lit(k as f64)).cos() - shift).collect::<Vec<_>>()
    } else {
        let s = disc.max(T::zero()).sqrt();
        let u = (-q / T::lit(2.0) + s).cbrt();
        let v = (-q / T::lit(2.0) - s).cbrt();
        vec![u + v - shift]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    roots
}

/// Bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, tol: T) -> Result<T> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == T::zero() {
        return Ok(lo);
    }
    if f_hi == T::zero() {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::InvalidParameter(format!(
            "bisection bracket [{lo}, {hi}] does not enclose a sign change"
        )));
    }
    for _ in 0..200 {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if hi - lo <= tol || mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) / T::lit(2.0))
}
