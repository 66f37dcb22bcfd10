//! Modified Bessel functions of the first kind, orders 0 and 1.
//!
//! Small and moderate arguments use the ascending power series
//! `I_n(x) = (x/2)^n * sum_k (x^2/4)^k / (k! (k+n)!)`, which has only positive
//! terms and therefore no cancellation. Above [`SERIES_MAX`] the Hankel
//! asymptotic expansion of `exp(-x) I_n(x)` takes over.
//!
//! Besides the public unscaled functions, the crate uses exponentially scaled
//! variants internally so that ratios such as `I0(s r) / I0(s R)` stay finite
//! when `s R` is far beyond the range of `exp`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest argument evaluated with the ascending series.
pub const SERIES_MAX: f64 = 30.0;

const SERIES_REL_TOL: f64 = 1e-17;
const MAX_TERMS: usize = 200;

/// `I0(x)` for `x >= 0`.
pub fn bessel_i0<T: Real>(x: T) -> Result<T> {
    check_arg("bessel_i0", x)?;
    Ok(i0(x))
}

/// `I1(x)` for `x >= 0`.
pub fn bessel_i1<T: Real>(x: T) -> Result<T> {
    check_arg("bessel_i1", x)?;
    Ok(i1(x))
}

/// `I1(x) / x`, continued by its limit `1/2` at the origin.
pub fn bessel_i1_over_x<T: Real>(x: T) -> Result<T> {
    check_arg("bessel_i1_over_x", x)?;
    Ok(i1_over_x(x))
}

fn check_arg<T: Real>(func: &'static str, x: T) -> Result<()> {
    if !x.is_finite() || x < T::zero() {
        return Err(Error::Domain {
            func,
            value: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// `sum_k q^k / (k! (k+n)!)` with `q = x^2/4`.
fn reduced_series<T: Real>(order: u32, x: T) -> T {
    let q = x * x / T::lit(4.0);
    let mut term = T::one();
    for j in 2..=order {
        term = term / T::lit(f64::from(j));
    }
    let mut sum = term;
    let tol = T::lit(SERIES_REL_TOL);
    let n = order as usize;
    for k in 1..MAX_TERMS {
        term = term * q / T::from_usize_lossy(k * (k + n));
        sum = sum + term;
        if term <= tol * sum {
            break;
        }
    }
    sum
}

/// Hankel expansion of `exp(-x) I_n(x)`, truncated at the first term below
/// the tolerance or at the smallest term of the divergent tail.
fn asymptotic_scaled<T: Real>(order: u32, x: T) -> T {
    let four_nu2 = T::lit(4.0 * f64::from(order * order));
    let mut term = T::one();
    let mut sum = T::one();
    let tol = T::lit(SERIES_REL_TOL);
    for k in 1..MAX_TERMS {
        let odd = T::from_usize_lossy(2 * k - 1);
        let next = -term * (four_nu2 - odd * odd) / (T::lit(8.0) * T::from_usize_lossy(k) * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum = sum + term;
        if term.abs() <= tol * sum.abs() {
            break;
        }
    }
    sum / (T::lit(2.0) * T::PI() * x).sqrt()
}

#[inline]
fn in_series_range<T: Real>(x: T) -> bool {
    x <= T::lit(SERIES_MAX)
}

pub(crate) fn i0<T: Real>(x: T) -> T {
    if in_series_range(x) {
        reduced_series(0, x)
    } else {
        asymptotic_scaled(0, x) * x.exp()
    }
}

pub(crate) fn i1<T: Real>(x: T) -> T {
    if in_series_range(x) {
        x / T::lit(2.0) * reduced_series(1, x)
    } else {
        asymptotic_scaled(1, x) * x.exp()
    }
}

pub(crate) fn i1_over_x<T: Real>(x: T) -> T {
    if in_series_range(x) {
        reduced_series(1, x) / T::lit(2.0)
    } else {
        asymptotic_scaled(1, x) * x.exp() / x
    }
}

/// `I2(x) / x`, which vanishes linearly at the origin.
#[cfg(test)]
pub(crate) fn i2_over_x<T: Real>(x: T) -> T {
    if in_series_range(x) {
        x / T::lit(4.0) * reduced_series(2, x)
    } else {
        asymptotic_scaled(2, x) * x.exp() / x
    }
}

/// `exp(-x) I0(x)`.
pub(crate) fn i0e<T: Real>(x: T) -> T {
    if in_series_range(x) {
        reduced_series(0, x) * (-x).exp()
    } else {
        asymptotic_scaled(0, x)
    }
}

/// `exp(-x) I1(x)`.
pub(crate) fn i1e<T: Real>(x: T) -> T {
    if in_series_range(x) {
        x / T::lit(2.0) * reduced_series(1, x) * (-x).exp()
    } else {
        asymptotic_scaled(1, x)
    }
}

/// `exp(-x) I1(x) / x`.
pub(crate) fn i1_over_x_e<T: Real>(x: T) -> T {
    if in_series_range(x) {
        reduced_series(1, x) / T::lit(2.0) * (-x).exp()
    } else {
        asymptotic_scaled(1, x) / x
    }
}

/// `exp(-x) I2(x) / x`.
pub(crate) fn i2_over_x_e<T: Real>(x: T) -> T {
    if in_series_range(x) {
        x / T::lit(4.0) * reduced_series(2, x) * (-x).exp()
    } else {
        asymptotic_scaled(2, x) / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn reference_values() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        assert_eq!(bessel_i1(0.0).unwrap(), 0.0);
        assert!(rel(bessel_i0(2.0).unwrap(), 2.2795853023360673) < 1e-15);
        assert!(rel(bessel_i0(1.0).unwrap(), 1.2660658777520084) < 1e-15);
        assert!(rel(bessel_i1(2.0).unwrap(), 1.5906368546373291) < 1e-15);
        assert!(rel(bessel_i1(1.0).unwrap(), 0.5651591039924851) < 1e-15);
        assert_eq!(bessel_i1_over_x(0.0).unwrap(), 0.5);
        assert!(rel(bessel_i1_over_x(2.0).unwrap(), 0.7953184273186645) < 1e-15);
        assert!((bessel_i1_over_x(1e-8_f64).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_arguments() {
        for bad in [-1.0, -1e-300, f64::NAN, f64::INFINITY] {
            assert!(matches!(bessel_i0(bad), Err(Error::Domain { .. })));
            assert!(matches!(bessel_i1(bad), Err(Error::Domain { .. })));
            assert!(matches!(bessel_i1_over_x(bad), Err(Error::Domain { .. })));
        }
    }

    // at x = 10 rounding in the difference quotient alone is ~eps I0/h = 6e-8,
    // so the bound is taken relative to the function magnitude beyond 1
    #[test]
    fn derivative_identities() {
        let h = 1e-5;
        for x in [0.1_f64, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let d0 = (i0(x + h) - i0(x - h)) / (2.0 * h);
            assert!((d0 - i1(x)).abs() < 1e-8 * i1(x).max(1.0), "I0' at {x}");
            let d1 = (i1(x + h) - i1(x - h)) / (2.0 * h);
            assert!((d1 - (i0(x) - i1(x) / x)).abs() < 1e-8 * i0(x).max(1.0), "I1' at {x}");
        }
    }

    #[test]
    fn strictly_increasing() {
        let mut prev = (i0(0.0_f64), i1(0.0_f64));
        for k in 1..=5000 {
            let x: f64 = 50.0 * k as f64 / 5000.0;
            let cur = (i0(x), i1(x));
            assert!(cur.0 > prev.0 && cur.1 > prev.1, "not increasing at {x}");
            prev = cur;
        }
    }

    #[test]
    fn regimes_agree_at_switch() {
        let x: f64 = SERIES_MAX;
        for (series, asym) in [
            (reduced_series(0, x), asymptotic_scaled(0, x) * x.exp()),
            (x / 2.0 * reduced_series(1, x), asymptotic_scaled(1, x) * x.exp()),
            (x * x / 4.0 * reduced_series(2, x), asymptotic_scaled(2, x) * x.exp()),
        ] {
            assert!(rel(asym, series) < 1e-14);
        }
    }

    #[test]
    fn scaled_variants_match_unscaled() {
        for x in [0.0_f64, 1e-3, 0.7, 4.0, 29.0, 31.0, 45.0] {
            let e = (-x).exp();
            assert!((i0e(x) - i0(x) * e).abs() <= 1e-15 * i0e(x));
            assert!((i1e(x) - i1(x) * e).abs() <= 1e-15 * i1e(x).max(1e-300));
            assert!((i1_over_x_e(x) - i1_over_x(x) * e).abs() <= 1e-15 * i1_over_x_e(x));
            assert!((i2_over_x_e(x) - i2_over_x(x) * e).abs() <= 1e-15 * i2_over_x_e(x).max(1e-300));
        }
        // far outside exp's range the scaled forms stay finite
        assert!(i0e(5.0e4_f64).is_finite() && i0e(5.0e4_f64) > 0.0);
    }

    #[test]
    fn i2_recurrence() {
        for x in [0.5_f64, 2.0, 8.0, 20.0, 40.0] {
            let via_recurrence = (i0(x) - 2.0 * i1(x) / x) / x;
            assert!(rel(i2_over_x(x), via_recurrence) < 1e-12);
        }
        assert_eq!(i2_over_x(0.0_f64), 0.0);
    }

    #[test]
    fn single_precision() {
        assert!((bessel_i0(2.0_f32).unwrap() - 2.279_585_3).abs() < 1e-6);
        assert!((bessel_i1(2.0_f32).unwrap() - 1.590_636_9).abs() < 1e-6);
    }
}
