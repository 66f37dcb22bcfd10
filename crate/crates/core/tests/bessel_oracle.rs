mod common;

use common::{bessel_series, log_spaced, rel};
use rmm_axisym::{bessel_i0, bessel_i1, bessel_i1_over_x};

#[test]
fn oracle_reproduces_reference_values() {
    assert!(rel(bessel_series(0, 2.0), 2.2795853023360673) <= f64::EPSILON);
    assert!(rel(bessel_series(1, 1.0), 0.5651591039924851) <= f64::EPSILON);
}

#[test]
fn fast_evaluation_matches_extended_precision_series() {
    let mut worst = (0.0_f64, 0.0_f64);
    for x in log_spaced(1e-6, 50.0, 1000) {
        let e0 = rel(bessel_i0(x).unwrap(), bessel_series(0, x));
        let e1 = rel(bessel_i1(x).unwrap(), bessel_series(1, x));
        let e2 = rel(bessel_i1_over_x(x).unwrap(), bessel_series(1, x) / x);
        let e = e0.max(e1).max(e2);
        if e > worst.0 {
            worst = (e, x);
        }
    }
    assert!(worst.0 < 1e-13, "worst relative error {:.3e} at x = {}", worst.0, worst.1);
}

#[test]
fn single_precision_tracks_double() {
    for x in log_spaced(1e-3, 30.0, 200) {
        let single = f64::from(bessel_i0(x as f32).unwrap());
        assert!(rel(single, bessel_i0(f64::from(x as f32)).unwrap()) < 1e-6, "{x}");
    }
}

#[test]
fn domain_errors() {
    for x in [-1.0, f64::NAN, f64::INFINITY] {
        assert!(bessel_i0(x).is_err());
        assert!(bessel_i1(x).is_err());
        assert!(bessel_i1_over_x(x).is_err());
    }
}
