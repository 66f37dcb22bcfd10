//! A micro row exactly proportional to the macro row (lambda_m = 1.75
//! lambda_M, mu_m = 1.75 mu_M) satisfies lambda_e mu_m = lambda_m mu_e and
//! reproduces the classical solution. The rounded set-1 row is close to this
//! ratio but not exactly on it.

mod common;

use common::rel;
use rmm_axisym::closedform::{shape_coefficients, ClosedForm, ProblemSetup};
use rmm_axisym::material::{FullParams, MacroMicroParams, Preset};

fn proportional(l_c: f64) -> FullParams<f64> {
    let [lambda_macro, mu_macro, _, _] = Preset::Set1.row();
    FullParams::new(MacroMicroParams::new(lambda_macro, mu_macro, 1.75 * lambda_macro, 1.75 * mu_macro).with_l_c(l_c))
        .unwrap()
}

#[test]
fn proportional_row_meets_classical_bounds() {
    for ratio in [0.5, 2.0, 10.0] {
        let p = proportional(1.0 / ratio);
        assert!(shape_coefficients(&p).big_b.abs() < 1e-9);
        let cf = ClosedForm::new(p, ProblemSetup::unit(0.01).unwrap()).unwrap();
        for i in 0..200 {
            let r = i as f64 / 199.0;
            assert!((cf.u_r(r).unwrap() - 0.01 * r).abs() / 0.01 < 1e-10, "R/L_c = {ratio}, r = {r}");
        }
    }
}

#[test]
fn proportional_row_satisfies_moduli_relation() {
    let p = proportional(1.0);
    assert!(rel(p.lambda_micro() * p.mu_e(), p.lambda_e() * p.mu_micro()) < 1e-9);
}

#[test]
fn printed_set1_is_near_but_off_the_proportional_ratio() {
    let [lambda_macro, mu_macro, lambda_micro, mu_micro] = Preset::Set1.row();
    let (a, b) = (lambda_micro / lambda_macro, mu_micro / mu_macro);
    assert!((a - 1.75).abs() < 2e-3 && (b - 1.75).abs() < 2e-3);
    assert!(a != b);
}
