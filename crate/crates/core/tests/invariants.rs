use proptest::prelude::*;
use rmm_axisym::closedform::{ClosedForm, ProblemSetup};
use rmm_axisym::material::{FullParams, MacroMicroParams};
use rmm_axisym::oracle::solve_bvp;

fn moduli() -> impl Strategy<Value = MacroMicroParams<f64>> {
    (0.1..20.0f64, 0.5..20.0f64, 1.1..5.0f64, 1.1..5.0f64, -1.0..2.0f64).prop_map(|(lm, mm, bmu, bk, lr)| {
        let mu_micro = bmu * mm;
        MacroMicroParams::new(lm, mm, bk * (lm + mm) - mu_micro, mu_micro).with_l_c(10f64.powf(-lr))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_is_independent_of_load(mm in moduli(), u0 in 1e-4..1.0f64, r in 0.0..1.0f64) {
        let p = FullParams::new(mm).unwrap();
        let a = ClosedForm::new(p, ProblemSetup::unit(0.01).unwrap()).unwrap();
        let b = ClosedForm::new(p, ProblemSetup::unit(u0).unwrap()).unwrap();
        prop_assert!((a.delta(r).unwrap() - b.delta(r).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn radius_scaling(mm in moduli(), scale in 0.1..10.0f64, t in 0.0..1.0f64) {
        // the solution depends on r/R, L_c/R and U0/R only
        let p1 = FullParams::new(mm).unwrap();
        let p2 = FullParams::new(mm.with_l_c(mm.l_c * scale)).unwrap();
        let a = ClosedForm::new(p1, ProblemSetup::new(1.0, 0.01).unwrap()).unwrap();
        let b = ClosedForm::new(p2, ProblemSetup::new(scale, 0.01 * scale).unwrap()).unwrap();
        let (pa, pb) = (a.micro_distortion(t).unwrap(), b.micro_distortion(t * scale).unwrap());
        prop_assert!((pa.1 - pb.1).abs() < 1e-12);
        prop_assert!((a.u_r(t).unwrap() * scale - b.u_r(t * scale).unwrap()).abs() < 1e-12 * scale);
    }

    #[test]
    fn oracle_shear_vanishes(mm in moduli(), mu_c in 0.0..50.0f64) {
        let p = FullParams::new(mm.with_mu_c(mu_c)).unwrap();
        let s = solve_bvp(&p, &ProblemSetup::unit(0.01).unwrap(), 64).unwrap();
        prop_assert!(s.p_rth.iter().chain(&s.p_thr).all(|v| *v == 0.0));
    }
}
