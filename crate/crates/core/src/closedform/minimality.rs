//! Randomized check that the closed form minimizes the stored energy among
//! admissible fields.
//!
//! Perturbations are short sine series. `u_r`, `P_thth` and `P_rth` use
//! `sin(k pi r/R)` and so vanish at `r = R`, where they are prescribed;
//! `P_rr` and `P_thr` use `sin((2k - 1) pi r/(2R))`, free at `r = R`. All
//! modes vanish on the axis. Since the energy is quadratic and the solution is
//! stationary, `I(s + e v) - I(s)` should equal `I(e v)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{total_energy, uniform_radii, AxisymFields, ClosedForm};
use crate::error::Result;
use crate::scalar::Real;

pub const MODES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimalityTrial<T> {
    pub energy_solution: T,
    pub energy_perturbed: T,
    /// `I(s + e v) - I(s)`
    pub margin: T,
    /// `I(e v)`
    pub perturbation_energy: T,
}

impl<T: Real> MinimalityTrial<T> {
    /// Strictly positive margin of at least the perturbation energy, up to
    /// a relative slack of `1e-6`.
    pub fn passed(&self) -> bool {
        self.margin > T::zero() && self.margin >= (T::one() - T::lit(1e-6)) * self.perturbation_energy
    }
}

/// Random admissible perturbation with every field bounded by `amplitude`
/// (times `R` for the displacement).
pub fn random_perturbation<T: Real>(radius: T, n_nodes: usize, amplitude: T, rng: &mut impl Rng) -> Result<AxisymFields<T>> {
    let mut f = AxisymFields::zeros(uniform_radii(radius, n_nodes)?);
    let pi = T::PI();
    let mut series = |clamped: bool, scale: T| -> Vec<(T, T)> {
        let coeffs: Vec<f64> = (0..MODES).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = coeffs.iter().map(|c| c.abs()).sum::<f64>().max(f64::MIN_POSITIVE);
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let wave = if clamped {
                    T::from_usize_lossy(k + 1) * pi / radius
                } else {
                    T::from_usize_lossy(2 * k + 1) * pi / (T::lit(2.0) * radius)
                };
                (T::lit(c / norm) * scale, wave)
            })
            .collect()
    };
    let modes_u = series(true, amplitude * radius);
    let modes_prr = series(false, amplitude);
    let modes_ptt = series(true, amplitude);
    let modes_prt = series(true, amplitude);
    let modes_ptr = series(false, amplitude);
    let eval = |modes: &[(T, T)], r: T| {
        modes.iter().fold((T::zero(), T::zero()), |(v, d), &(c, k)| {
            (v + c * (k * r).sin(), d + c * k * (k * r).cos())
        })
    };
    for i in 0..f.len() {
        let r = f.r[i];
        (f.u[i], f.du[i]) = eval(&modes_u, r);
        f.p_rr[i] = eval(&modes_prr, r).0;
        (f.p_thth[i], f.dp_thth[i]) = eval(&modes_ptt, r);
        f.p_rth[i] = eval(&modes_prt, r).0;
        (f.p_thr[i], f.dp_thr[i]) = eval(&modes_ptr, r);
    }
    Ok(f)
}

/// Runs `trials` seeded perturbation trials on `n_nodes` quadrature nodes.
pub fn minimality_trials<T: Real>(
    cf: &ClosedForm<T>,
    trials: usize,
    amplitude: T,
    seed: u64,
    n_nodes: usize,
) -> Result<Vec<MinimalityTrial<T>>> {
    let params = cf.params();
    let setup = cf.setup();
    let base = cf.axisym_fields(n_nodes)?;
    let energy_solution = total_energy(params, setup, &base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let v = random_perturbation(setup.radius, n_nodes, amplitude, &mut rng)?;
            let perturbed = base.add_scaled(T::one(), &v)?;
            let energy_perturbed = total_energy(params, setup, &perturbed)?;
            Ok(MinimalityTrial {
                energy_solution,
                energy_perturbed,
                margin: energy_perturbed - energy_solution,
                perturbation_energy: total_energy(params, setup, &v)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::ProblemSetup;
    use crate::material::{FullParams, Preset};

    #[test]
    fn perturbations_respect_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = random_perturbation(1.0_f64, 65, 1e-3, &mut rng).unwrap();
        let last = v.len() - 1;
        for col in [&v.u, &v.p_thth, &v.p_rth] {
            assert!(col[last].abs() < 1e-18);
        }
        for col in [&v.u, &v.p_rr, &v.p_thth, &v.p_rth, &v.p_thr] {
            assert_eq!(col[0], 0.0);
            assert!(col.iter().all(|x| x.abs() <= 1e-3 + 1e-18));
        }
    }

    #[test]
    fn solution_is_energy_minimizer() {
        for preset in Preset::ALL {
            let p = FullParams::new(preset.params(0.5).with_mu_c(1.0)).unwrap();
            let cf = ClosedForm::new(p, ProblemSetup::unit(0.01).unwrap()).unwrap();
            for t in minimality_trials(&cf, 5, 1e-3, 11, 1025).unwrap() {
                assert!(t.passed(), "{preset}: {t:?}");
            }
        }
    }

    #[test]
    fn same_seed_same_trials() {
        let p = FullParams::new(Preset::Set3.params(0.5)).unwrap();
        let cf = ClosedForm::new(p, ProblemSetup::unit(0.01).unwrap()).unwrap();
        let a = minimality_trials(&cf, 3, 1e-3, 5, 257).unwrap();
        let b = minimality_trials(&cf, 3, 1e-3, 5, 257).unwrap();
        assert_eq!(a, b);
    }
}
