//! Closed-form solution of the axisymmetric extension problem.
//!
//! A solid cylinder of radius `R` is loaded by `u_r(R) = U0` together with the
//! consistent coupling condition `P_thth(R) = U0/R` and `P_rth(R) = 0`.
//! Bounded solutions are
//!
//! ```text
//! u_r   = C1 A r/2 + D1 B I1(x)/sqrt(a)                   x = sqrt(a) r
//! Z     = b/a + D1 I0(x)                                   Z = P_rr + P_thth
//! P_th  = C1 (A - xi3)/2 - D1 xi1 I0(x) + D1 (B + 2 xi1 - xi2) I1(x)/x
//! ```
//!
//! and the shear components of `P` vanish identically. Bessel terms are
//! evaluated as ratios `I_n(x)/I0(sqrt(a) R)` through exponentially scaled
//! functions, so that `R/L_c` can be made very large without overflow.

mod energy;
mod limits;
mod minimality;

pub use energy::{energy_density, total_energy, AxisymFields, Kinematics};
pub use limits::{deviation_from_limit, deviation_from_printed_limit, eval_limit, eval_printed_limit, LimitCase, LimitFields};
pub use minimality::{minimality_trials, random_perturbation, MinimalityTrial};

use crate::error::{Error, Result};
use crate::material::FullParams;
use crate::scalar::Real;
use crate::specfun::{i0, i0e, i1_over_x_e, i1e, i2_over_x_e};

/// Cylinder radius and prescribed boundary displacement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSetup<T> {
    pub radius: T,
    pub u0: T,
}

impl<T: Real> ProblemSetup<T> {
    pub fn new(radius: T, u0: T) -> Result<Self> {
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(Error::Precondition(format!("radius must be positive and finite, got {radius}")));
        }
        if !u0.is_finite() {
            return Err(Error::Precondition("boundary displacement must be finite".into()));
        }
        Ok(Self { radius, u0 })
    }

    /// Unit radius with `U0 = u0_over_r`.
    pub fn unit(u0_over_r: T) -> Result<Self> {
        Self::new(T::one(), u0_over_r)
    }
}

/// Coefficients that depend on the moduli only (not on `L_c`, `R`, `U0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeCoefficients<T> {
    /// `a * L_c^2`.
    pub a_lc2: T,
    pub big_a: T,
    pub big_b: T,
    pub xi1: T,
    pub xi2: T,
    pub xi3: T,
    /// `kappa_e mu_m (kappa_e + mu_e) / den`, so that `b/a = C1 k_ratio` and `A = xi3 + k_ratio`.
    pub k_ratio: T,
}

pub fn shape_coefficients<T: Real>(p: &FullParams<T>) -> ShapeCoefficients<T> {
    let (mu_e, kappa_e, lambda_e) = (p.mu_e(), p.kappa_e(), p.lambda_e());
    let (mu_m, kappa_m, lambda_m) = (p.mu_micro(), p.kappa_micro(), p.lambda_micro());
    let four = T::lit(4.0);
    let two = T::lit(2.0);
    let den = kappa_e * mu_e * (kappa_m + mu_m) + kappa_m * mu_m * (kappa_e + mu_e);
    let skew = mu_m * lambda_e - mu_e * lambda_m;
    ShapeCoefficients {
        a_lc2: four / p.mu_macro() * (mu_e * kappa_e / (kappa_e + mu_e) + mu_m * kappa_m / (kappa_m + mu_m)),
        big_a: T::one() + skew * kappa_e / den,
        big_b: skew / (mu_m * (mu_e + kappa_e)),
        xi1: -(kappa_m + mu_m) / (two * mu_m),
        xi2: -mu_e * (kappa_m + mu_m) / (mu_m * (kappa_e + mu_e)),
        xi3: kappa_m * mu_m * (kappa_e + mu_e) / den,
        k_ratio: kappa_e * mu_m * (kappa_e + mu_e) / den,
    }
}

/// The scalars that fully determine the closed-form fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionCoefficients<T> {
    pub a: T,
    pub b: T,
    pub big_a: T,
    pub big_b: T,
    pub xi1: T,
    pub xi2: T,
    pub xi3: T,
    pub c1: T,
    /// May underflow to zero for very large `sqrt(a) R`; see `d1_i0`.
    pub d1: T,
    /// `D1 I0(sqrt(a) R)`.
    pub d1_i0: T,
    pub sqrt_a: T,
    pub k_ratio: T,
}

/// Solves the two boundary equations for `C1`, `D1`, then forms `b`.
pub fn compute_coefficients<T: Real>(params: &FullParams<T>, setup: &ProblemSetup<T>) -> Result<SolutionCoefficients<T>> {
    params.validate().into_result()?;
    let l_c = params.l_c();
    if !(l_c > T::zero()) {
        return Err(Error::Precondition(format!("coefficients need L_c > 0, got {l_c}")));
    }
    let sh = shape_coefficients(params);
    let two = T::lit(2.0);
    let a = sh.a_lc2 / (l_c * l_c);
    let sqrt_a = a.sqrt();
    let big_x = sqrt_a * setup.radius;
    let rho = i1e(big_x) / i0e(big_x);
    // G and the determinant, both divided by I0(X)
    let g_n = rho * (two * sh.xi1 - sh.xi2) - sh.xi1 * big_x;
    let den_n = sh.big_a * g_n + sh.big_b * sh.xi3 * rho;
    if den_n == T::zero() || !den_n.is_finite() || !a.is_finite() {
        return Err(Error::Degenerate(format!(
            "boundary system has no unique solution (determinant {den_n})"
        )));
    }
    let c1 = two * setup.u0 / setup.radius * g_n / den_n;
    let d1_i0 = setup.u0 * sh.xi3 * sqrt_a / den_n;
    let b = T::lit(4.0) / (params.mu_macro() * l_c * l_c) * c1 * params.kappa_e() * params.mu_micro()
        / (params.kappa_micro() + params.mu_micro());
    Ok(SolutionCoefficients {
        a,
        b,
        big_a: sh.big_a,
        big_b: sh.big_b,
        xi1: sh.xi1,
        xi2: sh.xi2,
        xi3: sh.xi3,
        c1,
        d1: d1_i0 / i0(big_x),
        d1_i0,
        sqrt_a,
        k_ratio: sh.k_ratio,
    })
}

/// Stresses and the couple-stress component at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stress<T> {
    pub sigma_rr: T,
    pub sigma_thth: T,
    pub sigma_micro_rr: T,
    pub sigma_micro_thth: T,
    pub m_zth: T,
}

/// All field values at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub r: T,
    pub u_r: T,
    pub p_rr: T,
    pub p_thth: T,
    pub p_rth: T,
    pub p_thr: T,
    pub z: T,
    pub sigma_rr: T,
    pub sigma_thth: T,
    pub sigma_micro_rr: T,
    pub sigma_micro_thth: T,
    pub m_zth: T,
    pub energy_density: T,
    pub delta: T,
}

/// Values and radial derivatives of the closed-form fields at one radius,
/// with every `1/r` already resolved into regular expressions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Profile<T> {
    pub u: T,
    pub du: T,
    pub d2u: T,
    pub u_over_r: T,
    pub d_u_over_r: T,
    pub p_rr: T,
    pub p_thth: T,
    pub z: T,
    pub dp_rr: T,
    pub dp_thth: T,
    /// `(P_thth - P_rr)/r`
    pub q: T,
    /// `dP_thth/dr + (P_thth - P_rr)/r`, the only nonzero curl component.
    pub m: T,
    pub m_over_r: T,
    pub dm: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Branch<T> {
    General(SolutionCoefficients<T>),
    VanishingLength,
}

/// Closed-form solution for fixed parameters and loading.
///
/// `L_c == 0` is dispatched to the vanishing-length limit; every `L_c > 0`,
/// however small, goes through the general solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm<T> {
    params: FullParams<T>,
    setup: ProblemSetup<T>,
    shape: ShapeCoefficients<T>,
    branch: Branch<T>,
}

impl<T: Real> ClosedForm<T> {
    pub fn new(params: FullParams<T>, setup: ProblemSetup<T>) -> Result<Self> {
        params.validate().into_result()?;
        let branch = if params.l_c() == T::zero() {
            Branch::VanishingLength
        } else {
            Branch::General(compute_coefficients(&params, &setup)?)
        };
        Ok(Self {
            params,
            setup,
            shape: shape_coefficients(&params),
            branch,
        })
    }

    pub fn params(&self) -> &FullParams<T> {
        &self.params
    }

    pub fn setup(&self) -> &ProblemSetup<T> {
        &self.setup
    }

    pub fn shape(&self) -> &ShapeCoefficients<T> {
        &self.shape
    }

    /// `None` on the vanishing-length branch.
    pub fn coefficients(&self) -> Option<&SolutionCoefficients<T>> {
        match &self.branch {
            Branch::General(c) => Some(c),
            Branch::VanishingLength => None,
        }
    }

    fn check_radius(&self, r: T) -> Result<()> {
        if !(r >= T::zero() && r <= self.setup.radius) {
            return Err(Error::Domain {
                func: "closed form",
                value: r.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn profile(&self, r: T) -> Result<Profile<T>> {
        self.check_radius(r)?;
        Ok(match &self.branch {
            Branch::General(c) => general_profile(c, &self.setup, r),
            Branch::VanishingLength => {
                let lim = eval_limit(LimitCase::LcZero, &self.params, &self.setup, r)?;
                let slope = self.setup.u0 / self.setup.radius;
                let zero = T::zero();
                Profile {
                    u: lim.u_r,
                    du: slope,
                    u_over_r: slope,
                    p_rr: lim.p_rr,
                    p_thth: lim.p_thth,
                    z: lim.p_rr + lim.p_thth,
                    q: if r > zero { (lim.p_thth - lim.p_rr) / r } else { zero },
                    ..Profile::default()
                }
            }
        })
    }

    pub fn u_r(&self, r: T) -> Result<T> {
        self.profile(r).map(|p| p.u)
    }

    /// `(P_rr, P_thth, Z)` at `r`.
    pub fn micro_distortion(&self, r: T) -> Result<(T, T, T)> {
        self.profile(r).map(|p| (p.p_rr, p.p_thth, p.z))
    }

    /// Kinematic quantities entering the energy density.
    pub fn kinematics(&self, r: T) -> Result<Kinematics<T>> {
        Ok(profile_kinematics(&self.profile(r)?))
    }

    pub fn stress(&self, r: T) -> Result<Stress<T>> {
        Ok(eval_stress_profile(&self.profile(r)?, &self.params))
    }

    /// `(u_r - U0 r/R) / U0`; zero when `U0 = 0`.
    pub fn delta(&self, r: T) -> Result<T> {
        let u = self.u_r(r)?;
        if self.setup.u0 == T::zero() {
            return Ok(T::zero());
        }
        Ok((u - self.setup.u0 * r / self.setup.radius) / self.setup.u0)
    }

    pub fn sample(&self, r: T) -> Result<FieldSample<T>> {
        let p = self.profile(r)?;
        let s = eval_stress_profile(&p, &self.params);
        let w = energy_density(&self.params, &profile_kinematics(&p));
        let delta = if self.setup.u0 == T::zero() {
            T::zero()
        } else {
            (p.u - self.setup.u0 * r / self.setup.radius) / self.setup.u0
        };
        Ok(FieldSample {
            r,
            u_r: p.u,
            p_rr: p.p_rr,
            p_thth: p.p_thth,
            p_rth: T::zero(),
            p_thr: T::zero(),
            z: p.z,
            sigma_rr: s.sigma_rr,
            sigma_thth: s.sigma_thth,
            sigma_micro_rr: s.sigma_micro_rr,
            sigma_micro_thth: s.sigma_micro_thth,
            m_zth: s.m_zth,
            energy_density: w,
            delta,
        })
    }

    /// Samples at `n >= 2` equispaced radii from `0` to `R` inclusive.
    pub fn sample_uniform(&self, n: usize) -> Result<Vec<FieldSample<T>>> {
        uniform_radii(self.setup.radius, n)?
            .into_iter()
            .map(|r| self.sample(r))
            .collect()
    }

    /// Residuals of the six governing equations at `r`, nondimensionalized by
    /// `mu_M U0/R` (the two force-balance type equations are multiplied by `R`
    /// first). The shear equations vanish identically.
    pub fn ode_residuals(&self, r: T) -> Result<[T; 6]> {
        let p = self.profile(r)?;
        let pm = &self.params;
        let (mu_e, lambda_e, mu_m, lambda_m) = (pm.mu_e(), pm.lambda_e(), pm.mu_micro(), pm.lambda_micro());
        let k = pm.mu_macro() * pm.l_c() * pm.l_c();
        let c = T::lit(2.0) * mu_e + lambda_e;
        let two = T::lit(2.0);
        let x = p.du - p.p_rr;
        let y = p.u_over_r - p.p_thth;
        let e1 = c * (p.d2u - p.dp_rr) + c * (p.d_u_over_r - p.dp_thth) + two * mu_e * p.m;
        let e3 = c * x + lambda_e * y - two * mu_m * p.p_rr - lambda_m * p.z + k * p.m_over_r;
        let e6 = c * y + lambda_e * x - two * mu_m * p.p_thth - lambda_m * p.z + k * p.dm;
        let scale = residual_scale(pm, &self.setup);
        let rad = self.setup.radius;
        let zero = T::zero();
        Ok([e1 * rad / scale, zero, e3 / scale, zero, zero, e6 / scale])
    }

    /// Fields on `n_nodes` equispaced nodes over `[0, R]` with analytic derivatives.
    pub fn axisym_fields(&self, n_nodes: usize) -> Result<AxisymFields<T>> {
        let radii = uniform_radii(self.setup.radius, n_nodes)?;
        let mut f = AxisymFields::zeros(radii);
        for i in 0..f.r.len() {
            let p = self.profile(f.r[i])?;
            f.u[i] = p.u;
            f.du[i] = p.du;
            f.p_rr[i] = p.p_rr;
            f.p_thth[i] = p.p_thth;
            f.dp_thth[i] = p.dp_thth;
        }
        Ok(f)
    }

    pub fn total_energy(&self, n_nodes: usize) -> Result<T> {
        total_energy(&self.params, &self.setup, &self.axisym_fields(n_nodes)?)
    }
}

/// `mu_M U0 / R`, or `mu_M` when there is no load.
pub(crate) fn residual_scale<T: Real>(p: &FullParams<T>, setup: &ProblemSetup<T>) -> T {
    if setup.u0 == T::zero() {
        p.mu_macro()
    } else {
        p.mu_macro() * (setup.u0 / setup.radius).abs()
    }
}

pub(crate) fn uniform_radii<T: Real>(radius: T, n: usize) -> Result<Vec<T>> {
    if n < 2 {
        return Err(Error::Precondition(format!("need at least 2 sample radii, got {n}")));
    }
    let last = T::from_usize_lossy(n - 1);
    Ok((0..n)
        .map(|i| if i + 1 == n { radius } else { radius * T::from_usize_lossy(i) / last })
        .collect())
}

fn general_profile<T: Real>(c: &SolutionCoefficients<T>, setup: &ProblemSetup<T>, r: T) -> Profile<T> {
    let s = c.sqrt_a;
    let x = s * r;
    let big_x = s * setup.radius;
    let w = (x - big_x).exp() / i0e(big_x);
    // I_n(x)/I0(X) style ratios
    let e0 = w * i0e(x);
    let e1 = w * i1e(x);
    let g = w * i1_over_x_e(x);
    let q2 = w * i2_over_x_e(x);

    let d = c.d1_i0;
    let two = T::lit(2.0);
    let xi_g = c.big_b + two * c.xi1 - c.xi2;
    let half_c1a = c.c1 * c.big_a / two;

    let u_over_r = half_c1a + d * c.big_b * g;
    let z = c.b / c.a + d * e0;
    let p_thth = c.c1 * (c.big_a - c.xi3) / two - d * c.xi1 * e0 + d * xi_g * g;
    let dp_thth = s * d * (-c.xi1 * e1 + xi_g * q2);
    let dz = s * d * e1;
    let q = -s * d * xi_g * q2;
    let m = dp_thth + q;
    Profile {
        u: r * u_over_r,
        du: half_c1a + d * c.big_b * (e0 - g),
        d2u: s * d * c.big_b * (e1 - q2),
        u_over_r,
        d_u_over_r: s * d * c.big_b * q2,
        p_rr: z - p_thth,
        p_thth,
        z,
        dp_rr: dz - dp_thth,
        dp_thth,
        q,
        m,
        m_over_r: -s * s * d * c.xi1 * g,
        dm: -s * s * d * c.xi1 * (e0 - g),
    }
}

fn profile_kinematics<T: Real>(p: &Profile<T>) -> Kinematics<T> {
    Kinematics {
        strain_rr: p.du - p.p_rr,
        strain_thth: p.u_over_r - p.p_thth,
        p_rr: p.p_rr,
        p_thth: p.p_thth,
        shear_sum: T::zero(),
        shear_diff: T::zero(),
        curl_r: T::zero(),
        curl_theta: p.m,
    }
}

fn eval_stress_profile<T: Real>(p: &Profile<T>, params: &FullParams<T>) -> Stress<T> {
    let two = T::lit(2.0);
    let (mu_e, lambda_e, mu_m, lambda_m) = (params.mu_e(), params.lambda_e(), params.mu_micro(), params.lambda_micro());
    let x = p.du - p.p_rr;
    let y = p.u_over_r - p.p_thth;
    let k = params.mu_macro() * params.l_c() * params.l_c();
    Stress {
        sigma_rr: two * mu_e * x + lambda_e * (x + y),
        sigma_thth: two * mu_e * y + lambda_e * (x + y),
        sigma_micro_rr: two * mu_m * p.p_rr + lambda_m * p.z,
        sigma_micro_thth: two * mu_m * p.p_thth + lambda_m * p.z,
        m_zth: k * p.m,
    }
}

pub fn eval_u_r<T: Real>(coeffs: &SolutionCoefficients<T>, setup: &ProblemSetup<T>, r: T) -> Result<T> {
    checked_profile(coeffs, setup, r).map(|p| p.u)
}

/// `(P_rr, P_thth, Z)` from precomputed coefficients.
#[allow(non_snake_case)]
pub fn eval_P<T: Real>(coeffs: &SolutionCoefficients<T>, setup: &ProblemSetup<T>, r: T) -> Result<(T, T, T)> {
    checked_profile(coeffs, setup, r).map(|p| (p.p_rr, p.p_thth, p.z))
}

pub fn eval_stress<T: Real>(
    coeffs: &SolutionCoefficients<T>,
    params: &FullParams<T>,
    setup: &ProblemSetup<T>,
    r: T,
) -> Result<Stress<T>> {
    checked_profile(coeffs, setup, r).map(|p| eval_stress_profile(&p, params))
}

pub fn delta_metric<T: Real>(params: &FullParams<T>, setup: &ProblemSetup<T>, r: T) -> Result<T> {
    ClosedForm::new(*params, *setup)?.delta(r)
}

fn checked_profile<T: Real>(c: &SolutionCoefficients<T>, setup: &ProblemSetup<T>, r: T) -> Result<Profile<T>> {
    if !(r >= T::zero() && r <= setup.radius) {
        return Err(Error::Domain {
            func: "closed form",
            value: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(general_profile(c, setup, r))
}
