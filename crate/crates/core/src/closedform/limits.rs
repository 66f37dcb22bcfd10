//! Dedicated formulas for the limiting cases of the closed form.
//!
//! All three cases share `u_r = U0 r/R`. For `L_c -> 0` the general solution
//! develops a boundary layer of width `1/sqrt(a)`, so the pointwise limit is
//! the interior state for `r < R` and the boundary-layer value at `r = R`.

use std::fmt;
use std::str::FromStr;

use super::{shape_coefficients, uniform_radii, ClosedForm, ProblemSetup};
use crate::error::{Error, Result};
use crate::material::FullParams;
use crate::scalar::Real;
use crate::specfun::{i0e, i1_over_x_e, i1e};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitCase {
    /// `lambda_e = lambda_m = 0`, any `L_c > 0`.
    ZeroPoisson,
    LcZero,
    LcInfinity,
}

impl LimitCase {
    pub fn name(self) -> &'static str {
        match self {
            LimitCase::ZeroPoisson => "zero_poisson",
            LimitCase::LcZero => "lc_zero",
            LimitCase::LcInfinity => "lc_infinity",
        }
    }
}

impl fmt::Display for LimitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LimitCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero_poisson" => Ok(LimitCase::ZeroPoisson),
            "lc_zero" => Ok(LimitCase::LcZero),
            "lc_infinity" => Ok(LimitCase::LcInfinity),
            other => Err(Error::Config(format!("unknown limit case `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitFields<T> {
    pub u_r: T,
    pub p_rr: T,
    pub p_thth: T,
}

fn check<T: Real>(setup: &ProblemSetup<T>, r: T) -> Result<()> {
    if !(r >= T::zero() && r <= setup.radius) {
        return Err(Error::Domain {
            func: "limit case",
            value: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Evaluates the limit-case formulas at `r`.
pub fn eval_limit<T: Real>(kind: LimitCase, params: &FullParams<T>, setup: &ProblemSetup<T>, r: T) -> Result<LimitFields<T>> {
    check(setup, r)?;
    let (rad, u0) = (setup.radius, setup.u0);
    let strain = u0 / rad;
    let u_r = strain * r;
    let sh = shape_coefficients(params);
    let two = T::lit(2.0);
    Ok(match kind {
        LimitCase::ZeroPoisson => zero_poisson(params, setup, r)?,
        LimitCase::LcInfinity => {
            let p_rr = (sh.k_ratio * sh.xi2 - sh.xi3) * two * strain / (sh.big_a * sh.xi2 - sh.big_b * sh.xi3) - strain;
            LimitFields { u_r, p_rr, p_thth: strain }
        }
        LimitCase::LcZero => {
            let z_interior = two * sh.k_ratio * strain / sh.big_a;
            if r < rad {
                let p_thth = strain * (T::one() - sh.xi3 / sh.big_a);
                LimitFields {
                    u_r,
                    p_rr: z_interior - p_thth,
                    p_thth,
                }
            } else {
                let p_rr = z_interior - strain * sh.xi3 / (sh.big_a * sh.xi1) - strain;
                LimitFields { u_r, p_rr, p_thth: strain }
            }
        }
    })
}

/// The limit formulas in their customary printed form: `P_thth = U0/R`
/// throughout for both classical limits, and the `L_c -> infinity` radial
/// component written with the factor `k_ratio (xi2 - xi3)`. Kept for
/// comparison reports; see [`eval_limit`] for the pointwise limits of the
/// general solution.
pub fn eval_printed_limit<T: Real>(
    kind: LimitCase,
    params: &FullParams<T>,
    setup: &ProblemSetup<T>,
    r: T,
) -> Result<LimitFields<T>> {
    check(setup, r)?;
    let strain = setup.u0 / setup.radius;
    let u_r = strain * r;
    let sh = shape_coefficients(params);
    let two = T::lit(2.0);
    Ok(match kind {
        LimitCase::ZeroPoisson => zero_poisson(params, setup, r)?,
        LimitCase::LcInfinity => LimitFields {
            u_r,
            p_rr: sh.k_ratio * (sh.xi2 - sh.xi3) * two * strain / (sh.big_a * sh.xi2 - sh.big_b * sh.xi3) - strain,
            p_thth: strain,
        },
        LimitCase::LcZero => LimitFields {
            u_r,
            p_rr: two * sh.k_ratio * strain / sh.big_a - strain,
            p_thth: strain,
        },
    })
}

/// Largest deviation of the solution from the limit formulas over `n`
/// equispaced radii, per field relative to the largest limit magnitude.
pub fn deviation_from_limit<T: Real>(kind: LimitCase, cf: &ClosedForm<T>, n: usize) -> Result<T> {
    deviation(cf, n, |r| eval_limit(kind, cf.params(), cf.setup(), r))
}

/// As [`deviation_from_limit`], against [`eval_printed_limit`].
pub fn deviation_from_printed_limit<T: Real>(kind: LimitCase, cf: &ClosedForm<T>, n: usize) -> Result<T> {
    deviation(cf, n, |r| eval_printed_limit(kind, cf.params(), cf.setup(), r))
}

fn deviation<T: Real>(cf: &ClosedForm<T>, n: usize, limit: impl Fn(T) -> Result<LimitFields<T>>) -> Result<T> {
    let mut diff = [T::zero(); 3];
    let mut scale = [T::zero(); 3];
    for r in uniform_radii(cf.setup().radius, n)? {
        let p = cf.profile(r)?;
        let l = limit(r)?;
        for (k, (got, want)) in [(p.u, l.u_r), (p.p_rr, l.p_rr), (p.p_thth, l.p_thth)].into_iter().enumerate() {
            diff[k] = diff[k].max((got - want).abs());
            scale[k] = scale[k].max(want.abs());
        }
    }
    Ok((0..3).fold(T::zero(), |m, k| {
        let e = if scale[k] > T::zero() { diff[k] / scale[k] } else { diff[k] };
        m.max(e)
    }))
}

fn zero_poisson<T: Real>(params: &FullParams<T>, setup: &ProblemSetup<T>, r: T) -> Result<LimitFields<T>> {
    let (mu_e, mu_m) = (params.mu_e(), params.mu_micro());
    let tol = T::lit(1e-12) * (mu_e + mu_m);
    if params.lambda_e().abs() > tol || params.lambda_micro().abs() > tol {
        return Err(Error::Precondition(format!(
            "zero-Poisson case needs lambda_e = lambda_m = 0 (got {}, {})",
            params.lambda_e(),
            params.lambda_micro()
        )));
    }
    let l_c = params.l_c();
    if !(l_c > T::zero()) {
        return Err(Error::Precondition("zero-Poisson case needs L_c > 0".into()));
    }
    let (kappa_e, kappa_m) = (params.kappa_e(), params.kappa_micro());
    let two = T::lit(2.0);
    let (rad, u0) = (setup.radius, setup.u0);
    let strain = u0 / rad;

    let sum = mu_e + mu_m;
    let a = two * sum * sum / (mu_e * mu_m * l_c * l_c);
    let xi3 = mu_m / sum;
    let s = a.sqrt();
    let (x, big_x) = (s * r, s * rad);
    let w = (x - big_x).exp() / i0e(big_x);
    // numerators and the common denominator divided by I0(X)
    let e0 = w * i0e(x);
    let g = w * i1_over_x_e(x);
    let den = big_x - i1e(big_x) / i0e(big_x);

    let p_thth = strain * (T::one() - xi3) + s * (e0 - g) / den * u0 * xi3;
    let ratio = two * kappa_e * mu_m * (mu_e + kappa_e) / (mu_e * kappa_e * (mu_m + kappa_m) + mu_m * kappa_m * (mu_e + kappa_e));
    let p_rr = strain * (ratio + xi3 * big_x * e0 / den) - p_thth;
    Ok(LimitFields {
        u_r: strain * r,
        p_rr,
        p_thth,
    })
}
