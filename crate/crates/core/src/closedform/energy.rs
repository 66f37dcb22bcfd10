//! Stored energy of axisymmetric fields.
//!
//! For `u = u_r(r) e_r` and a micro-distortion with components
//! `P_rr, P_thth, P_rth, P_thr` depending on `r` only, the energy density per
//! unit volume reduces to
//!
//! ```text
//! W = mu_e (X^2 + Y^2 + S^2/2) + lambda_e/2 (X + Y)^2 + mu_c D^2/2
//!   + mu_m (P_rr^2 + P_thth^2 + S^2/2) + lambda_m/2 (P_rr + P_thth)^2
//!   + mu_M L_c^2/2 (c_r^2 + c_th^2)
//! ```
//!
//! with `X = u' - P_rr`, `Y = u/r - P_thth`, `S = P_rth + P_thr`,
//! `D = P_rth - P_thr`, and the two curl components
//! `c_r = P_thr' + S/r`, `c_th = P_thth' + (P_thth - P_rr)/r`.
//! The energy per unit thickness is `2 pi int_0^R W r dr`.

use super::ProblemSetup;
use crate::error::{Error, Result};
use crate::material::FullParams;
use crate::scalar::Real;

/// Strain-like quantities at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Kinematics<T> {
    /// `u' - P_rr`
    pub strain_rr: T,
    /// `u/r - P_thth`
    pub strain_thth: T,
    pub p_rr: T,
    pub p_thth: T,
    /// `P_rth + P_thr`
    pub shear_sum: T,
    /// `P_rth - P_thr`
    pub shear_diff: T,
    pub curl_r: T,
    pub curl_theta: T,
}

pub fn energy_density<T: Real>(p: &FullParams<T>, k: &Kinematics<T>) -> T {
    let half = T::lit(0.5);
    let (x, y, s, d) = (k.strain_rr, k.strain_thth, k.shear_sum, k.shear_diff);
    let tr_e = x + y;
    let tr_p = k.p_rr + k.p_thth;
    let curvature = p.mu_macro() * p.l_c() * p.l_c();
    p.mu_e() * (x * x + y * y + half * s * s)
        + half * p.lambda_e() * tr_e * tr_e
        + half * p.mu_c() * d * d
        + p.mu_micro() * (k.p_rr * k.p_rr + k.p_thth * k.p_thth + half * s * s)
        + half * p.lambda_micro() * tr_p * tr_p
        + half * curvature * (k.curl_r * k.curl_r + k.curl_theta * k.curl_theta)
}

/// Nodal values and first derivatives on uniform nodes spanning `[0, R]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisymFields<T> {
    pub r: Vec<T>,
    pub u: Vec<T>,
    pub du: Vec<T>,
    pub p_rr: Vec<T>,
    pub p_thth: Vec<T>,
    pub p_rth: Vec<T>,
    pub p_thr: Vec<T>,
    pub dp_thth: Vec<T>,
    pub dp_thr: Vec<T>,
}

impl<T: Real> AxisymFields<T> {
    pub fn zeros(r: Vec<T>) -> Self {
        let z = vec![T::zero(); r.len()];
        Self {
            u: z.clone(),
            du: z.clone(),
            p_rr: z.clone(),
            p_thth: z.clone(),
            p_rth: z.clone(),
            p_thr: z.clone(),
            dp_thth: z.clone(),
            dp_thr: z,
            r,
        }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    fn columns(&self) -> [(&'static str, &Vec<T>); 8] {
        [
            ("u", &self.u),
            ("du", &self.du),
            ("p_rr", &self.p_rr),
            ("p_thth", &self.p_thth),
            ("p_rth", &self.p_rth),
            ("p_thr", &self.p_thr),
            ("dp_thth", &self.dp_thth),
            ("dp_thr", &self.dp_thr),
        ]
    }

    fn columns_mut(&mut self) -> [&mut Vec<T>; 8] {
        [
            &mut self.u,
            &mut self.du,
            &mut self.p_rr,
            &mut self.p_thth,
            &mut self.p_rth,
            &mut self.p_thr,
            &mut self.dp_thth,
            &mut self.dp_thr,
        ]
    }

    pub fn check_lengths(&self) -> Result<()> {
        let n = self.r.len();
        for (field, col) in self.columns() {
            if col.len() != n {
                return Err(Error::GridLength {
                    field,
                    expected: n,
                    found: col.len(),
                });
            }
        }
        Ok(())
    }

    /// `self + eps * other`, node by node.
    pub fn add_scaled(&self, eps: T, other: &Self) -> Result<Self> {
        self.check_lengths()?;
        other.check_lengths()?;
        if other.len() != self.len() {
            return Err(Error::GridLength {
                field: "r",
                expected: self.len(),
                found: other.len(),
            });
        }
        let mut out = self.clone();
        let src = other.columns();
        for (dst, (_, col)) in out.columns_mut().into_iter().zip(src) {
            for (d, s) in dst.iter_mut().zip(col) {
                *d = *d + eps * *s;
            }
        }
        Ok(out)
    }

    /// Kinematics at node `i`, which must have `r > 0`.
    pub fn kinematics(&self, i: usize) -> Kinematics<T> {
        let r = self.r[i];
        let s = self.p_rth[i] + self.p_thr[i];
        Kinematics {
            strain_rr: self.du[i] - self.p_rr[i],
            strain_thth: self.u[i] / r - self.p_thth[i],
            p_rr: self.p_rr[i],
            p_thth: self.p_thth[i],
            shear_sum: s,
            shear_diff: self.p_rth[i] - self.p_thr[i],
            curl_r: self.dp_thr[i] + s / r,
            curl_theta: self.dp_thth[i] + (self.p_thth[i] - self.p_rr[i]) / r,
        }
    }
}

/// `2 pi int_0^R W r dr` by composite Simpson on the fields' nodes.
///
/// Nodes must be uniform, start at `r = 0`, end at `r = R`, and be odd in
/// number. The integrand `W r` vanishes at the axis.
pub fn total_energy<T: Real>(params: &FullParams<T>, setup: &ProblemSetup<T>, fields: &AxisymFields<T>) -> Result<T> {
    fields.check_lengths()?;
    let n = fields.len();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("Simpson quadrature needs an odd node count >= 3, got {n}")));
    }
    let h = setup.radius / T::from_usize_lossy(n - 1);
    let tol = T::lit(1e-9) * setup.radius;
    for (i, &r) in fields.r.iter().enumerate() {
        if (r - h * T::from_usize_lossy(i)).abs() > tol {
            return Err(Error::Precondition(format!("node {i} is not on the uniform grid over [0, R]")));
        }
    }
    let integrand = |i: usize| {
        if fields.r[i] == T::zero() {
            T::zero()
        } else {
            fields.r[i] * energy_density(params, &fields.kinematics(i))
        }
    };
    let (two, four) = (T::lit(2.0), T::lit(4.0));
    let mut sum = integrand(0) + integrand(n - 1);
    for i in 1..n - 1 {
        sum = sum + if i % 2 == 1 { four } else { two } * integrand(i);
    }
    Ok(two * T::PI() * sum * h / T::lit(3.0))
}
