//! Discrete residuals of the six axisymmetric governing equations.
//!
//! Derivatives are central differences on the cell centers. Terms with `1/r`
//! are grouped before differencing (`u/r` and `(P_thth - P_rr)/r` are treated
//! as sampled fields), which keeps the truncation error uniform up to the
//! axis. Fourth-order stencils are the default; second-order stencils leave
//! an `O(h^2)` truncation residual that is visible in thin boundary layers.

use super::GridSolution;
use crate::closedform::{residual_scale, ProblemSetup};
use crate::error::{Error, Result};
use crate::material::FullParams;
use crate::scalar::Real;

pub const EQUATION_NAMES: [&str; 6] = [
    "radial force balance",
    "shear force balance",
    "radial micro-balance",
    "shear micro-balance rth",
    "shear micro-balance thr",
    "hoop micro-balance",
];

const COARSE_WARNING_BELOW: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StencilOrder {
    Second,
    #[default]
    Fourth,
}

impl StencilOrder {
    fn reach(self) -> usize {
        match self {
            StencilOrder::Second => 1,
            StencilOrder::Fourth => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationNorm<T> {
    pub max: T,
    /// Root mean square over the evaluated cells.
    pub l2: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<T> {
    pub norms: [EquationNorm<T>; 6],
    pub points: usize,
    pub warning: Option<String>,
}

impl<T: Real> ResidualReport<T> {
    pub fn max_overall(&self) -> T {
        self.norms.iter().fold(T::zero(), |m, e| m.max(e.max))
    }
}

/// Per-equation residual norms, nondimensionalized by `mu_M U0/R` (force
/// balances multiplied by `R` first).
pub fn residuals<T: Real>(
    fields: &GridSolution<T>,
    params: &FullParams<T>,
    setup: &ProblemSetup<T>,
    order: StencilOrder,
) -> Result<ResidualReport<T>> {
    fields.check_lengths()?;
    let n = fields.grid.n_cells();
    let reach = order.reach();
    if n < 2 * reach + 1 {
        return Err(Error::Precondition(format!("{n} cells are too few for the stencil")));
    }
    let warning = (n < COARSE_WARNING_BELOW)
        .then(|| format!("grid of {n} cells is coarser than {COARSE_WARNING_BELOW}; residuals are truncation dominated"));

    let h = fields.grid.spacing();
    let r = fields.grid.centers();
    let (u, prr, ptt, prt, ptr) = (&fields.u_r, &fields.p_rr, &fields.p_thth, &fields.p_rth, &fields.p_thr);
    let uor: Vec<T> = u.iter().zip(r).map(|(a, b)| *a / *b).collect();
    let q: Vec<T> = (0..n).map(|i| (ptt[i] - prr[i]) / r[i]).collect();
    let s: Vec<T> = (0..n).map(|i| prt[i] + ptr[i]).collect();
    let d: Vec<T> = (0..n).map(|i| prt[i] - ptr[i]).collect();

    let lit = T::lit;
    let d1 = |f: &[T], i: usize| match order {
        StencilOrder::Second => (f[i + 1] - f[i - 1]) / (lit(2.0) * h),
        StencilOrder::Fourth => (f[i - 2] - lit(8.0) * f[i - 1] + lit(8.0) * f[i + 1] - f[i + 2]) / (lit(12.0) * h),
    };
    let d2 = |f: &[T], i: usize| match order {
        StencilOrder::Second => (f[i + 1] - lit(2.0) * f[i] + f[i - 1]) / (h * h),
        StencilOrder::Fourth => {
            (-f[i - 2] + lit(16.0) * f[i - 1] - lit(30.0) * f[i] + lit(16.0) * f[i + 1] - f[i + 2]) / (lit(12.0) * h * h)
        }
    };

    let (mu_e, lambda_e, mu_m, lambda_m, mu_c) =
        (params.mu_e(), params.lambda_e(), params.mu_micro(), params.lambda_micro(), params.mu_c());
    let k = params.mu_macro() * params.l_c() * params.l_c();
    let two = lit(2.0);
    let c = two * mu_e + lambda_e;
    let scale = residual_scale(params, setup);
    let rad = setup.radius;

    let mut max = [T::zero(); 6];
    let mut sq = [T::zero(); 6];
    let cells = reach..n - reach;
    let points = cells.len();
    for i in cells {
        let ri = r[i];
        let du = d1(u, i);
        let (dprr, dptt) = (d1(prr, i), d1(ptt, i));
        let m = dptt + q[i];
        let x = du - prr[i];
        let y = uor[i] - ptt[i];
        let z = prr[i] + ptt[i];
        let (ds, dd, dptr) = (d1(&s, i), d1(&d, i), d1(ptr, i));
        let si = s[i];
        let res = [
            (c * (d2(u, i) - dprr) + c * (d1(&uor, i) - dptt) + two * mu_e * m) * rad,
            (mu_e * (ds + two * si / ri) - mu_c * dd) * rad,
            c * x + lambda_e * y - two * mu_m * prr[i] - lambda_m * z + k / ri * m,
            (mu_e + mu_m) * si + mu_c * d[i] + k * (dptr / ri + si / (ri * ri)),
            (mu_e + mu_m) * si - mu_c * d[i] + k * (-d2(ptr, i) - ds / ri + si / (ri * ri)),
            c * y + lambda_e * x - two * mu_m * ptt[i] - lambda_m * z + k * (d2(ptt, i) + d1(&q, i)),
        ];
        for (e, v) in res.iter().enumerate() {
            let v = (*v / scale).abs();
            max[e] = max[e].max(v);
            sq[e] = sq[e] + v * v;
        }
    }
    let count = T::from_usize_lossy(points);
    let norms = std::array::from_fn(|e| EquationNorm {
        max: max[e],
        l2: (sq[e] / count).sqrt(),
    });
    Ok(ResidualReport { norms, points, warning })
}
