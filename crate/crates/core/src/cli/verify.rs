//! Checks behind `verify`. Every check reports what it measured next to the
//! threshold it was held to.

use std::fmt;

use serde::Serialize;

use super::RunConfig;
use crate::closedform::{
    deviation_from_limit, deviation_from_printed_limit, minimality_trials, ClosedForm, FieldSample, LimitCase,
    ProblemSetup,
};
use crate::error::Result;
use crate::material::{FullParams, MacroMicroParams};
use crate::oracle::{convergence_study, residuals, Field, GridSolution, RadialGrid, StencilOrder};

pub const FD_RESIDUAL_CELLS: usize = 2048;
pub const MINIMALITY_TRIALS: usize = 20;
pub const MINIMALITY_AMPLITUDE: f64 = 1e-3;
pub const MINIMALITY_SEED: u64 = 0x5eed_1234;
pub const MINIMALITY_NODES: usize = 2049;
pub const CORRUPTION_FACTOR: f64 = 1.01;

const BC_TOL: f64 = 1e-12;
const ODE_TOL: f64 = 1e-8;
const ODE_RADII: usize = 200;
const FD_TOL: f64 = 1e-6;
const ORDER_RANGE: (f64, f64) = (1.8, 2.2);
const NOISE_FLOOR: f64 = 1e-9;
const SHEAR_TOL: f64 = 1e-10;
const LIMIT_TOL: f64 = 1e-3;
const ZERO_POISSON_TOL: f64 = 1e-10;
const LINEARITY_TOL: f64 = 1e-13;
const LIMIT_RADII: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub measured: String,
    pub threshold: String,
}

impl CheckOutcome {
    fn bound(name: &'static str, value: f64, tol: f64) -> Self {
        Self {
            name,
            status: if value <= tol { CheckStatus::Pass } else { CheckStatus::Fail },
            measured: format!("{value:.3e}"),
            threshold: format!("<= {tol:e}"),
        }
    }

    fn from_result(name: &'static str, r: Result<Self>) -> Self {
        r.unwrap_or_else(|e| Self {
            name,
            status: CheckStatus::Fail,
            measured: format!("error: {e}"),
            threshold: String::new(),
        })
    }

    fn skip(name: &'static str, why: &str) -> Self {
        Self {
            name,
            status: CheckStatus::Skip,
            measured: why.to_string(),
            threshold: String::new(),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skip => "SKIP",
            CheckStatus::Info => "INFO",
        };
        write!(f, "[{tag}] {}: {}", self.name, self.measured)?;
        if !self.threshold.is_empty() {
            write!(f, " ({})", self.threshold)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Finest oracle resolution; the study also runs at a half and a quarter.
    pub cells: usize,
    pub samples: usize,
    /// Perturb the sampled fields before the discrete residual check.
    pub corrupt: bool,
}

/// Runs every check. Checks needing a finite boundary layer are skipped on
/// the `L_c = 0` branch.
pub fn run_checks(params: &FullParams<f64>, setup: &ProblemSetup<f64>, opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let cf = match ClosedForm::new(*params, *setup) {
        Ok(cf) => cf,
        Err(e) => {
            return vec![CheckOutcome::from_result("closed form", Err(e))];
        }
    };
    let vanishing = params.l_c() == 0.0;
    let mut out = vec![
        CheckOutcome::from_result("boundary conditions", boundary_conditions(&cf)),
        CheckOutcome::from_result("axis regularity", axis_regularity(&cf)),
    ];
    if vanishing {
        for name in ["ode residuals", "fd residuals", "oracle convergence", "oracle shear", "energy minimality"] {
            out.push(CheckOutcome::skip(name, "L_c = 0"));
        }
    } else {
        out.push(CheckOutcome::from_result("ode residuals", ode_residuals(&cf)));
        out.push(CheckOutcome::from_result("fd residuals", fd_residuals(&cf, opts.corrupt)));
        match convergence(params, setup, opts.cells) {
            Ok(mut v) => out.append(&mut v),
            Err(e) => out.push(CheckOutcome::from_result("oracle convergence", Err(e))),
        }
    }
    out.extend(limits(params, setup));
    out.push(CheckOutcome::from_result("mu_c invariance", mu_c_invariance(params, setup, opts.samples)));
    if !vanishing {
        out.push(CheckOutcome::from_result("energy minimality", minimality(&cf)));
    }
    out.push(CheckOutcome::from_result("linearity", linearity(&cf, opts.samples)));
    out
}

fn rel(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

fn boundary_conditions(cf: &ClosedForm<f64>) -> Result<CheckOutcome> {
    let s = cf.setup();
    let at = cf.sample(s.radius)?;
    let err = rel(at.u_r, s.u0).max(rel(at.p_thth, s.u0 / s.radius));
    let shear_zero = at.p_rth == 0.0;
    let mut out = CheckOutcome::bound("boundary conditions", err, BC_TOL);
    out.measured = format!("u_r, P_thth rel err {err:.3e}; P_rth(R) = {}", at.p_rth);
    if !shear_zero {
        out.status = CheckStatus::Fail;
    }
    out.threshold = format!("<= {BC_TOL:e}; P_rth exactly 0");
    Ok(out)
}

fn axis_regularity(cf: &ClosedForm<f64>) -> Result<CheckOutcome> {
    let s = cf.sample(0.0)?;
    let strain = (cf.setup().u0 / cf.setup().radius).abs();
    let finite = [s.p_rr, s.p_thth, s.sigma_rr, s.sigma_thth, s.energy_density].iter().all(|v| v.is_finite());
    // P_rr = P_thth on the axis only when the boundary layer has finite width
    let iso = if cf.params().l_c() > 0.0 {
        (s.p_rr - s.p_thth).abs() / strain.max(f64::MIN_POSITIVE)
    } else {
        0.0
    };
    let pass = s.u_r == 0.0 && finite && iso <= 1e-10;
    Ok(CheckOutcome {
        name: "axis regularity",
        status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: format!("u_r(0) = {}, |P_rr - P_thth|(0)/(U0/R) = {iso:.3e}, finite = {finite}", s.u_r),
        threshold: "u_r(0) = 0, <= 1e-10".into(),
    })
}

fn ode_residuals(cf: &ClosedForm<f64>) -> Result<CheckOutcome> {
    let rad = cf.setup().radius;
    let mut worst = 0.0_f64;
    for i in 0..ODE_RADII {
        let r = rad * i as f64 / (ODE_RADII - 1) as f64;
        for v in cf.ode_residuals(r.min(rad))? {
            worst = worst.max(v.abs());
        }
    }
    Ok(CheckOutcome::bound("ode residuals", worst, ODE_TOL))
}

fn fd_residuals(cf: &ClosedForm<f64>, corrupt: bool) -> Result<CheckOutcome> {
    let grid = RadialGrid::new(FD_RESIDUAL_CELLS, cf.setup().radius)?;
    let mut g = GridSolution::from_closed_form(cf, grid)?;
    if corrupt {
        g.scale_field(Field::Pthth, CORRUPTION_FACTOR);
    }
    let rep = residuals(&g, cf.params(), cf.setup(), StencilOrder::Fourth)?;
    let mut out = CheckOutcome::bound("fd residuals", rep.max_overall(), FD_TOL);
    out.measured = format!("{:.3e} on {FD_RESIDUAL_CELLS} cells{}", rep.max_overall(), if corrupt { " (corrupted P_thth)" } else { "" });
    Ok(out)
}

fn convergence(params: &FullParams<f64>, setup: &ProblemSetup<f64>, cells: usize) -> Result<Vec<CheckOutcome>> {
    let rows = convergence_study(params, setup, &[cells / 4, cells / 2, cells])?;
    let finest = rows[rows.len() - 1];
    let bound = 1e-5 * (512.0 / cells as f64).powi(2);
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, err, orders) in [
        ("u_r", finest.err_u, rows.iter().filter_map(|r| r.order_u).collect::<Vec<_>>()),
        ("P_rr", finest.err_prr, rows.iter().filter_map(|r| r.order_prr).collect()),
        ("P_thth", finest.err_pthth, rows.iter().filter_map(|r| r.order_pthth).collect()),
    ] {
        let in_range = orders.iter().all(|p| (ORDER_RANGE.0..=ORDER_RANGE.1).contains(p));
        ok &= err <= bound && (in_range || err < NOISE_FLOOR);
        let shown: Vec<String> = orders.iter().map(|p| format!("{p:.3}")).collect();
        parts.push(format!("{label} err {err:.2e} orders [{}]", shown.join(", ")));
    }
    let shear = rows.iter().fold(0.0_f64, |m, r| m.max(r.shear));
    Ok(vec![
        CheckOutcome {
            name: "oracle convergence",
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            measured: format!("n = {:?}: {}", rows.iter().map(|r| r.n_cells).collect::<Vec<_>>(), parts.join("; ")),
            threshold: format!(
                "orders in [{}, {}] or error < {NOISE_FLOOR:e}; finest error <= {bound:.2e}",
                ORDER_RANGE.0, ORDER_RANGE.1
            ),
        },
        CheckOutcome::bound("oracle shear", shear, SHEAR_TOL),
    ])
}

fn limit_solution(mm: MacroMicroParams<f64>, setup: &ProblemSetup<f64>) -> Result<ClosedForm<f64>> {
    ClosedForm::new(FullParams::new(mm)?, *setup)
}

fn limits(params: &FullParams<f64>, setup: &ProblemSetup<f64>) -> Vec<CheckOutcome> {
    let mm = *params.macro_micro();
    let rad = setup.radius;
    let mut out = Vec::new();
    for (name, printed, ratio, kind) in [
        ("limit L_c -> infinity", "printed L_c -> infinity", 1e-4, LimitCase::LcInfinity),
        ("limit L_c -> 0", "printed L_c -> 0", 1e4, LimitCase::LcZero),
    ] {
        let cf = limit_solution(mm.with_l_c(rad / ratio), setup);
        out.push(CheckOutcome::from_result(
            name,
            cf.as_ref()
                .map_err(Clone::clone)
                .and_then(|cf| deviation_from_limit(kind, cf, LIMIT_RADII))
                .map(|d| {
                    let mut c = CheckOutcome::bound(name, d, LIMIT_TOL);
                    c.measured = format!("max rel deviation {d:.3e} at R/L_c = {ratio:e}");
                    c
                }),
        ));
        if let Ok(d) = cf.and_then(|cf| deviation_from_printed_limit(kind, &cf, LIMIT_RADII)) {
            out.push(CheckOutcome {
                name: printed,
                status: CheckStatus::Info,
                measured: format!("deviation from customary printed form {d:.3e}"),
                threshold: String::new(),
            });
        }
    }
    let l_c = if params.l_c() > 0.0 { params.l_c() } else { rad / super::config::DEFAULT_R_OVER_LC };
    let zp = MacroMicroParams::new(0.0, mm.mu_macro, 0.0, mm.mu_micro).with_l_c(l_c);
    out.push(CheckOutcome::from_result(
        "limit zero Poisson",
        limit_solution(zp, setup)
            .and_then(|cf| deviation_from_limit(LimitCase::ZeroPoisson, &cf, LIMIT_RADII))
            .map(|d| CheckOutcome::bound("limit zero Poisson", d, ZERO_POISSON_TOL)),
    ));
    out
}

fn sample_bits(s: &FieldSample<f64>) -> [u64; 14] {
    [
        s.r, s.u_r, s.p_rr, s.p_thth, s.p_rth, s.p_thr, s.z, s.sigma_rr, s.sigma_thth, s.sigma_micro_rr,
        s.sigma_micro_thth, s.m_zth, s.energy_density, s.delta,
    ]
    .map(f64::to_bits)
}

/// Count of sampled values that differ in any bit across `mu_c` in `{0, 1, 100}`.
pub fn mu_c_mismatches(params: &FullParams<f64>, setup: &ProblemSetup<f64>, samples: usize) -> Result<usize> {
    let run = |mu_c: f64| -> Result<Vec<[u64; 14]>> {
        let cf = ClosedForm::new(params.with_mu_c(mu_c), *setup)?;
        Ok(cf.sample_uniform(samples)?.iter().map(sample_bits).collect())
    };
    let base = run(0.0)?;
    let mut bad = 0;
    for mu_c in [1.0, 100.0] {
        let other = run(mu_c)?;
        bad += base.iter().flatten().zip(other.iter().flatten()).filter(|(a, b)| a != b).count();
    }
    Ok(bad)
}

fn mu_c_invariance(params: &FullParams<f64>, setup: &ProblemSetup<f64>, samples: usize) -> Result<CheckOutcome> {
    let bad = mu_c_mismatches(params, setup, samples)?;
    Ok(CheckOutcome {
        name: "mu_c invariance",
        status: if bad == 0 { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: format!("{bad} differing values for mu_c in {{0, 1, 100}}"),
        threshold: "bit-identical".into(),
    })
}

fn minimality(cf: &ClosedForm<f64>) -> Result<CheckOutcome> {
    let trials = minimality_trials(cf, MINIMALITY_TRIALS, MINIMALITY_AMPLITUDE, MINIMALITY_SEED, MINIMALITY_NODES)?;
    let passed = trials.iter().filter(|t| t.passed()).count();
    let worst = trials
        .iter()
        .map(|t| t.margin / t.perturbation_energy)
        .fold(f64::INFINITY, f64::min);
    Ok(CheckOutcome {
        name: "energy minimality",
        status: if passed == trials.len() { CheckStatus::Pass } else { CheckStatus::Fail },
        measured: format!("{passed}/{} trials; min margin / I(v) = {worst:.9}", trials.len()),
        threshold: "margin > 0 and >= I(v)".into(),
    })
}

fn linearity(cf: &ClosedForm<f64>, samples: usize) -> Result<CheckOutcome> {
    let s = cf.setup();
    let tripled = ClosedForm::new(*cf.params(), ProblemSetup::new(s.radius, 3.0 * s.u0)?)?;
    let a = cf.sample_uniform(samples)?;
    let b = tripled.sample_uniform(samples)?;
    let linear = |x: &FieldSample<f64>| {
        [
            x.u_r, x.p_rr, x.p_thth, x.z, x.sigma_rr, x.sigma_thth, x.sigma_micro_rr, x.sigma_micro_thth, x.m_zth,
        ]
    };
    let mut worst = 0.0_f64;
    for k in 0..9 {
        let scale = b.iter().fold(0.0_f64, |m, x| m.max(linear(x)[k].abs()));
        let diff = a.iter().zip(&b).fold(0.0_f64, |m, (x, y)| m.max((3.0 * linear(x)[k] - linear(y)[k]).abs()));
        worst = worst.max(if scale > 0.0 { diff / scale } else { diff });
    }
    let escale = b.iter().fold(0.0_f64, |m, x| m.max(x.energy_density.abs()));
    let ediff = a.iter().zip(&b).fold(0.0_f64, |m, (x, y)| m.max((9.0 * x.energy_density - y.energy_density).abs()));
    worst = worst.max(if escale > 0.0 { ediff / escale } else { ediff });
    let mut out = CheckOutcome::bound("linearity", worst, LINEARITY_TOL);
    out.measured = format!("fields x3 and energy x9 under U0 -> 3 U0, rel err {worst:.3e}");
    Ok(out)
}

pub(crate) fn summary_json(cfg: &RunConfig, checks: &[CheckOutcome], passed: bool) -> String {
    serde_json::json!({
        "source": cfg.source,
        "r_over_lc": cfg.r_over_lc(),
        "u0_over_r": cfg.u0 / cfg.radius,
        "passed": passed,
        "checks": checks,
    })
    .to_string()
}
