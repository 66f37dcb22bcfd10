//! Command-line front end: `solve`, `sweep`, `verify` and `params`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

pub mod config;
mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::closedform::{ClosedForm, FieldSample};
use crate::material::{FullParams, MacroMicroParams, Preset};

pub use config::{FileConfig, Overrides, RunConfig, SweepSpec, SweepVar};
pub use verify::{mu_c_mismatches, run_checks, CheckOutcome, CheckStatus, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const SOLVE_HEADER: &str = "r/R,u_r/U0,P_rr,P_thth,P_rth,P_thr,Z,sigma_rr,sigma_thth,sigma_micro_rr,sigma_micro_thth,m_zth,energy_density,delta";
pub const SWEEP_HEADER: &str = "sweep_value,r/R,delta";

#[derive(Debug, Parser)]
#[command(name = "rmm-axisym", version, about = "Axisymmetric extension of a relaxed micromorphic cylinder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Radial profiles of all fields as CSV.
    Solve(Common),
    /// Long-format CSV of delta(r) over a parameter sweep.
    Sweep {
        #[command(flatten)]
        common: Common,
        /// `<var>=<v1,v2,...>` with var one of R_over_Lc, beta1, beta2.
        #[arg(long)]
        sweep: SweepSpec,
    },
    /// Checks the closed form against the oracle, limits and invariants.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Scale the sampled P_thth by 1.01 before the residual check.
        #[arg(long)]
        corrupt: bool,
    },
    /// Derived moduli, solution coefficients and validation report.
    Params(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Parameter set: set1, set2 or set3 (default set3).
    #[arg(long)]
    preset: Option<Preset>,
    /// JSON file with moduli and geometry.
    #[arg(long)]
    config: Option<PathBuf>,
    /// R/L_c; `inf` selects L_c = 0.
    #[arg(long)]
    r_over_lc: Option<f64>,
    /// Boundary displacement over radius (default 0.01).
    #[arg(long)]
    u0_over_r: Option<f64>,
    /// Cosserat couple modulus (default 0).
    #[arg(long)]
    mu_c: Option<f64>,
    #[arg(long)]
    lambda_macro: Option<f64>,
    #[arg(long)]
    mu_macro: Option<f64>,
    #[arg(long)]
    lambda_micro: Option<f64>,
    #[arg(long)]
    mu_micro: Option<f64>,
    /// Number of sample radii including both ends.
    #[arg(long, default_value_t = config::DEFAULT_SAMPLES)]
    samples: usize,
    /// Finest oracle resolution for `verify`.
    #[arg(long, default_value_t = config::DEFAULT_CELLS)]
    cells: usize,
    /// Write the CSV (or the JSON summary for `verify`) here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            preset: self.preset,
            config: self.config.clone(),
            r_over_lc: self.r_over_lc,
            u0_over_r: self.u0_over_r,
            mu_c: self.mu_c,
            lambda_macro: self.lambda_macro,
            mu_macro: self.mu_macro,
            lambda_micro: self.lambda_micro,
            mu_micro: self.mu_micro,
        }
    }
}

/// Input error carrying the message for standard error.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(c) => cmd_solve(c, out),
        Command::Sweep { common, sweep } => cmd_sweep(common, sweep, out),
        Command::Verify { common, corrupt } => cmd_verify(common, *corrupt, out),
        Command::Params(c) => cmd_params(c, out),
    };
    match result {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {}", msg.trim_end());
            EXIT_INPUT
        }
    }
}

fn resolve(c: &Common) -> Result<(RunConfig, FullParams<f64>), InputError> {
    let cfg = RunConfig::resolve(&c.overrides())?;
    let params = cfg
        .params()
        .map_err(|report| InputError(format!("invalid parameters ({})\n{report}", cfg.source)))?;
    Ok((cfg, params))
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| InputError(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(InputError::from),
    }
}

/// Fixed 17-significant-digit scientific format; negative zero prints as zero.
pub fn fmt_num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// CSV row in the column order of [`SOLVE_HEADER`].
pub fn solve_row(s: &FieldSample<f64>, radius: f64, u0: f64) -> String {
    let u_norm = if u0 == 0.0 { 0.0 } else { s.u_r / u0 };
    [
        s.r / radius,
        u_norm,
        s.p_rr,
        s.p_thth,
        s.p_rth,
        s.p_thr,
        s.z,
        s.sigma_rr,
        s.sigma_thth,
        s.sigma_micro_rr,
        s.sigma_micro_thth,
        s.m_zth,
        s.energy_density,
        s.delta,
    ]
    .iter()
    .map(|v| fmt_num(*v))
    .collect::<Vec<_>>()
    .join(",")
}

fn cmd_solve(c: &Common, out: &mut dyn Write) -> Result<i32, InputError> {
    let (cfg, params) = resolve(c)?;
    let cf = ClosedForm::new(params, cfg.setup()?)?;
    let mut text = String::with_capacity(300 * (c.samples + 1));
    text.push_str(SOLVE_HEADER);
    text.push('\n');
    for s in cf.sample_uniform(c.samples)? {
        text.push_str(&solve_row(&s, cfg.radius, cfg.u0));
        text.push('\n');
    }
    emit(&text, c.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

/// Moduli for one sweep point; beta sweeps scale the micro moduli of `base`.
pub fn sweep_point(cfg: &RunConfig, var: SweepVar, value: f64) -> MacroMicroParams<f64> {
    let base = cfg.moduli;
    let ratio = if cfg.l_c_defaulted {
        config::DEFAULT_BETA_R_OVER_LC
    } else {
        cfg.r_over_lc()
    };
    match var {
        SweepVar::ROverLc => base.with_l_c(cfg.radius / value),
        SweepVar::Beta1 => MacroMicroParams {
            lambda_micro: value * base.lambda_macro,
            ..base
        }
        .with_l_c(cfg.radius / ratio),
        SweepVar::Beta2 => MacroMicroParams {
            mu_micro: value * base.mu_macro,
            ..base
        }
        .with_l_c(cfg.radius / ratio),
    }
}

fn cmd_sweep(c: &Common, spec: &SweepSpec, out: &mut dyn Write) -> Result<i32, InputError> {
    let cfg = RunConfig::resolve(&c.overrides())?;
    let setup = cfg.setup()?;
    let samples = c.samples;
    let blocks: Vec<Result<String, String>> = spec
        .values
        .par_iter()
        .map(|&v| {
            let mm = sweep_point(&cfg, spec.var, v);
            let name = format!("{}={v}", spec.var);
            let report = crate::material::validate(&mm);
            if !report.is_valid() {
                return Err(format!("invalid parameters at {name}\n{report}"));
            }
            let cf = FullParams::new(mm)
                .and_then(|p| ClosedForm::new(p, setup))
                .map_err(|e| format!("invalid parameters at {name}: {e}"))?;
            let rows = cf.sample_uniform(samples).map_err(|e| format!("{name}: {e}"))?;
            let mut block = String::new();
            for s in rows {
                let _ = writeln!(block, "{v},{},{}", fmt_num(s.r / cfg.radius), fmt_num(s.delta));
            }
            Ok(block)
        })
        .collect();
    let mut text = format!("{SWEEP_HEADER}\n");
    for b in blocks {
        text.push_str(&b.map_err(InputError)?);
    }
    emit(&text, c.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_params(c: &Common, out: &mut dyn Write) -> Result<i32, InputError> {
    let (cfg, p) = resolve(c)?;
    let sh = crate::closedform::shape_coefficients(&p);
    let mut text = String::new();
    let _ = writeln!(text, "source = {}", cfg.source);
    let rows = [
        ("lambda_M", p.lambda_macro()),
        ("mu_M", p.mu_macro()),
        ("kappa_M", p.kappa_macro()),
        ("lambda_m", p.lambda_micro()),
        ("mu_m", p.mu_micro()),
        ("kappa_m", p.kappa_micro()),
        ("lambda_e", p.lambda_e()),
        ("mu_e", p.mu_e()),
        ("kappa_e", p.kappa_e()),
        ("mu_c", p.mu_c()),
        ("L_c", p.l_c()),
        ("R/L_c", cfg.r_over_lc()),
        ("a*L_c^2", sh.a_lc2),
        ("A", sh.big_a),
        ("B", sh.big_b),
        ("xi1", sh.xi1),
        ("xi2", sh.xi2),
        ("xi3", sh.xi3),
    ];
    for (name, v) in rows {
        let _ = writeln!(text, "{name:<9} = {}", fmt_num(v));
    }
    let _ = writeln!(text, "validation:");
    let _ = write!(text, "{}", p.validate());
    emit(&text, c.out.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(c: &Common, corrupt: bool, out: &mut dyn Write) -> Result<i32, InputError> {
    let (cfg, params) = resolve(c)?;
    if c.cells < 128 || !c.cells.is_multiple_of(4) {
        return Err(InputError(format!(
            "--cells must be a multiple of 4 and at least 128, got {}",
            c.cells
        )));
    }
    let opts = VerifyOptions {
        cells: c.cells,
        samples: c.samples.max(2),
        corrupt,
    };
    let checks = run_checks(&params, &cfg.setup()?, &opts);
    let passed = checks.iter().all(|k| k.status != CheckStatus::Fail);
    let mut text = format!(
        "verification of {} at R/L_c = {}, U0/R = {}\n",
        cfg.source,
        cfg.r_over_lc(),
        cfg.u0 / cfg.radius
    );
    for k in &checks {
        let _ = writeln!(text, "{k}");
    }
    let _ = writeln!(text, "{}", if passed { "ALL CHECKS PASSED" } else { "VERIFICATION FAILED" });
    let summary = verify::summary_json(&cfg, &checks, passed);
    match &c.out {
        Some(path) => {
            out.write_all(text.as_bytes())?;
            emit(&format!("{summary}\n"), Some(path), out)?;
        }
        None => {
            text.push_str(&summary);
            text.push('\n');
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("rmm-axisym").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(-0.0), "0.0000000000000000e0");
        assert_eq!(fmt_num(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(call(&[]).0, EXIT_INPUT);
        assert_eq!(call(&["solve", "--bogus"]).0, EXIT_INPUT);
        assert_eq!(call(&["solve", "--preset", "set9"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
        assert_eq!(call(&["verify", "--cells", "100"]).0, EXIT_INPUT);
    }

    #[test]
    fn solve_shape() {
        let (code, out, _) = call(&["solve", "--samples", "5"]);
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], SOLVE_HEADER);
        assert_eq!(lines.len(), 6);
        assert!(lines.iter().all(|l| l.split(',').count() == 14));
        assert!(!out.contains('\r'));
    }

    #[test]
    fn beta_sweep_uses_fixed_ratio() {
        let cfg = RunConfig::resolve(&Overrides::default()).unwrap();
        let mm = sweep_point(&cfg, SweepVar::Beta2, 3.0);
        assert_eq!(mm.mu_micro, 3.0 * 5.9);
        assert_eq!(mm.lambda_micro, 8.22);
        assert_eq!(mm.l_c, 0.2);
        let mm = sweep_point(&cfg, SweepVar::Beta1, 2.0);
        assert_eq!(mm.lambda_micro, 3.5);
        assert_eq!(mm.mu_micro, 10.55);
    }
}
