//! Run configuration: one parameter source (preset or JSON file), geometry
//! and loading ratios, and per-command settings. Flags override the file.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::closedform::ProblemSetup;
use crate::error::{Error, Result};
use crate::material::{FullParams, MacroMicroParams, Preset};

pub const DEFAULT_R_OVER_LC: f64 = 2.0;
pub const DEFAULT_BETA_R_OVER_LC: f64 = 5.0;
pub const DEFAULT_U0_OVER_R: f64 = 0.01;
pub const DEFAULT_SAMPLES: usize = 101;
pub const DEFAULT_CELLS: usize = 512;

/// Keys accepted in a JSON config file. Moduli in GPa.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(rename = "lambda_M")]
    pub lambda_macro: Option<f64>,
    #[serde(rename = "mu_M")]
    pub mu_macro: Option<f64>,
    #[serde(rename = "lambda_m")]
    pub lambda_micro: Option<f64>,
    #[serde(rename = "mu_m")]
    pub mu_micro: Option<f64>,
    pub mu_c: Option<f64>,
    #[serde(rename = "L_c")]
    pub l_c: Option<f64>,
    #[serde(rename = "R")]
    pub radius: Option<f64>,
    #[serde(rename = "U0")]
    pub u0: Option<f64>,
    pub r_over_lc: Option<f64>,
    pub u0_over_r: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    ROverLc,
    Beta1,
    Beta2,
}

impl SweepVar {
    pub fn name(self) -> &'static str {
        match self {
            SweepVar::ROverLc => "R_over_Lc",
            SweepVar::Beta1 => "beta1",
            SweepVar::Beta2 => "beta2",
        }
    }
}

impl fmt::Display for SweepVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub var: SweepVar,
    pub values: Vec<f64>,
}

impl FromStr for SweepSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (var, list) = s
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("sweep `{s}` is not of the form <var>=<v1,v2,...>")))?;
        let var = match var.trim().to_ascii_lowercase().as_str() {
            "r_over_lc" | "r/lc" => SweepVar::ROverLc,
            "beta1" => SweepVar::Beta1,
            "beta2" => SweepVar::Beta2,
            other => {
                return Err(Error::Config(format!(
                    "unknown sweep variable `{other}` (expected R_over_Lc, beta1 or beta2)"
                )))
            }
        };
        let values = list
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Config(format!("sweep value `{v}` is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::Config("sweep value list is empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Config(format!("sweep values must be positive and finite, got {bad}")));
        }
        Ok(Self { var, values })
    }
}

/// Command-line inputs before resolution against a config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub preset: Option<Preset>,
    pub config: Option<PathBuf>,
    pub r_over_lc: Option<f64>,
    pub u0_over_r: Option<f64>,
    pub mu_c: Option<f64>,
    pub lambda_macro: Option<f64>,
    pub mu_macro: Option<f64>,
    pub lambda_micro: Option<f64>,
    pub mu_micro: Option<f64>,
}

/// Fully resolved inputs for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Label of the parameter source, for reports.
    pub source: String,
    pub moduli: MacroMicroParams<f64>,
    pub radius: f64,
    /// `L_c` if it was given directly, otherwise derived from `r_over_lc`.
    pub l_c: f64,
    pub u0: f64,
    /// True when neither the flags nor the file fixed the length scale.
    pub l_c_defaulted: bool,
}

impl RunConfig {
    pub fn resolve(o: &Overrides) -> Result<Self> {
        if o.preset.is_some() && o.config.is_some() {
            return Err(Error::Config("give either --preset or --config, not both".into()));
        }
        let file = match &o.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let (source, base) = match (&o.config, o.preset) {
            (Some(path), _) => {
                let need = |v: Option<f64>, key: &str| {
                    v.ok_or_else(|| Error::Config(format!("{} is missing `{key}`", path.display())))
                };
                let m = MacroMicroParams::new(
                    need(file.lambda_macro, "lambda_M")?,
                    need(file.mu_macro, "mu_M")?,
                    need(file.lambda_micro, "lambda_m")?,
                    need(file.mu_micro, "mu_m")?,
                );
                (path.display().to_string(), m)
            }
            (None, preset) => {
                let p = preset.unwrap_or(Preset::Set3);
                (p.name().to_string(), p.params(1.0))
            }
        };
        let moduli = MacroMicroParams {
            lambda_macro: o.lambda_macro.unwrap_or(base.lambda_macro),
            mu_macro: o.mu_macro.unwrap_or(base.mu_macro),
            lambda_micro: o.lambda_micro.unwrap_or(base.lambda_micro),
            mu_micro: o.mu_micro.unwrap_or(base.mu_micro),
            mu_c: o.mu_c.or(file.mu_c).unwrap_or(0.0),
            l_c: 0.0,
        };

        let radius = file.radius.unwrap_or(1.0);
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Config(format!("R must be positive, got {radius}")));
        }
        let ratio = o.r_over_lc.or(file.r_over_lc);
        let (l_c, l_c_defaulted) = match (ratio, file.l_c) {
            (Some(q), _) => (length_from_ratio(radius, q)?, false),
            (None, Some(l)) => (l, false),
            (None, None) => (radius / DEFAULT_R_OVER_LC, true),
        };
        let u0 = match (o.u0_over_r.or(file.u0_over_r), file.u0) {
            (Some(e), _) => e * radius,
            (None, Some(u)) => u,
            (None, None) => DEFAULT_U0_OVER_R * radius,
        };
        if !u0.is_finite() {
            return Err(Error::Config("U0 must be finite".into()));
        }
        Ok(Self {
            source,
            moduli: moduli.with_l_c(l_c),
            radius,
            l_c,
            u0,
            l_c_defaulted,
        })
    }

    pub fn r_over_lc(&self) -> f64 {
        self.radius / self.l_c
    }

    pub fn setup(&self) -> Result<ProblemSetup<f64>> {
        ProblemSetup::new(self.radius, self.u0)
    }

    /// Validated full parameter set; on failure the error carries the report.
    pub fn params(&self) -> std::result::Result<FullParams<f64>, String> {
        let report = crate::material::validate(&self.moduli);
        if !report.is_valid() {
            return Err(report.to_string());
        }
        let full = FullParams::new(self.moduli).map_err(|e| e.to_string())?;
        let report = full.validate();
        if !report.is_valid() {
            return Err(report.to_string());
        }
        Ok(full)
    }
}

/// `R / ratio`; an infinite ratio means `L_c = 0`.
pub fn length_from_ratio(radius: f64, ratio: f64) -> Result<f64> {
    if ratio.is_nan() || ratio <= 0.0 {
        return Err(Error::Config(format!("R/L_c must be positive, got {ratio}")));
    }
    Ok(if ratio.is_infinite() { 0.0 } else { radius / ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn defaults_use_set3() {
        let c = RunConfig::resolve(&Overrides::default()).unwrap();
        assert_eq!(c.source, "set3");
        assert_eq!(c.l_c, 0.5);
        assert!(c.l_c_defaulted);
        assert_eq!(c.u0, 0.01);
        assert_eq!(c.moduli.mu_c, 0.0);
    }

    #[test]
    fn flags_override_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        write!(
            f,
            r#"{{"lambda_M": 1.75, "mu_M": 5.9, "lambda_m": 8.22, "mu_m": 10.55, "mu_c": 2.0, "R": 2.0, "U0": 0.1, "r_over_lc": 4.0}}"#
        )
        .unwrap();
        let o = Overrides {
            config: Some(f.path().to_path_buf()),
            r_over_lc: Some(8.0),
            ..Overrides::default()
        };
        let c = RunConfig::resolve(&o).unwrap();
        assert_eq!(c.l_c, 0.25);
        assert_eq!(c.u0, 0.1);
        assert_eq!(c.moduli.mu_c, 2.0);
        assert!(c.params().is_ok());
    }

    #[test]
    fn bad_inputs() {
        let both = Overrides {
            preset: Some(Preset::Set1),
            config: Some("x.json".into()),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(&both).is_err());
        assert!(FileConfig::parse(r#"{"lambda_X": 1}"#).is_err());
        let missing = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(missing.path(), r#"{"mu_M": 1.0}"#).unwrap();
        let o = Overrides {
            config: Some(missing.path().to_path_buf()),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(&o).unwrap_err().to_string().contains("lambda_M"));
        let o = Overrides {
            r_over_lc: Some(-1.0),
            ..Overrides::default()
        };
        assert!(RunConfig::resolve(&o).is_err());
    }

    #[test]
    fn infinite_ratio_means_zero_length() {
        let o = Overrides {
            r_over_lc: Some(f64::INFINITY),
            ..Overrides::default()
        };
        assert_eq!(RunConfig::resolve(&o).unwrap().l_c, 0.0);
    }

    #[test]
    fn sweep_specs() {
        let s: SweepSpec = "beta1=1,2,3".parse().unwrap();
        assert_eq!(s.var, SweepVar::Beta1);
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
        assert_eq!("R_over_Lc=0.05".parse::<SweepSpec>().unwrap().var, SweepVar::ROverLc);
        for bad in ["beta3=1", "beta1=", "beta1=0,1", "beta1", "beta2=a"] {
            assert!(bad.parse::<SweepSpec>().is_err(), "{bad}");
        }
    }
}
