//! Material parameters: macro/micro input moduli, the derived e-moduli, and
//! plane-strain consistency checks.
//!
//! Plane strain uses the two-dimensional bulk modulus `kappa = lambda + mu`.
//! The three modulus families are linked by harmonic means,
//! `1/mu_M = 1/mu_e + 1/mu_m` and `1/kappa_M = 1/kappa_e + 1/kappa_m`.
//! Moduli are in GPa by convention; only ratios enter the normalized results.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Input parameters as tabulated: macro and micro Lamé moduli, the Cosserat
/// couple modulus and the characteristic length.
///
/// `mu_c` is carried for completeness; it drops out of the axisymmetric
/// extension problem and never changes a result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroMicroParams<T> {
    pub lambda_macro: T,
    pub mu_macro: T,
    pub lambda_micro: T,
    pub mu_micro: T,
    pub mu_c: T,
    pub l_c: T,
}

impl<T: Real> MacroMicroParams<T> {
    pub fn new(lambda_macro: T, mu_macro: T, lambda_micro: T, mu_micro: T) -> Self {
        Self {
            lambda_macro,
            mu_macro,
            lambda_micro,
            mu_micro,
            mu_c: T::zero(),
            l_c: T::one(),
        }
    }

    pub fn with_l_c(mut self, l_c: T) -> Self {
        self.l_c = l_c;
        self
    }

    pub fn with_mu_c(mut self, mu_c: T) -> Self {
        self.mu_c = mu_c;
        self
    }

    pub fn kappa_macro(&self) -> T {
        self.lambda_macro + self.mu_macro
    }

    pub fn kappa_micro(&self) -> T {
        self.lambda_micro + self.mu_micro
    }
}

/// Moduli of the elastic (e) energy term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EModuli<T> {
    pub lambda_e: T,
    pub mu_e: T,
    pub kappa_e: T,
}

impl<T: Real> EModuli<T> {
    /// Builds the set from `lambda_e` and `mu_e`, with `kappa_e = lambda_e + mu_e`.
    pub fn new(lambda_e: T, mu_e: T) -> Self {
        Self {
            lambda_e,
            mu_e,
            kappa_e: lambda_e + mu_e,
        }
    }
}

/// Inverts the harmonic-mean relations for the e-moduli.
pub fn derive_e_moduli<T: Real>(p: &MacroMicroParams<T>) -> Result<EModuli<T>> {
    let (mu_m, mu_mac) = (p.mu_micro, p.mu_macro);
    let (kappa_m, kappa_mac) = (p.kappa_micro(), p.kappa_macro());
    if let Some(msg) = quotient_defect("mu", mu_m, mu_mac) {
        return Err(Error::Degenerate(msg));
    }
    if let Some(msg) = quotient_defect("kappa", kappa_m, kappa_mac) {
        return Err(Error::Degenerate(msg));
    }
    let mu_e = mu_mac * mu_m / (mu_m - mu_mac);
    let kappa_e = kappa_mac * kappa_m / (kappa_m - kappa_mac);
    Ok(EModuli {
        lambda_e: kappa_e - mu_e,
        mu_e,
        kappa_e,
    })
}

fn quotient_defect<T: Real>(name: &str, micro: T, macro_: T) -> Option<String> {
    if !micro.is_finite() || !macro_.is_finite() {
        Some(format!("non-finite {name} modulus"))
    } else if micro == macro_ {
        Some(format!("infinite {name}_e ({name}_micro equals {name}_macro)"))
    } else if micro < macro_ {
        Some(format!("negative {name}_e ({name}_micro below {name}_macro)"))
    } else {
        None
    }
}

/// Forward harmonic-mean relations: macro `(lambda_M, mu_M)` from e- and micro moduli.
pub fn recombine_macro<T: Real>(e: &EModuli<T>, lambda_micro: T, mu_micro: T) -> Result<(T, T)> {
    let inputs = [e.lambda_e, e.mu_e, e.kappa_e, lambda_micro, mu_micro];
    if inputs.iter().any(|v| !v.is_finite()) {
        return Err(Error::Degenerate("non-finite modulus".into()));
    }
    let kappa_m = lambda_micro + mu_micro;
    let mu_mac = e.mu_e * mu_micro / (e.mu_e + mu_micro);
    let kappa_mac = e.kappa_e * kappa_m / (e.kappa_e + kappa_m);
    Ok((kappa_mac - mu_mac, mu_mac))
}

/// Complete, consistent parameter set: the inputs plus derived e-moduli and
/// the plane-strain bulk moduli.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullParams<T> {
    macro_micro: MacroMicroParams<T>,
    e: EModuli<T>,
    kappa_micro: T,
    kappa_macro: T,
}

impl<T: Real> FullParams<T> {
    pub fn new(macro_micro: MacroMicroParams<T>) -> Result<Self> {
        let e = derive_e_moduli(&macro_micro)?;
        Ok(Self {
            macro_micro,
            e,
            kappa_micro: macro_micro.kappa_micro(),
            kappa_macro: macro_micro.kappa_macro(),
        })
    }

    /// Secondary constructor from e-moduli and micro moduli; macro moduli are
    /// recombined.
    pub fn from_e_moduli(e: EModuli<T>, lambda_micro: T, mu_micro: T, mu_c: T, l_c: T) -> Result<Self> {
        let (lambda_macro, mu_macro) = recombine_macro(&e, lambda_micro, mu_micro)?;
        let macro_micro = MacroMicroParams {
            lambda_macro,
            mu_macro,
            lambda_micro,
            mu_micro,
            mu_c,
            l_c,
        };
        Ok(Self {
            macro_micro,
            e,
            kappa_micro: macro_micro.kappa_micro(),
            kappa_macro: macro_micro.kappa_macro(),
        })
    }

    pub fn macro_micro(&self) -> &MacroMicroParams<T> {
        &self.macro_micro
    }

    pub fn e(&self) -> &EModuli<T> {
        &self.e
    }

    pub fn lambda_e(&self) -> T {
        self.e.lambda_e
    }
    pub fn mu_e(&self) -> T {
        self.e.mu_e
    }
    pub fn kappa_e(&self) -> T {
        self.e.kappa_e
    }
    pub fn lambda_micro(&self) -> T {
        self.macro_micro.lambda_micro
    }
    pub fn mu_micro(&self) -> T {
        self.macro_micro.mu_micro
    }
    pub fn kappa_micro(&self) -> T {
        self.kappa_micro
    }
    pub fn lambda_macro(&self) -> T {
        self.macro_micro.lambda_macro
    }
    pub fn mu_macro(&self) -> T {
        self.macro_micro.mu_macro
    }
    pub fn kappa_macro(&self) -> T {
        self.kappa_macro
    }
    pub fn mu_c(&self) -> T {
        self.macro_micro.mu_c
    }
    pub fn l_c(&self) -> T {
        self.macro_micro.l_c
    }

    pub fn with_l_c(mut self, l_c: T) -> Self {
        self.macro_micro.l_c = l_c;
        self
    }

    pub fn with_mu_c(mut self, mu_c: T) -> Self {
        self.macro_micro.mu_c = mu_c;
        self
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = validate(&self.macro_micro);
        let rel = |a: T, b: T| ((a - b) / b).abs().to_f64().unwrap_or(f64::NAN);
        let tol = HARMONIC_TOL.max(16.0 * T::epsilon().to_f64().unwrap_or(0.0));
        let e = &self.e;
        let mu_err = rel(T::one() / self.mu_macro(), T::one() / e.mu_e + T::one() / self.mu_micro());
        let kappa_err = rel(
            T::one() / self.kappa_macro,
            T::one() / e.kappa_e + T::one() / self.kappa_micro,
        );
        report.push(
            "harmonic mean mu",
            mu_err <= tol,
            format!("relative mismatch {mu_err:.2e}"),
        );
        report.push(
            "harmonic mean kappa",
            kappa_err <= tol,
            format!("relative mismatch {kappa_err:.2e}"),
        );
        report
    }
}

/// Relative tolerance of the harmonic-mean consistency checks in double
/// precision; single precision uses a few ulps instead.
pub const HARMONIC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Per-invariant outcome of [`validate`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail });
    }

    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(c) => Err(Error::Degenerate(format!("{}: {}", c.name, c.detail))),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{tag} {:<24} {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Checks positivity and admissibility of a parameter set. Never panics.
pub fn validate<T: Real>(p: &MacroMicroParams<T>) -> ValidationReport {
    let mut r = ValidationReport::default();
    let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
    let finite = [p.lambda_macro, p.mu_macro, p.lambda_micro, p.mu_micro, p.mu_c, p.l_c]
        .iter()
        .all(|v| v.is_finite());
    r.push("finite inputs", finite, String::new());

    let positive = |r: &mut ValidationReport, name, v: T| {
        r.push(name, v > T::zero(), format!("{:.6}", f(v)));
    };
    positive(&mut r, "mu_macro > 0", p.mu_macro);
    positive(&mut r, "kappa_macro > 0", p.kappa_macro());
    positive(&mut r, "mu_micro > 0", p.mu_micro);
    positive(&mut r, "kappa_micro > 0", p.kappa_micro());

    match quotient_defect("mu", p.mu_micro, p.mu_macro) {
        Some(msg) => r.push("mu_e > 0", false, format!("degenerate: {msg}")),
        None => {
            let mu_e = p.mu_macro * p.mu_micro / (p.mu_micro - p.mu_macro);
            r.push("mu_e > 0", mu_e > T::zero(), format!("{:.6}", f(mu_e)));
        }
    }
    match quotient_defect("kappa", p.kappa_micro(), p.kappa_macro()) {
        Some(msg) => r.push("kappa_e > 0", false, format!("degenerate: {msg}")),
        None => {
            let k = p.kappa_macro() * p.kappa_micro() / (p.kappa_micro() - p.kappa_macro());
            r.push("kappa_e > 0", k > T::zero(), format!("{:.6}", f(k)));
        }
    }
    if let Ok(e) = derive_e_moduli(p) {
        let note = if e.lambda_e < T::zero() && e.kappa_e > T::zero() {
            "valid (kappa_e > 0)".to_string()
        } else {
            String::new()
        };
        r.push("lambda_e", true, format!("{:.6} {note}", f(e.lambda_e)).trim_end().to_string());
    }
    r.push("L_c >= 0", p.l_c >= T::zero(), format!("{:.6}", f(p.l_c)));
    r.push("mu_c >= 0", p.mu_c >= T::zero(), format!("{:.6}", f(p.mu_c)));
    r
}

/// Rows of the tabulated parameter sets (`lambda_M, mu_M, lambda_m, mu_m` in GPa).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Set1,
    Set2,
    Set3,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Set1, Preset::Set2, Preset::Set3];

    pub fn row(self) -> [f64; 4] {
        match self {
            Preset::Set1 => [17.61, 16.13, 30.82, 28.23],
            Preset::Set2 => [1.75, 5.90, 11.30, 10.19],
            Preset::Set3 => [1.75, 5.90, 8.22, 10.55],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Set1 => "set1",
            Preset::Set2 => "set2",
            Preset::Set3 => "set3",
        }
    }

    /// Parameters of this row with `mu_c = 0` and the given characteristic length.
    pub fn params<T: Real>(self, l_c: T) -> MacroMicroParams<T> {
        let [lm, mm, lmi, mmi] = self.row().map(T::lit);
        MacroMicroParams::new(lm, mm, lmi, mmi).with_l_c(l_c)
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "set1" | "1" => Ok(Preset::Set1),
            "set2" | "2" => Ok(Preset::Set2),
            "set3" | "3" => Ok(Preset::Set3),
            other => Err(Error::Config(format!("unknown preset `{other}` (expected set1, set2 or set3)"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
