//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use rand::Rng;
use rmm_axisym::material::MacroMicroParams;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    pub fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        Self {
            hi: s,
            lo: (a - (s - bb)) + (b - bb),
        }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self { hi: s, lo: lo - (s - hi) }
    }

    pub fn add(self, o: Self) -> Self {
        let s = Self::two_sum(self.hi, o.hi);
        Self::renorm(s.hi, s.lo + self.lo + o.lo)
    }

    pub fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    pub fn div_f64(self, d: f64) -> Self {
        let q = self.hi / d;
        let r = self.add(Self::from(q).mul(Self::from(-d)));
        Self::renorm(q, r.hi / d)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Ascending series of `I_order(x)`, order 0 or 1, summed in double-double
/// until terms stop contributing.
pub fn bessel_series(order: u32, x: f64) -> f64 {
    let half = Dd::from(x).div_f64(2.0);
    let q = half.mul(half);
    let mut term = if order == 0 { Dd::from(1.0) } else { half };
    let mut sum = term;
    for k in 1..2000u32 {
        term = term.mul(q).div_f64(f64::from(k) * f64::from(k + order));
        sum = sum.add(term);
        if term.hi < 1e-34 * sum.hi {
            break;
        }
    }
    sum.to_f64()
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// Random admissible moduli: `mu_m > mu_M`, `kappa_m > kappa_M`, positive
/// macro moduli, `L_c = R / ratio` with `ratio` log-uniform in `[0.1, 100]`.
pub fn random_moduli(rng: &mut impl Rng, radius: f64) -> MacroMicroParams<f64> {
    let lambda_macro = rng.gen_range(0.1..20.0);
    let mu_macro = rng.gen_range(0.5..20.0);
    let mu_micro = mu_macro * rng.gen_range(1.1..5.0);
    let kappa_micro = (lambda_macro + mu_macro) * rng.gen_range(1.1..5.0);
    let ratio = 10f64.powf(rng.gen_range(-1.0..2.0));
    MacroMicroParams::new(lambda_macro, mu_macro, kappa_micro - mu_micro, mu_micro).with_l_c(radius / ratio)
}

pub fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}
