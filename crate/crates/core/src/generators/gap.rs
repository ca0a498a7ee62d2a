//! Exact arithmetic for the uniform-cost hardness gap.
//!
//! With `δ = ε¹⁰⁰`, `t = δ^(-1/2) = ε⁻⁵⁰`, `q = ε⁻³·nᵗ`, `β = q·n/2 + nᵗ` and
//! `p = ε⁻³·n/2`, every bound is a rational multiple of `N = nᵗ`. The report
//! stores those multiples, so the comparisons are exact for any `ε` even
//! though `N` itself has astronomically many digits.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::{frac, int, ratio_string, Ratio};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GapOptions {
    /// Accept any `ε ∈ (0, 1)` instead of the admissible range.
    pub relaxed: bool,
    /// Expand the quantities to full integers when `N` has at most this many
    /// decimal digits.
    pub expand_digits: Option<u64>,
}

/// Every bound as a multiple of `N = nᵗ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapCoefficients {
    #[serde(serialize_with = "ser_ratio")]
    pub sigma: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub beta: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub nt_p: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub q_delta_n: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub yes_bound: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub no_bound: Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapChecks {
    /// `β ≤ σ + 2ε³σ`.
    pub beta_bound: bool,
    /// `nᵗ·p = σ`.
    pub nt_p_is_sigma: bool,
    /// `q·δ·n ≤ ε³σ`.
    pub q_delta_n_bound: bool,
    /// `yes ≥ (2 − ε²)σ`.
    pub yes_bound: bool,
    /// `no < (1 + ε²)σ`.
    pub no_bound: bool,
    /// `yes / no > 2 − ε`.
    pub ratio: bool,
}

impl GapChecks {
    pub fn all(&self) -> bool {
        self.beta_bound && self.nt_p_is_sigma && self.q_delta_n_bound && self.yes_bound && self.no_bound && self.ratio
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapExpansion {
    pub n_t: String,
    pub sigma: String,
    pub beta: String,
    pub q: String,
    pub yes_bound: String,
    pub no_bound: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    #[serde(serialize_with = "ser_ratio")]
    pub epsilon: Ratio,
    pub n: u64,
    pub relaxed: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub delta: Ratio,
    /// Exponent `t = ε⁻⁵⁰`.
    #[serde(serialize_with = "ser_ratio")]
    pub t: Ratio,
    #[serde(serialize_with = "ser_ratio")]
    pub p: Ratio,
    /// `log10(log10(nᵗ))`; `None` when `n = 1`.
    pub log10_log10_n_t: Option<f64>,
    /// Multiples of `nᵗ`.
    pub coefficients: GapCoefficients,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Ratio,
    pub checks: GapChecks,
    pub expansion: Option<GapExpansion>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

fn admissible(eps: &Ratio, n: u64, relaxed: bool) -> Result<()> {
    let reject = |m: String| Err(Error::InvalidParams(m));
    if !eps.is_positive() || eps >= &int(1) {
        return reject(format!("epsilon {} must lie in (0, 1)", ratio_string(eps)));
    }
    if n == 0 {
        return reject("n must be positive".into());
    }
    if relaxed {
        return Ok(());
    }
    if eps >= &frac(1, 10_000_000_000u64) {
        return reject(format!("epsilon {} is not below 0.1^10", ratio_string(eps)));
    }
    if !eps.numer().is_one() {
        return reject(format!("1/epsilon is not an integer for epsilon {}", ratio_string(eps)));
    }
    if !n.is_multiple_of(2) {
        return reject(format!("n = {n} must be even"));
    }
    Ok(())
}

fn coefficients(eps: &Ratio, n: u64) -> GapCoefficients {
    let n = int(n);
    let inv3 = eps.pow(-3i32);
    let delta = eps.pow(100i32);
    let delta_10 = eps.pow(10i32);
    let half = frac(1, 2);
    // q = ε⁻³·N, nᵗ = N, p = ε⁻³·n/2 (absolute).
    let q = inv3.clone();
    let p = &inv3 * &n * &half;
    let sigma = &inv3 * &n * &half;
    let beta = &q * &n * &half + int(1);
    let nt_p = p.clone();
    let q_delta_n = &q * &delta * &n;
    let yes_bound = &q * (&half - &delta) * &n + (int(1) - &delta_10) * &p;
    let no_bound = (&q_delta_n + &nt_p).max(&beta + &delta_10 * &nt_p);
    GapCoefficients { sigma, beta, nt_p, q_delta_n, yes_bound, no_bound }
}

fn expand(eps: &Ratio, n: u64, c: &GapCoefficients, digits: u64) -> Result<GapExpansion> {
    let t = eps.pow(-50i32);
    if !t.is_integer() {
        return Err(Error::InvalidParams("exponent t is not an integer; cannot expand".into()));
    }
    let t = t.to_integer();
    let n_t = if n == 1 {
        BigInt::one()
    } else {
        let estimate = t.to_f64().unwrap_or(f64::INFINITY) * (n as f64).log10();
        let fits = estimate.is_finite() && estimate < digits as f64;
        match t.to_u32().filter(|_| fits) {
            Some(t) => Pow::pow(BigInt::from(n), t),
            None => {
                return Err(Error::CapExceeded {
                    what: "gap expansion digits",
                    size: estimate.min(u128::MAX as f64) as u128,
                    cap: digits as u128,
                })
            }
        }
    };
    let scale = |r: &Ratio| {
        let v = r * Ratio::from_integer(n_t.clone());
        if v.is_integer() {
            v.to_integer().to_string()
        } else {
            ratio_string(&v)
        }
    };
    Ok(GapExpansion {
        n_t: n_t.to_string(),
        sigma: scale(&c.sigma),
        beta: scale(&c.beta),
        q: scale(&eps.pow(-3i32)),
        yes_bound: scale(&c.yes_bound),
        no_bound: scale(&c.no_bound),
    })
}

/// Computes the gap quantities for `ε` and `n` and checks the chain
/// `yes ≥ (2−ε²)σ`, `no < (1+ε²)σ`, `yes/no > 2−ε`.
pub fn gap_calculator(eps: &Ratio, n: u64, opts: GapOptions) -> Result<GapReport> {
    admissible(eps, n, opts.relaxed)?;
    let c = coefficients(eps, n);
    let e2 = eps.pow(2i32);
    let e3 = eps.pow(3i32);
    let ratio = &c.yes_bound / &c.no_bound;
    let checks = GapChecks {
        beta_bound: c.beta <= &c.sigma + int(2) * &e3 * &c.sigma,
        nt_p_is_sigma: c.nt_p == c.sigma,
        q_delta_n_bound: c.q_delta_n <= &e3 * &c.sigma,
        yes_bound: c.yes_bound >= (int(2) - &e2) * &c.sigma,
        no_bound: c.no_bound < (int(1) + &e2) * &c.sigma,
        ratio: ratio > int(2) - eps,
    };
    let log10_log10_n_t = (n > 1).then(|| {
        let inv = ratio_to_f64_log10(&eps.recip());
        50.0 * inv + (n as f64).log10().log10()
    });
    let expansion = match opts.expand_digits {
        Some(d) => Some(expand(eps, n, &c, d)?),
        None => None,
    };
    Ok(GapReport {
        epsilon: eps.clone(),
        n,
        relaxed: opts.relaxed,
        delta: eps.pow(100i32),
        t: eps.pow(-50i32),
        p: c.nt_p.clone(),
        log10_log10_n_t,
        coefficients: c,
        ratio,
        checks,
        expansion,
    })
}

/// `log10` of a positive rational whose parts may exceed `f64`.
fn ratio_to_f64_log10(r: &Ratio) -> f64 {
    let log10 = |b: &BigInt| {
        let bits = b.bits();
        let shift = bits.saturating_sub(60);
        (b >> shift).to_f64().unwrap_or(1.0).log10() + shift as f64 * std::f64::consts::LOG10_2
    };
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log10(r.numer()) - log10(r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn relaxed() -> GapOptions {
        GapOptions { relaxed: true, expand_digits: None }
    }

    #[test]
    fn half_two() {
        let r = gap_calculator(&frac(1, 2), 2, relaxed()).unwrap();
        assert_eq!(r.coefficients.sigma, int(8));
        assert_eq!(r.coefficients.beta, int(9));
        assert!(r.checks.all(), "{:?}", r.checks);
        assert_eq!(r.t, int(1u64 << 50));
    }

    #[test]
    fn strict_admissibility() {
        let strict = GapOptions::default();
        assert!(gap_calculator(&frac(1, 10), 2, strict).is_err());
        assert!(gap_calculator(&frac(3, 40_000_000_000u64), 2, strict).is_err());
        assert!(gap_calculator(&frac(1, 20_000_000_000u64), 3, strict).is_err());
        let ok = gap_calculator(&frac(1, 20_000_000_000u64), 2, strict).unwrap();
        assert!(ok.checks.all());
        let mag = ok.log10_log10_n_t.unwrap();
        assert!((mag - (50.0 * 2e10f64.log10() + 2f64.log10().log10())).abs() < 1e-9);
    }

    #[test]
    fn expansion_only_when_small() {
        let opts = GapOptions { relaxed: true, expand_digits: Some(1000) };
        let e = gap_calculator(&frac(1, 2), 1, opts).unwrap().expansion.unwrap();
        assert_eq!(e.n_t, "1");
        assert_eq!(e.sigma, "4");
        assert!(matches!(gap_calculator(&frac(1, 2), 2, opts), Err(Error::CapExceeded { .. })));
        assert!(gap_calculator(&frac(2, 3), 2, opts).is_err());
    }
}
