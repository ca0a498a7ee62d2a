//! Grid checks of the two calculus inequalities behind the uniform-cost
//! gap, evaluated in multi-precision floating point:
//!
//! * `δ^0.1 − (1/2 + δ)^(δ^(-1/2)) ≥ 0` for `δ ∈ (1e-9, 0.1)`,
//!   equivalently `f(δ) = ln(δ)/10 − ln(1/2 + δ)/√δ ≥ 0`;
//! * `δ^0.1 − 1 + (1 − δ)^(δ^(-1/2)) > 0` for `δ ∈ (1e-12, 1e-10)`.
//!
//! A margin no larger than its error bound is inconclusive rather than a
//! counterexample: a finite grid can falsify, never prove.

use astro_float_num::{BigFloat, Consts, Radix, RoundingMode};
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridResult {
    pub name: &'static str,
    pub lower: f64,
    pub upper: f64,
    pub points: usize,
    pub min_margin: f64,
    pub min_margin_at: f64,
    /// Smallest margin divided by its error bound.
    pub min_margin_over_error: f64,
    pub positive: usize,
    pub inconclusive: usize,
    pub falsified: usize,
}

impl GridResult {
    pub fn all_positive(&self) -> bool {
        self.positive == self.points
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub precision_bits: usize,
    pub half_power: GridResult,
    /// Same points, transformed logarithmic form.
    pub half_power_log_form: GridResult,
    pub one_minus_power: GridResult,
    /// `f(0.1)` of the logarithmic form.
    pub anchor_f_at_tenth: f64,
}

impl InequalityReport {
    pub fn all_positive(&self) -> bool {
        self.half_power.all_positive() && self.half_power_log_form.all_positive() && self.one_minus_power.all_positive()
    }
}

struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    fn num(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, self.p, RM, &mut self.cc)
    }

    fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.p, RM, &mut self.cc)
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.p, RM, &mut self.cc)
    }

    /// `x^y` as `exp(y·ln x)`, with the exponent `y·ln x` returned for the
    /// error estimate.
    fn pow(&mut self, x: &BigFloat, y: &BigFloat) -> (BigFloat, BigFloat) {
        let z = y.mul(&self.ln(x), self.p, RM);
        (self.exp(&z), z)
    }

    fn decimal(&mut self, x: &BigFloat) -> f64 {
        x.format(Radix::Dec, RM, &mut self.cc)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    /// Log-spaced interior grid `a·(b/a)^(i/(N+1))`, `i = 1..=N`.
    fn grid(&mut self, a: &BigFloat, b: &BigFloat, n: usize) -> Vec<BigFloat> {
        let (la, lb) = (self.ln(a), self.ln(b));
        let span = lb.sub(&la, self.p, RM);
        let steps = BigFloat::from_u64(n as u64 + 1, self.p);
        (1..=n)
            .map(|i| {
                let frac = BigFloat::from_u64(i as u64, self.p).div(&steps, self.p, RM);
                let e = la.add(&frac.mul(&span, self.p, RM), self.p, RM);
                self.exp(&e)
            })
            .collect()
    }

    /// Rounding error bound for a difference of terms each computed with a
    /// few correctly rounded operations; `amplification` carries the
    /// condition number of the exponentials.
    fn error_bound(&mut self, magnitudes: &[(f64, f64)]) -> f64 {
        let ulp = 2f64.powi(-(self.p as i32) + 8);
        magnitudes.iter().map(|&(m, amp)| m.abs() * (1.0 + amp.abs()) * ulp).sum::<f64>() + ulp
    }
}

struct Tally {
    name: &'static str,
    lower: f64,
    upper: f64,
    points: usize,
    min: (f64, f64, f64),
    positive: usize,
    inconclusive: usize,
    falsified: usize,
}

impl Tally {
    fn new(name: &'static str, lower: f64, upper: f64) -> Self {
        Tally {
            name,
            lower,
            upper,
            points: 0,
            min: (f64::INFINITY, f64::NAN, f64::INFINITY),
            positive: 0,
            inconclusive: 0,
            falsified: 0,
        }
    }

    fn record(&mut self, at: f64, margin: f64, err: f64) {
        self.points += 1;
        if margin.is_nan() || margin.abs() <= err {
            self.inconclusive += 1;
        } else if margin > 0.0 {
            self.positive += 1;
        } else {
            self.falsified += 1;
        }
        if margin < self.min.0 || self.min.1.is_nan() {
            self.min = (margin, at, margin / err);
        }
    }

    fn finish(self) -> GridResult {
        GridResult {
            name: self.name,
            lower: self.lower,
            upper: self.upper,
            points: self.points,
            min_margin: self.min.0,
            min_margin_at: self.min.1,
            min_margin_over_error: self.min.2,
            positive: self.positive,
            inconclusive: self.inconclusive,
            falsified: self.falsified,
        }
    }
}

fn log_form(ctx: &mut Ctx, x: &BigFloat) -> (BigFloat, f64) {
    let p = ctx.p;
    let half = ctx.num("0.5");
    let ten = BigFloat::from_u64(10, p);
    let a = ctx.ln(x).div(&ten, p, RM);
    let b = ctx.ln(&half.add(x, p, RM)).div(&x.sqrt(p, RM), p, RM);
    let (fa, fb) = (ctx.decimal(&a), ctx.decimal(&b));
    let err = ctx.error_bound(&[(fa, 1.0), (fb, 1.0)]);
    (a.sub(&b, p, RM), err)
}

pub fn verify_inequalities(grid_points: usize) -> Result<InequalityReport> {
    verify_inequalities_with(grid_points, DEFAULT_PRECISION)
}

pub fn verify_inequalities_with(grid_points: usize, precision_bits: usize) -> Result<InequalityReport> {
    if grid_points == 0 {
        return Err(Error::InvalidParams("grid needs at least one point".into()));
    }
    if precision_bits < 128 {
        return Err(Error::InvalidParams(format!("precision {precision_bits} below 128 bits")));
    }
    let mut ctx = Ctx {
        p: precision_bits,
        cc: Consts::new().map_err(|e| Error::InvalidParams(format!("precision setup failed: {e:?}")))?,
    };
    let p = ctx.p;
    let one = BigFloat::from_u64(1, p);
    let half = ctx.num("0.5");
    let tenth = ctx.num("0.1");
    let minus_half = ctx.num("-0.5");

    let mut first = Tally::new("half_power", 1e-9, 0.1);
    let mut first_log = Tally::new("half_power_log_form", 1e-9, 0.1);
    let (a, b) = (ctx.num("1e-9"), tenth.clone());
    for d in ctx.grid(&a, &b, grid_points) {
        let (root, zr) = ctx.pow(&d, &tenth);
        let exponent = ctx.pow(&d, &minus_half).0;
        let (power, zp) = ctx.pow(&half.add(&d, p, RM), &exponent);
        let margin = root.sub(&power, p, RM);
        let mags = [(ctx.decimal(&root), ctx.decimal(&zr)), (ctx.decimal(&power), ctx.decimal(&zp))];
        let err = ctx.error_bound(&mags);
        let (at, m) = (ctx.decimal(&d), ctx.decimal(&margin));
        first.record(at, m, err);
        let (lf, lerr) = log_form(&mut ctx, &d);
        let lf = ctx.decimal(&lf);
        first_log.record(at, lf, lerr);
    }

    let mut second = Tally::new("one_minus_power", 1e-12, 1e-10);
    let (a, b) = (ctx.num("1e-12"), ctx.num("1e-10"));
    for d in ctx.grid(&a, &b, grid_points) {
        let (root, zr) = ctx.pow(&d, &tenth);
        let exponent = ctx.pow(&d, &minus_half).0;
        let (power, zp) = ctx.pow(&one.sub(&d, p, RM), &exponent);
        let margin = root.sub(&one, p, RM).add(&power, p, RM);
        let mags = [(ctx.decimal(&root), ctx.decimal(&zr)), (1.0, 0.0), (ctx.decimal(&power), ctx.decimal(&zp))];
        let err = ctx.error_bound(&mags);
        let (at, m) = (ctx.decimal(&d), ctx.decimal(&margin));
        second.record(at, m, err);
    }

    let anchor = log_form(&mut ctx, &tenth).0;
    let anchor_f_at_tenth = ctx.decimal(&anchor);
    Ok(InequalityReport {
        precision_bits: p,
        half_power: first.finish(),
        half_power_log_form: first_log.finish(),
        one_minus_power: second.finish(),
        anchor_f_at_tenth,
    })
}
