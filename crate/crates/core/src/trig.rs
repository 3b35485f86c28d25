//! Cotangent and sinc bounds from the concavity of `sin` on `[0, π]`, rational
//! bounds for `tan`, `cos` and `sin` at `π/n`, and a sweep of those rational
//! bounds over real arguments.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, Numeric};
use crate::verdict::{Check, Status};

/// An angle, either as an exact multiple of π or in radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    PiMultiple(Rational),
    Radians(Rational),
}

impl Angle {
    /// Accepts `pi`, `pi/4`, `3pi/8`, `2*pi/5` or a plain rational in radians.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let Some((pre, post)) = s.split_once("pi") else {
            return parse_rational(s).map(Angle::Radians);
        };
        let err = || Error::Parse(text.to_string());
        let pre = pre.trim().trim_end_matches('*').trim();
        let num = if pre.is_empty() { Rational::from(1) } else { parse_rational(pre)? };
        let post = post.trim();
        let den = if post.is_empty() {
            Rational::from(1)
        } else {
            parse_rational(post.strip_prefix('/').ok_or_else(err)?)?
        };
        if den == 0 {
            return Err(err());
        }
        Ok(Angle::PiMultiple(num / den))
    }

    /// `self / k` as an enclosure.
    pub fn scaled(&self, k: &Rational, prec: u32) -> Numeric {
        match self {
            Angle::PiMultiple(q) => Numeric::pi(prec) * Numeric::from(Rational::from(q * k)),
            Angle::Radians(x) => Numeric::from(Rational::from(x * k)),
        }
    }

    pub fn value(&self, prec: u32) -> Numeric {
        self.scaled(&Rational::from(1), prec)
    }

    /// `0 < x <= π/2`.
    fn check_range(&self, prec: u32) -> Result<()> {
        let ok = match self {
            Angle::PiMultiple(q) => *q > 0 && *q <= Rational::from((1, 2)),
            Angle::Radians(x) => {
                let half_pi = Numeric::pi(prec) / Numeric::from(2);
                *x > 0 && Numeric::from(x.clone()).certified_cmp(&half_pi) != Some(Ordering::Greater)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("angle must satisfy 0 < x <= pi/2, got {self}")))
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(q) => write!(f, "({q})pi"),
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

/// A value with optional certified bounds on either side.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigBounds {
    pub lower: Option<Numeric>,
    pub value: Numeric,
    pub upper: Option<Numeric>,
    pub checks: Vec<Check>,
}

fn two_sided(
    name: &str,
    lower: Option<Numeric>,
    value: Numeric,
    upper: Option<Numeric>,
) -> TrigBounds {
    let mut checks = Vec::new();
    if let Some(lo) = &lower {
        checks.push(Check::new(format!("{name}: lower"), lo.clone(), value.clone()));
    }
    if let Some(hi) = &upper {
        checks.push(Check::new(format!("{name}: upper"), value.clone(), hi.clone()));
    }
    TrigBounds {
        lower,
        value,
        upper,
        checks,
    }
}

fn cot_of(x: &Angle, k: usize, prec: u32) -> Result<Numeric> {
    x.scaled(&Rational::from((1, k)), prec).cot(prec)
}

/// Bounds on `cot(x/n)`; the lower side needs `n >= 2`.
pub fn cot_bounds(x: &Angle, n: usize, prec: u32) -> Result<TrigBounds> {
    x.check_range(prec)?;
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let cot_x = cot_of(x, 1, prec)?;
    let cot_next = cot_of(x, n + 1, prec)?;
    let value = cot_of(x, n, prec)?;
    let frac = |p: usize, q: usize| Numeric::ratio(p as i64, q as i64);
    let lower = (n >= 2).then(|| &(&frac(n - 1, n) * &cot_next) + &(&frac(1, n) * &cot_x));
    let upper = &(&frac(n + 1, n + 2) * &cot_next) - &(&frac(1, n + 2) * &cot_x);
    Ok(two_sided("cot(x/n)", lower, value, Some(upper)))
}

/// Bounds on `sin(x)/x`; the upper side needs `n >= 2`.
pub fn sinc_bounds(x: &Angle, n: usize, prec: u32) -> Result<TrigBounds> {
    x.check_range(prec)?;
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let xv = x.value(prec);
    let (sin, cos) = (xv.sin(prec), xv.cos(prec));
    let value = sin.try_div(&xv)?;
    let s_cot = &sin * &cot_of(x, n, prec)?;
    let lower = (&s_cot + &cos).try_div(&Numeric::from(n + 1))?;
    let upper = if n >= 2 {
        Some((&s_cot - &cos).try_div(&Numeric::from(n - 1))?)
    } else {
        None
    };
    Ok(two_sided("sin(x)/x", Some(lower), value, upper))
}

/// `1/(n-1) < tan(π/(2n)) < 3/(n+1)`, `n >= 3`.
pub fn tan_half_bounds(n: usize, prec: u32) -> Result<TrigBounds> {
    if n < 3 {
        return Err(Error::invalid(format!("n must be at least 3, got {n}")));
    }
    let value = Angle::PiMultiple(Rational::from((1, 2 * n))).value(prec).tan(prec)?;
    Ok(two_sided(
        "tan(pi/(2n))",
        Some(Numeric::ratio(1, n as i64 - 1)),
        value,
        Some(Numeric::ratio(3, n as i64 + 1)),
    ))
}

/// `(k-1)/k < tan(π/(2(k+1))) / tan(π/(2k)) < (k+1)/(k+2)`, `k >= 2`.
pub fn tan_half_ratio(k: usize, prec: u32) -> Result<TrigBounds> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    let t = |m: usize| Angle::PiMultiple(Rational::from((1, 2 * m))).value(prec).tan(prec);
    let value = t(k + 1)?.try_div(&t(k)?)?;
    Ok(two_sided(
        "tan ratio",
        Some(Numeric::ratio(k as i64 - 1, k as i64)),
        value,
        Some(Numeric::ratio(k as i64 + 1, k as i64 + 2)),
    ))
}

/// Products of the single-step ratio bounds for `k = 2..n-1`, `n >= 3`.
///
/// Because `tan(π/4) = 1` the middle terms telescope to `tan(π/(2n))`, so these
/// are bounds on the same quantity as [`tan_half_bounds`].
pub fn telescoped_tan_bounds(n: usize) -> Result<(Rational, Rational)> {
    if n < 3 {
        return Err(Error::invalid(format!("n must be at least 3, got {n}")));
    }
    let lower = (2..n).fold(Rational::from(1), |acc, k| acc * Rational::from((k - 1, k)));
    let upper = (2..n).fold(Rational::from(1), |acc, k| acc * Rational::from((k + 1, k + 2)));
    Ok((lower, upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TrigFn {
    Tan,
    Cos,
    Sin,
}

impl TrigFn {
    pub const ALL: [TrigFn; 3] = [TrigFn::Tan, TrigFn::Cos, TrigFn::Sin];

    /// `n·gap` for tan and sin, `n²·gap` for cos.
    pub fn gap_scale_power(self) -> u32 {
        match self {
            TrigFn::Cos => 2,
            _ => 1,
        }
    }

    /// Limit of the scaled gap.
    pub fn gap_limit(self) -> i64 {
        match self {
            TrigFn::Cos => 16,
            _ => 4,
        }
    }

    fn lower_bound(self, n: &Numeric) -> Result<Numeric> {
        let c = |k: i64| Numeric::from(k);
        match self {
            TrigFn::Tan => (&c(2) * &(n - &c(1))).try_div(&(n * &(n - &c(2)))),
            TrigFn::Cos => {
                (&(n - &c(2)) * &(n + &c(4))).try_div(&(&(n * n) + &(&(&c(2) * n) + &c(10))))
            }
            TrigFn::Sin => {
                let n1 = n + &c(1);
                let q = &(n * n) + &(&(&c(2) * n) + &c(10));
                (&c(2) * &(&n1 * &n1)).try_div(&(&(n - &c(1)) * &q))
            }
        }
    }

    fn upper_bound(self, n: &Numeric) -> Result<Numeric> {
        let c = |k: i64| Numeric::from(k);
        match self {
            TrigFn::Tan => (&c(6) * &(n + &c(1))).try_div(&(&(n + &c(4)) * &(n - &c(2)))),
            TrigFn::Cos => {
                (n * &(n - &c(2))).try_div(&(&(&(n * n) - &(&c(2) * n)) + &c(2)))
            }
            TrigFn::Sin => {
                let m1 = n - &c(1);
                let q = &(&(n * n) - &(&c(2) * n)) + &c(2);
                (&c(6) * &(&m1 * &m1)).try_div(&(&(n + &c(1)) * &q))
            }
        }
    }

    /// The closed-form difference `upper - lower`.
    fn gap_formula(self, n: &Numeric) -> Result<Numeric> {
        let c = |k: i64| Numeric::from(k);
        let pw = |e: u32| -> Numeric { (1..e).fold(n.clone(), |acc, _| &acc * n) };
        match self {
            TrigFn::Tan => {
                let top = &(&c(4) * &pw(2)) + &c(8);
                let bottom = &(&pw(2) + &(&c(2) * n)) - &c(8);
                top.try_div(&(n * &bottom))
            }
            TrigFn::Cos => {
                let top = &(&(&c(16) * &pw(4)) - &(&c(40) * &pw(3))) + &(&c(16) * &pw(2));
                let bottom = &(&(&pw(4) + &(&c(8) * &pw(2))) - &(&c(16) * n)) + &c(20);
                top.try_div(&(&pw(2) * &bottom))
            }
            TrigFn::Sin => {
                let top: Numeric = [(4, 6), (-8, 5), (44, 4), (-152, 3), (160, 2), (-64, 1)]
                    .iter()
                    .map(|&(k, e)| &c(k) * &pw(e))
                    .sum();
                let bottom: Numeric = [(1, 6), (7, 4), (-16, 3), (12, 2), (16, 1)]
                    .iter()
                    .map(|&(k, e)| &c(k) * &pw(e))
                    .sum::<Numeric>()
                    - c(20);
                top.try_div(&(n * &bottom))
            }
        }
    }

    fn eval_at_pi_over(self, n: &Numeric, prec: u32) -> Result<Numeric> {
        let angle = Numeric::pi(prec).try_div(n)?;
        match self {
            TrigFn::Tan => angle.tan(prec),
            TrigFn::Cos => Ok(angle.cos(prec)),
            TrigFn::Sin => Ok(angle.sin(prec)),
        }
    }
}

impl fmt::Display for TrigFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrigFn::Tan => "tan",
            TrigFn::Cos => "cos",
            TrigFn::Sin => "sin",
        })
    }
}

impl FromStr for TrigFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tan" => Ok(TrigFn::Tan),
            "cos" => Ok(TrigFn::Cos),
            "sin" => Ok(TrigFn::Sin),
            _ => Err(Error::UnknownFunction(s.to_string())),
        }
    }
}

/// Rational bounds at `π/arg` and the exact gap identity.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalTrigReport {
    pub function: TrigFn,
    pub arg: Numeric,
    pub bounds: TrigBounds,
    /// `upper - lower`, computed directly.
    pub gap: Numeric,
    /// The closed-form expression of the same difference.
    pub gap_formula: Numeric,
    /// Exact agreement of the two, when both are rational.
    pub gap_matches: Option<bool>,
    /// True unless `arg` is an integer `>= 3`, where the bounds are proven.
    pub conjectural: bool,
}

fn check_arg(arg: &Numeric) -> Result<()> {
    if arg.certified_cmp(&Numeric::from(2)) != Some(Ordering::Greater) {
        return Err(Error::domain(format!("argument must exceed 2, got {arg}")));
    }
    Ok(())
}

pub fn rational_trig_bounds(function: TrigFn, arg: &Numeric, prec: u32) -> Result<RationalTrigReport> {
    check_arg(arg)?;
    let lower = function.lower_bound(arg)?;
    let upper = function.upper_bound(arg)?;
    let value = function.eval_at_pi_over(arg, prec)?;
    let gap = &upper - &lower;
    let gap_formula = function.gap_formula(arg)?;
    let gap_matches = match (gap.as_rational(), gap_formula.as_rational()) {
        (Some(g), Some(f)) => Some(g == f),
        _ => None,
    };
    let conjectural = !matches!(arg.as_rational(), Some(q) if *q.denom() == 1);
    Ok(RationalTrigReport {
        function,
        arg: arg.clone(),
        bounds: two_sided(&format!("{function}(pi/n)"), Some(lower), value, Some(upper)),
        gap,
        gap_formula,
        gap_matches,
        conjectural,
    })
}

/// One row of the scaled-gap table.
#[derive(Clone, Debug, PartialEq)]
pub struct GapRow {
    pub n: u64,
    /// `n·gap` (tan, sin) or `n²·gap` (cos), exact.
    pub scaled_gap: Rational,
    /// `scaled_gap - limit`.
    pub deviation: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapAsymptotics {
    pub function: TrigFn,
    pub limit: i64,
    pub rows: Vec<GapRow>,
    /// Smallest `n` from which `|deviation|` never increases again.
    pub monotone_from: u64,
}

pub fn gap_asymptotics(function: TrigFn, n_max: u64) -> Result<GapAsymptotics> {
    if n_max < 3 {
        return Err(Error::invalid(format!("n_max must be at least 3, got {n_max}")));
    }
    let limit = function.gap_limit();
    let rows = (3..=n_max)
        .into_par_iter()
        .map(|n| {
            let arg = Numeric::from(n);
            let gap = &function.upper_bound(&arg)? - &function.lower_bound(&arg)?;
            let gap = gap.as_rational().expect("rational bounds at rational n").clone();
            let scaled = gap * Rational::from(rug::Integer::from(n).pow(function.gap_scale_power()));
            let deviation = Rational::from(&scaled - limit);
            Ok(GapRow {
                n,
                scaled_gap: scaled,
                deviation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut monotone_from = n_max;
    for w in rows.windows(2).rev() {
        if w[1].deviation.clone().abs() <= w[0].deviation.clone().abs() {
            monotone_from = w[0].n;
        } else {
            break;
        }
    }
    Ok(GapAsymptotics {
        function,
        limit,
        rows,
        monotone_from,
    })
}

/// One point of the real-argument sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub x: Rational,
    pub lower: Numeric,
    pub value: Numeric,
    pub upper: Numeric,
    /// `min(value - lower, upper - value)`.
    pub margin: Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub function: TrigFn,
    pub min_margin: Numeric,
    pub argmin: Rational,
    /// Points where the margin is certifiably negative.
    pub violations: Vec<SweepRow>,
    /// Points where the sign of the margin could not be certified.
    pub undecided: Vec<SweepRow>,
    /// Grid rows in increasing `x`, followed by nothing else; refinement points are not included.
    pub rows: Vec<SweepRow>,
    pub refined_points: usize,
}

impl SweepReport {
    pub const EVIDENCE: &'static str = "numerical evidence at sampled points, not a proof";

    pub fn status(&self) -> Status {
        if !self.violations.is_empty() {
            Status::Violated
        } else if !self.undecided.is_empty() {
            Status::Inconclusive
        } else {
            Status::HoldsStrictly
        }
    }
}

fn sweep_point(function: TrigFn, x: &Rational, prec: u32) -> Result<SweepRow> {
    let arg = Numeric::from(x.clone());
    let lower = function.lower_bound(&arg)?;
    let upper = function.upper_bound(&arg)?;
    let value = function.eval_at_pi_over(&arg, prec)?;
    let margin = (&value - &lower).min(&(&upper - &value));
    Ok(SweepRow {
        x: x.clone(),
        lower,
        value,
        upper,
        margin,
    })
}

/// Width at which the refinement around a local minimum stops.
fn refine_tolerance() -> Rational {
    Rational::from((1, 1_000_000_000))
}

/// Golden-section search for the smallest margin on `[lo, hi]`.
fn refine(function: TrigFn, lo: &Rational, hi: &Rational, prec: u32) -> Result<Vec<SweepRow>> {
    let tol = refine_tolerance();
    // 0.381966 ≈ 2 - golden ratio, as an exact rational
    let g = Rational::from((381_966, 1_000_000));
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let mut seen = Vec::new();
    let at = |t: &Rational| sweep_point(function, t, prec);
    let mut c = Rational::from(&a + Rational::from(&b - &a) * &g);
    let mut d = Rational::from(&b - Rational::from(&b - &a) * &g);
    let mut fc = at(&c)?;
    let mut fd = at(&d)?;
    while Rational::from(&b - &a) > tol {
        if fc.margin.to_f64() <= fd.margin.to_f64() {
            b = d;
            d = c;
            seen.push(fd);
            fd = fc;
            c = Rational::from(&a + Rational::from(&b - &a) * &g);
            fc = at(&c)?;
        } else {
            a = c;
            c = d;
            seen.push(fc);
            fc = fd;
            d = Rational::from(&b - Rational::from(&b - &a) * &g);
            fd = at(&d)?;
        }
    }
    seen.push(fc);
    seen.push(fd);
    Ok(seen)
}

/// Evaluates the bounds at `x_min + k·step` up to `x_max` (inclusive), then
/// refines around every local minimum of the margin down to width `1e-9`.
pub fn conjecture_sweep(
    function: TrigFn,
    x_min: &Rational,
    x_max: &Rational,
    step: &Rational,
    prec: u32,
) -> Result<SweepReport> {
    check_arg(&Numeric::from(x_min.clone()))?;
    if x_max < x_min {
        return Err(Error::invalid("x_max must not be below x_min"));
    }
    if *step <= 0 {
        return Err(Error::invalid("step must be positive"));
    }
    let count = (Rational::from(x_max - x_min) / step)
        .floor()
        .numer()
        .to_usize()
        .ok_or_else(|| Error::invalid("too many sweep points"))?;
    let mut xs: Vec<Rational> = (0..=count)
        .map(|k| Rational::from(x_min + Rational::from(step * k as u64)))
        .collect();
    if xs.last() != Some(x_max) {
        xs.push(x_max.clone());
    }
    let rows = xs
        .par_iter()
        .map(|x| sweep_point(function, x, prec))
        .collect::<Result<Vec<_>>>()?;

    let m: Vec<f64> = rows.iter().map(|r| r.margin.to_f64()).collect();
    let minima: Vec<usize> = (0..rows.len())
        .filter(|&i| {
            let left = i == 0 || m[i] <= m[i - 1];
            let right = i + 1 == rows.len() || m[i] <= m[i + 1];
            left && right
        })
        .collect();
    let refined = minima
        .par_iter()
        .map(|&i| {
            let lo = &xs[i.saturating_sub(1)];
            let hi = &xs[(i + 1).min(xs.len() - 1)];
            if lo == hi {
                Ok(Vec::new())
            } else {
                refine(function, lo, hi, prec)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let refined: Vec<SweepRow> = refined.into_iter().flatten().collect();

    let all = || rows.iter().chain(&refined);
    let best = all()
        .min_by(|p, q| {
            p.margin
                .to_f64()
                .partial_cmp(&q.margin.to_f64())
                .unwrap_or(Ordering::Equal)
                .then_with(|| p.x.cmp(&q.x))
        })
        .expect("at least one sweep point");
    let violations = all()
        .filter(|r| r.margin.sign() == Some(Ordering::Less))
        .cloned()
        .collect();
    let undecided = all().filter(|r| r.margin.sign().is_none()).cloned().collect();
    Ok(SweepReport {
        function,
        min_margin: best.margin.clone(),
        argmin: best.x.clone(),
        violations,
        undecided,
        refined_points: refined.len(),
        rows,
    })
}
