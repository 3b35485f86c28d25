//! p-logarithmic, identric and logarithmic means, and the brackets and ratio
//! inequalities obtained from power and reciprocal functions on `[a, b]`.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::convex::log_bracket;
use crate::error::{Error, Result};
use crate::function::{Convexity, Domain, FnSpec};
use crate::numeric::Numeric;
use crate::verdict::{Bracket, Check, PowerProduct};

/// Which mean to evaluate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MeanKind {
    /// `L_p` with `p ∉ {0, -1}`.
    Lp(#[serde(serialize_with = "ser_rational")] Rational),
    /// `I = L_0`.
    Identric,
    /// `L = L_{-1}`.
    Logarithmic,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl MeanKind {
    /// `L_p`, refusing the two exponents that belong to the limit means.
    pub fn lp(p: Rational) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("L_0 is the identric mean; use MeanKind::Identric"));
        }
        if p == -1 {
            return Err(Error::invalid(
                "L_-1 is the logarithmic mean; use MeanKind::Logarithmic",
            ));
        }
        Ok(MeanKind::Lp(p))
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanKind::Lp(p) => write!(f, "L_{p}"),
            MeanKind::Identric => f.write_str("identric"),
            MeanKind::Logarithmic => f.write_str("logarithmic"),
        }
    }
}

/// A pair `0 <= a <= b`, stored in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct MeanArgs {
    a: Numeric,
    b: Numeric,
}

impl MeanArgs {
    /// Sorts the pair; both must be nonnegative.
    pub fn new(x: Numeric, y: Numeric) -> Result<Self> {
        for v in [&x, &y] {
            if !matches!(v.sign(), Some(Ordering::Greater | Ordering::Equal)) {
                return Err(Error::domain(format!("mean arguments must be nonnegative, got {v}")));
            }
        }
        let (a, b) = match x.certified_cmp(&y) {
            Some(Ordering::Greater) => (y, x),
            Some(_) => (x, y),
            None => return Err(Error::domain("cannot order the mean arguments")),
        };
        Ok(MeanArgs { a, b })
    }

    pub fn a(&self) -> &Numeric {
        &self.a
    }

    pub fn b(&self) -> &Numeric {
        &self.b
    }

    fn is_degenerate(&self) -> bool {
        self.a.certified_cmp(&self.b) == Some(Ordering::Equal)
    }

    fn a_is_zero(&self) -> bool {
        self.a.sign() == Some(Ordering::Equal)
    }

    fn strict(&self) -> Result<()> {
        if self.a.certified_cmp(&self.b) != Some(Ordering::Less) {
            return Err(Error::domain(format!(
                "need a < b, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

/// Bound on `|b - a| / (a + b)` below which the closed forms are replaced by series.
fn near_degenerate(args: &MeanArgs, prec: u32) -> Option<Rational> {
    let (a, b) = (args.a.as_rational()?, args.b.as_rational()?);
    if *a <= 0 {
        return None;
    }
    let u = Rational::from(b - a) / Rational::from(b + a);
    let threshold = Rational::from((1, Integer::from(1) << (prec / 2)));
    (u < threshold).then_some(u)
}

/// Midpoint-centred series, with `u = (b-a)/(a+b)` and `c = (a+b)/2`.
fn series_mean(kind: &MeanKind, args: &MeanArgs, u: &Rational, prec: u32) -> Result<Numeric> {
    let sum = Rational::from(args.a.as_rational().expect("exact") + args.b.as_rational().expect("exact"));
    let c = Numeric::from(sum / 2u32);
    let u2 = Rational::from(u * u);
    let u4 = Rational::from(&u2 * &u2);
    let u6 = Rational::from(&u4 * &u2);
    let tail = |scale: Rational| Rational::from(&u6 / (Rational::from(1) - &u2)) * scale;
    match kind {
        MeanKind::Lp(p) => {
            // avg of (c + s)^p = c^p Σ_k C(p, 2k) u^{2k} / (2k + 1); |C(p, j)| <= (|p| + 1)^j
            let binom = |j: u32| -> Rational {
                (0..j).fold(Rational::from(1), |acc, i| acc * Rational::from(p - i) / (i + 1))
            };
            let series = Rational::from(1) + binom(2) * &u2 / 3 + binom(4) * &u4 / 5;
            let v = Rational::from(p.clone().abs() + 1) * u;
            let v6 = Rational::from((&v).pow(6));
            let remainder = v6 / (Rational::from(1) - v);
            let avg = Numeric::from(series).widen(&remainder, prec);
            Ok(c * avg.pow(&Rational::from(p.recip_ref()), prec)?)
        }
        MeanKind::Identric => {
            // ln I = ln c - u²/6 - u⁴/20 - (a tail below u⁶/(42(1-u²)))
            let series = Rational::from(&u2 / 6) + Rational::from(&u4 / 20);
            let half = tail(Rational::from((1, 84)));
            let log = Numeric::from(-(series + &half)).widen(&half, prec);
            Ok(c * log.exp(prec))
        }
        MeanKind::Logarithmic => {
            // c / L = 1 + u²/3 + u⁴/5 + (a tail below u⁶/(7(1-u²)))
            let series = Rational::from(1) + Rational::from(&u2 / 3) + Rational::from(&u4 / 5);
            let half = tail(Rational::from((1, 14)));
            let ratio = Numeric::from(series + &half).widen(&half, prec);
            c.try_div(&ratio)
        }
    }
}

/// Value of the chosen mean; `a = b` returns `a`.
pub fn mean_value(kind: &MeanKind, args: &MeanArgs, prec: u32) -> Result<Numeric> {
    if let MeanKind::Lp(p) = kind {
        MeanKind::lp(p.clone())?;
    }
    let zero_allowed = match kind {
        MeanKind::Lp(p) => *p > -1,
        _ => false,
    };
    if args.a_is_zero() && !zero_allowed {
        return Err(Error::domain(format!("the {kind} mean needs a > 0")));
    }
    if args.is_degenerate() {
        return Ok(args.a.clone());
    }
    let exact_lp = matches!(kind, MeanKind::Lp(p) if *p.denom() == 1);
    if !exact_lp {
        if let Some(u) = near_degenerate(args, prec) {
            return series_mean(kind, args, &u, prec);
        }
    }
    let (a, b) = (&args.a, &args.b);
    let width = b - a;
    match kind {
        MeanKind::Lp(p) => {
            let q = Rational::from(p + 1);
            let diff = &b.pow(&q, prec)? - &a.pow(&q, prec)?;
            let avg = diff.try_div(&(Numeric::from(q) * &width))?;
            avg.pow(&Rational::from(p.recip_ref()), prec)
        }
        MeanKind::Identric => {
            // ln I = (b ln b - a ln a)/(b - a) - 1
            let blnb = b * &b.ln(prec)?;
            let alna = a * &a.ln(prec)?;
            let log = &(&blnb - &alna).try_div(&width)? - &Numeric::one();
            Ok(log.exp(prec))
        }
        MeanKind::Logarithmic => width.try_div(&(&b.ln(prec)? - &a.ln(prec)?)),
    }
}

/// `k`-th point `(k - i)a + ib` of the unnormalized grid of order `k`.
fn grid_term(a: &Numeric, b: &Numeric, k: usize, i: usize) -> Numeric {
    &(a * &Numeric::from(k - i)) + &(b * &Numeric::from(i))
}

fn power_sum_over(
    a: &Numeric,
    b: &Numeric,
    k: usize,
    range: std::ops::RangeInclusive<usize>,
    r: &Rational,
    prec: u32,
) -> Result<Numeric> {
    range
        .map(|i| grid_term(a, b, k, i).pow(r, prec))
        .sum::<Result<Numeric>>()
}

/// `radicand^{1/r}` together with an exact representation when the radicand is rational.
struct Rooted {
    value: Numeric,
    exact: Option<PowerProduct>,
}

fn rooted(radicand: Numeric, inv: &Rational, prec: u32) -> Result<Rooted> {
    let exact = radicand
        .as_rational()
        .filter(|q| **q > 0)
        .map(|q| PowerProduct::of(q.clone(), inv.clone()));
    Ok(Rooted {
        value: radicand.pow(inv, prec)?,
        exact,
    })
}

/// `smaller <= larger` decided exactly when both sides have power-product forms.
fn product_check(
    name: impl Into<String>,
    smaller: (Numeric, Option<PowerProduct>),
    larger: (Numeric, Option<PowerProduct>),
) -> Check {
    let witness = match (&smaller.1, &larger.1) {
        (Some(s), Some(l)) => l.cmp_exact(s),
        _ => None,
    };
    Check::with_witness(name, smaller.0, larger.0, witness)
}

fn rational_side(q: Rational) -> (Numeric, Option<PowerProduct>) {
    (Numeric::from(q.clone()), Some(PowerProduct::rational(q)))
}

fn rooted_side(r: Rooted) -> (Numeric, Option<PowerProduct>) {
    (r.value, r.exact)
}

/// Orders `(value, bound)` as `(smaller, larger)`.
fn oriented<T>(value: T, bound: T, value_is_smaller: bool) -> (T, T) {
    if value_is_smaller {
        (value, bound)
    } else {
        (bound, value)
    }
}

/// Ratio chains around `n/(n+1)` for `x^r` on `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpRatioReport {
    /// Interior sums, `n >= 2`: `(n Σ_{1}^{n-1} / ((n-1) Σ_{1}^{n}))^{1/r}` against `n/(n+1)`.
    pub left: Option<Check>,
    /// Endpoint-inclusive sums: `n/(n+1)` against `((n+2) Σ_{0}^{n} / ((n+1) Σ_{0}^{n+1}))^{1/r}`.
    /// Absent when `a = 0` and `r < 0`.
    pub right: Option<Check>,
    /// True for `r < 0` or `0 < r < 1`, where both inequalities point the other way.
    pub reversed: bool,
}

fn check_exponent(r: &Rational) -> Result<bool> {
    if *r == 0 || *r == 1 {
        return Err(Error::invalid(format!(
            "exponent r must avoid 0 and 1, got {r}"
        )));
    }
    Ok(*r < 1)
}

/// Ratio inequalities for `x^r` with `0 <= a < b`.
///
/// `a = 0` with `r < 0` is accepted here: the interior sums never touch `a`,
/// so the left chain is exactly its limit as `a -> 0+`, while the right chain
/// is not defined and is left out.
pub fn lp_ratio_verdicts(
    a: &Numeric,
    b: &Numeric,
    r: &Rational,
    n: usize,
    prec: u32,
) -> Result<LpRatioReport> {
    let reversed = check_exponent(r)?;
    let args = MeanArgs::new(a.clone(), b.clone())?;
    args.strict()?;
    if n < 1 {
        return Err(Error::invalid("ratio chain needs n >= 1"));
    }
    let inv = Rational::from(r.recip_ref());
    let bound = Rational::from((n, n + 1));
    let (a, b) = (args.a(), args.b());

    let left = if n >= 2 {
        let top = power_sum_over(a, b, n, 1..=n - 1, r, prec)? * Numeric::from(n);
        let bottom = power_sum_over(a, b, n + 1, 1..=n, r, prec)? * Numeric::from(n - 1);
        let value = rooted(top.try_div(&bottom)?, &inv, prec)?;
        let (s, l) = oriented(rooted_side(value), rational_side(bound.clone()), !reversed);
        Some(product_check("interior ratio vs n/(n+1)", s, l))
    } else {
        None
    };
    let right = if args.a_is_zero() && *r < 0 {
        None
    } else {
        let top = power_sum_over(a, b, n, 0..=n, r, prec)? * Numeric::from(n + 2);
        let bottom = power_sum_over(a, b, n + 1, 0..=n + 1, r, prec)? * Numeric::from(n + 1);
        let value = rooted(top.try_div(&bottom)?, &inv, prec)?;
        let (s, l) = oriented(rational_side(bound), rooted_side(value), !reversed);
        Some(product_check("n/(n+1) vs endpoint ratio", s, l))
    };
    Ok(LpRatioReport {
        left,
        right,
        reversed,
    })
}

/// Bracket of `L_r(a, b)` and the ratio chains it comes with.
#[derive(Clone, Debug, PartialEq)]
pub struct LpBracketReport {
    pub bracket: Bracket,
    pub ratios: LpRatioReport,
    /// The true mean and its containment in the bracket.
    pub mean: Numeric,
    pub containment: [Check; 2],
}

/// Power-sum bracket of `L_r(a, b)` at order `n >= 2`.
///
/// For `r > 1` the interior sum gives the lower side; for `r < 0` (with
/// `a > 0`) and `0 < r < 1` it gives the upper side.
pub fn lp_bracket(args: &MeanArgs, r: &Rational, n: usize, prec: u32) -> Result<LpBracketReport> {
    let reversed = check_exponent(r)?;
    args.strict()?;
    if *r < 0 && args.a_is_zero() {
        return Err(Error::domain("negative exponents need a > 0"));
    }
    if n < 2 {
        return Err(Error::invalid(format!(
            "the interior-sum side needs n >= 2, got {n}"
        )));
    }
    let inv = Rational::from(r.recip_ref());
    let (a, b) = (args.a(), args.b());
    let scale = |count: usize| -> Result<Numeric> {
        Ok(Numeric::from(n).pow(r, prec)? * Numeric::from(count))
    };
    let interior = power_sum_over(a, b, n, 1..=n - 1, r, prec)?.try_div(&scale(n - 1)?)?;
    let inclusive = power_sum_over(a, b, n, 0..=n, r, prec)?.try_div(&scale(n + 1)?)?;
    let interior = interior.pow(&inv, prec)?;
    let inclusive = inclusive.pow(&inv, prec)?;
    let interior_src = format!("interior power sum, order {n}");
    let inclusive_src = format!("endpoint-inclusive power sum, order {n}");
    let bracket = if reversed {
        Bracket::new(inclusive, interior, inclusive_src, interior_src)
    } else {
        Bracket::new(interior, inclusive, interior_src, inclusive_src)
    };
    let kind = if *r == -1 {
        MeanKind::Logarithmic
    } else {
        MeanKind::lp(r.clone())?
    };
    let mean = mean_value(&kind, args, prec)?;
    let containment = bracket.containment(&mean, false);
    Ok(LpBracketReport {
        bracket,
        ratios: lp_ratio_verdicts(a, b, r, n, prec)?,
        mean,
        containment,
    })
}

/// `(Π_{i ∈ range} ((k-i)a + ib))^{1/len}` with its exact form.
fn geometric_term(
    a: &Numeric,
    b: &Numeric,
    k: usize,
    range: std::ops::RangeInclusive<usize>,
    prec: u32,
) -> Result<Rooted> {
    let len = range.clone().count();
    let product = range
        .map(|i| grid_term(a, b, k, i))
        .fold(Numeric::one(), |acc, t| acc * t);
    rooted(product, &Rational::from((1, len)), prec)
}

fn divided(r: Rooted, by: &Rooted) -> Result<Rooted> {
    let exact = match (r.exact, &by.exact) {
        (Some(x), Some(y)) => Some(x.divided_by(y)),
        _ => None,
    };
    Ok(Rooted {
        value: r.value.try_div(&by.value)?,
        exact,
    })
}

/// Bracket of the identric mean and the ratio chains around `n/(n+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentricReport {
    pub bracket: Bracket,
    /// Endpoint-inclusive geometric ratio `< n/(n+1)`.
    pub left: Check,
    /// `n/(n+1) <` interior geometric ratio.
    pub right: Check,
    pub mean: Numeric,
    pub containment: [Check; 2],
}

/// Geometric-mean bracket of `I(a, b)` at order `n >= 2`, with `0 < a < b`.
pub fn identric_bracket(args: &MeanArgs, n: usize, prec: u32) -> Result<IdentricReport> {
    args.strict()?;
    if args.a_is_zero() {
        return Err(Error::domain("the identric bracket needs a > 0"));
    }
    if n < 2 {
        return Err(Error::invalid(format!("the upper side needs n >= 2, got {n}")));
    }
    let (a, b) = (args.a(), args.b());
    let nq = Numeric::from(n);
    let incl_n = geometric_term(a, b, n, 0..=n, prec)?;
    let incl_n1 = geometric_term(a, b, n + 1, 0..=n + 1, prec)?;
    let int_n = geometric_term(a, b, n, 1..=n - 1, prec)?;
    let int_n1 = geometric_term(a, b, n + 1, 1..=n, prec)?;

    let bracket = Bracket::new(
        incl_n.value.try_div(&nq)?,
        int_n.value.try_div(&nq)?,
        format!("endpoint-inclusive geometric mean, order {n}"),
        format!("interior geometric mean, order {n}"),
    );
    let bound = Rational::from((n, n + 1));
    let left = product_check(
        "endpoint-inclusive ratio < n/(n+1)",
        rooted_side(divided(incl_n, &incl_n1)?),
        rational_side(bound.clone()),
    );
    let right = product_check(
        "n/(n+1) < interior ratio",
        rational_side(bound),
        rooted_side(divided(int_n, &int_n1)?),
    );
    let mean = mean_value(&MeanKind::Identric, args, prec)?;
    let containment = bracket.containment(&mean, false);
    Ok(IdentricReport {
        bracket,
        left,
        right,
        mean,
        containment,
    })
}

/// `(1 - t)/t`, strictly log-convex on `(0, 1/2]`.
fn odds() -> FnSpec {
    FnSpec::new("(1-t)/t", Convexity::StrictlyConvex, |t, _| {
        (&Numeric::one() - t).try_div(t)
    })
    .with_domain(Domain::Positive)
    .with_log_convexity(Convexity::StrictlyConvex)
}

/// Bounds on `I(1-a, 1-b) / I(a, b)` for `0 < a < b <= 1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentricRatioReport {
    /// The true ratio `I(1-a, 1-b) / I(a, b)`.
    pub ratio: Numeric,
    /// Interior product (order `m`) below, endpoint product (order `n`) above.
    pub chain: Bracket,
    pub chain_checks: [Check; 2],
    /// Product ratio chains around 1.
    pub left_ratio: Check,
    pub right_ratio: Check,
    /// `(2-a-b)/(a+b) < ratio < sqrt((1-a)(1-b)/(ab))`.
    pub special: [Check; 2],
}

pub fn identric_ratio_bounds(
    args: &MeanArgs,
    m: usize,
    n: usize,
    prec: u32,
) -> Result<IdentricRatioReport> {
    args.strict()?;
    let (a, b) = (args.a(), args.b());
    if args.a_is_zero() {
        return Err(Error::domain("need a > 0"));
    }
    if !matches!(
        b.certified_cmp(&Numeric::ratio(1, 2)),
        Some(Ordering::Less | Ordering::Equal)
    ) {
        return Err(Error::domain(format!("need b <= 1/2, got {b}")));
    }
    let one = Numeric::one();
    let reflected = MeanArgs::new(&one - a, &one - b)?;
    let ratio = mean_value(&MeanKind::Identric, &reflected, prec)?
        .try_div(&mean_value(&MeanKind::Identric, args, prec)?)?;

    let f = odds();
    let report = log_bracket(&f, a, b, m, n, prec)?;
    let chain = report.geo_bracket;
    let chain_checks = chain.containment(&ratio, false);

    let special_report = log_bracket(&f, a, b, 2, 1, prec)?;
    let special = special_report.geo_bracket.containment(&ratio, false);

    Ok(IdentricRatioReport {
        ratio,
        chain,
        chain_checks,
        left_ratio: report.left_ratio,
        right_ratio: report.right_ratio,
        special,
    })
}

/// `C(n, k)` by the multiplicative formula; every partial product is an exact integer.
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    let k = k.min(n - k);
    (1..=k).fold(Integer::from(1), |acc, i| {
        Integer::from(acc * (n - k + i)) / i
    })
}

/// `C(2m+1, m)^{1/m}`, `m >= 2`.
pub fn central_binomial_seq(m: u64, prec: u32) -> Result<Numeric> {
    if m < 2 {
        return Err(Error::invalid(format!("m must be at least 2, got {m}")));
    }
    let c = binomial(2 * m + 1, m);
    Numeric::from(c).root(m as u32, prec)
}

/// Checks for one term of the central binomial sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialStep {
    pub m: u64,
    pub value: Numeric,
    /// `C(2m-1, m-1)^{1/(m-1)} <= C(2m+1, m)^{1/m}`.
    pub increase: Check,
    /// `C(2m+1, m)^{1/m} < 4`, decided on `C(2m+1, m) < 4^m`.
    pub below_four: Check,
}

pub fn central_binomial_step(m: u64, prec: u32) -> Result<BinomialStep> {
    let value = central_binomial_seq(m, prec)?;
    let previous = Numeric::from(binomial(2 * m - 1, m - 1)).root(m as u32 - 1, prec)?;
    let c = Rational::from(binomial(2 * m + 1, m));
    let c_prev = Rational::from(binomial(2 * m - 1, m - 1));
    let increase = product_check(
        "C(2m-1,m-1)^(1/(m-1)) <= C(2m+1,m)^(1/m)",
        (previous, Some(PowerProduct::of(c_prev, Rational::from((1, m - 1))))),
        (value.clone(), Some(PowerProduct::of(c.clone(), Rational::from((1, m))))),
    );
    let four_m = Integer::from(4).pow(m as u32);
    let witness = Rational::from(four_m).cmp(&c);
    let below_four = Check::with_witness(
        "C(2m+1,m)^(1/m) < 4",
        value.clone(),
        Numeric::from(4),
        Some(witness),
    );
    Ok(BinomialStep {
        m,
        value,
        increase,
        below_four,
    })
}
