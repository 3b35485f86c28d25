//! Exact rationals and outward-rounded float intervals behind one value type.
//!
//! Every formula in the crate is evaluated on [`Numeric`]. Values stay exact
//! rationals for as long as the operations allow it (ring operations, integer
//! powers, perfect roots). Anything transcendental switches to an [`Interval`]
//! whose endpoints are rounded outward by MPFR, so the true value is always
//! enclosed. The absolute error radius reported for an approximate value is
//! half the interval width, rounded up.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Working precision (significant bits) used when no other is requested.
pub const DEFAULT_PRECISION: u32 = 128;

/// Smallest working precision accepted anywhere.
pub const MIN_PRECISION: u32 = 53;

/// Exact powers whose result would exceed this many bits are evaluated on intervals.
const EXACT_BITS_LIMIT: u64 = 1 << 20;

/// Rational exponents with a larger denominator (or numerator) go through `exp(q ln x)`.
const ROOT_DENOM_LIMIT: u32 = 64;

/// A closed interval of binary floats, `lo <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

fn down<T>(prec: u32, val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Down).0
}

fn up<T>(prec: u32, val: T) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, val, Round::Up).0
}

fn fmin(a: Float, b: Float) -> Float {
    if b < a {
        b
    } else {
        a
    }
}

fn fmax(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

impl Interval {
    fn new(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Tightest enclosure of `q` at `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        Interval::new(down(prec, q), up(prec, q))
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Midpoint, rounded to nearest.
    pub fn mid(&self) -> Float {
        let p = self.prec() + 1;
        let sum = Float::with_val(p, &self.lo + &self.hi);
        sum / 2u32
    }

    /// Half-width, rounded up. Always encloses the distance from `mid()` to either end.
    pub fn radius(&self) -> Float {
        let p = self.prec();
        let w = up(p, &self.hi - &self.lo);
        // the rounded midpoint may sit one ulp off centre
        let slack = up(p, w.clone() >> (p as i32));
        up(p, &(w / 2u32) + &slack)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo <= *q && self.hi >= *q
    }

    fn working(&self, other: &Interval) -> u32 {
        self.prec().max(other.prec())
    }

    fn add(&self, o: &Interval) -> Interval {
        let p = self.working(o);
        Interval::new(down(p, &self.lo + &o.lo), up(p, &self.hi + &o.hi))
    }

    fn sub(&self, o: &Interval) -> Interval {
        let p = self.working(o);
        Interval::new(down(p, &self.lo - &o.hi), up(p, &self.hi - &o.lo))
    }

    fn mul(&self, o: &Interval) -> Interval {
        let p = self.working(o);
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(x, y)| down(p, *x * *y))
            .reduce(fmin)
            .expect("four products");
        let hi = pairs
            .iter()
            .map(|(x, y)| up(p, *x * *y))
            .reduce(fmax)
            .expect("four products");
        Interval::new(lo, hi)
    }

    fn div(&self, o: &Interval) -> Result<Interval> {
        if o.contains_zero() {
            return Err(Error::domain("division by an interval containing zero"));
        }
        let p = self.working(o);
        let pairs = [
            (&self.lo, &o.lo),
            (&self.lo, &o.hi),
            (&self.hi, &o.lo),
            (&self.hi, &o.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(x, y)| down(p, *x / *y))
            .reduce(fmin)
            .expect("four quotients");
        let hi = pairs
            .iter()
            .map(|(x, y)| up(p, *x / *y))
            .reduce(fmax)
            .expect("four quotients");
        Ok(Interval::new(lo, hi))
    }

    fn neg(&self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }

    fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let m = fmax(self.lo.clone().abs(), self.hi.clone());
            Interval::new(Float::with_val(m.prec(), 0), m)
        }
    }

    /// Applies a monotone function given as an in-place MPFR rounding operation.
    fn monotone(
        &self,
        prec: u32,
        increasing: bool,
        op: impl Fn(&mut Float, Round) -> Ordering,
    ) -> Interval {
        let p = prec.max(self.prec());
        let (a, b) = if increasing {
            (&self.lo, &self.hi)
        } else {
            (&self.hi, &self.lo)
        };
        let mut lo = Float::with_val(p, a);
        op(&mut lo, Round::Down);
        let mut hi = Float::with_val(p, b);
        op(&mut hi, Round::Up);
        Interval::new(lo, hi)
    }

    /// Enclosure for a 1-Lipschitz function bounded by 1 in absolute value (sin, cos).
    fn lipschitz_unit(&self, prec: u32, op: impl Fn(&mut Float, Round) -> Ordering) -> Interval {
        let p = prec.max(self.prec());
        let width = up(p, &self.hi - &self.lo);
        let mut lo = Float::with_val(p, &self.lo);
        op(&mut lo, Round::Down);
        let mut hi = Float::with_val(p, &self.lo);
        op(&mut hi, Round::Up);
        let lo = fmax(down(p, &lo - &width), Float::with_val(p, -1));
        let hi = fmin(up(p, &hi + &width), Float::with_val(p, 1));
        Interval::new(lo, hi)
    }

    fn pow_u(&self, prec: u32, e: u32) -> Interval {
        let p = prec.max(self.prec());
        if e == 0 {
            return Interval::new(Float::with_val(p, 1), Float::with_val(p, 1));
        }
        let (a, b) = if e % 2 == 1 || self.lo >= 0 {
            (&self.lo, &self.hi)
        } else if self.hi <= 0 {
            (&self.hi, &self.lo)
        } else {
            let m = fmax(self.lo.clone().abs(), self.hi.clone());
            return Interval::new(Float::with_val(p, 0), up(p, m.pow(e)));
        };
        if e % 2 == 1 || self.lo >= 0 {
            Interval::new(down(p, a.pow(e)), up(p, b.pow(e)))
        } else {
            // nonpositive operand, even exponent: decreasing in the operand
            Interval::new(down(p, a.clone().abs().pow(e)), up(p, b.clone().abs().pow(e)))
        }
    }
}

/// A real number that is either an exact rational or an enclosing interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Numeric {
    Exact(Rational),
    Approx(Interval),
}

fn rational_bits(q: &Rational) -> u64 {
    u64::from(q.numer().significant_bits()) + u64::from(q.denom().significant_bits())
}

fn integer_root(n: &Integer, k: u32) -> Option<Integer> {
    let r = n.clone().root(k);
    if r.clone().pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `k`-th root of a rational, when it is itself rational.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if *q < 0 {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&Rational::from(-q), k).map(|r| -r);
    }
    let n = integer_root(q.numer(), k)?;
    let d = integer_root(q.denom(), k)?;
    Some(Rational::from((n, d)))
}

/// Parses `p/q`, integers and decimal literals (`0.333`, `1e-6`, `-2.5E3`) exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::Parse(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_rational(num)?;
        let d = parse_rational(den)?;
        if d == 0 {
            return Err(err());
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = Rational::from(Integer::from_str_radix(&all, 10).map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from(10);
    if shift >= 0 {
        value *= ten.pow(shift);
    } else {
        value /= ten.pow(-shift);
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

impl Numeric {
    pub fn zero() -> Self {
        Numeric::Exact(Rational::new())
    }

    pub fn one() -> Self {
        Numeric::from(1)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Numeric::Exact(Rational::from((num, den)))
    }

    /// Parses an exact rational literal, see [`parse_rational`].
    pub fn parse(text: &str) -> Result<Self> {
        parse_rational(text).map(Numeric::Exact)
    }

    /// Enclosure of π.
    pub fn pi(prec: u32) -> Self {
        Numeric::Approx(Interval::new(
            down(prec, Constant::Pi),
            up(prec, Constant::Pi),
        ))
    }

    /// Enclosure of Euler's number.
    pub fn e(prec: u32) -> Self {
        Numeric::one().exp(prec)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Numeric::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Numeric::Exact(q) => Some(q),
            Numeric::Approx(_) => None,
        }
    }

    /// Precision of the interval, `None` for exact values.
    pub fn prec(&self) -> Option<u32> {
        match self {
            Numeric::Exact(_) => None,
            Numeric::Approx(x) => Some(x.prec()),
        }
    }

    /// The value as an interval at (at least) `prec` bits.
    pub fn to_interval(&self, prec: u32) -> Interval {
        match self {
            Numeric::Exact(q) => Interval::from_rational(q, prec),
            Numeric::Approx(x) => x.clone(),
        }
    }

    /// Nearest double to the (mid)value.
    pub fn to_f64(&self) -> f64 {
        match self {
            Numeric::Exact(q) => q.to_f64(),
            Numeric::Approx(x) => x.mid().to_f64(),
        }
    }

    /// Absolute error radius, rounded up to a double. Zero exactly when the value is exact.
    pub fn radius_f64(&self) -> f64 {
        match self {
            Numeric::Exact(_) => 0.0,
            Numeric::Approx(x) => x.radius().to_f64_round(Round::Up),
        }
    }

    /// Sign that holds for every point of the enclosure, if there is one.
    pub fn sign(&self) -> Option<Ordering> {
        match self {
            Numeric::Exact(q) => Some(q.cmp0()),
            Numeric::Approx(x) => {
                if x.lo > 0 {
                    Some(Ordering::Greater)
                } else if x.hi < 0 {
                    Some(Ordering::Less)
                } else {
                    None
                }
            }
        }
    }

    /// Certified ordering of `self` against `other`.
    pub fn certified_cmp(&self, other: &Numeric) -> Option<Ordering> {
        (self - other).sign()
    }

    /// Whether `q` is possibly the value (always exact comparison for exact values).
    pub fn encloses(&self, q: &Rational) -> bool {
        match self {
            Numeric::Exact(v) => v == q,
            Numeric::Approx(x) => x.contains(q),
        }
    }

    /// Whether the two enclosures share at least one point.
    pub fn overlaps(&self, other: &Numeric) -> bool {
        (self - other).sign().map_or(true, |o| o == Ordering::Equal)
    }

    fn binary(
        &self,
        other: &Numeric,
        exact: impl FnOnce(&Rational, &Rational) -> Rational,
        approx: impl FnOnce(&Interval, &Interval) -> Interval,
    ) -> Numeric {
        match (self, other) {
            (Numeric::Exact(a), Numeric::Exact(b)) => Numeric::Exact(exact(a, b)),
            (Numeric::Approx(x), Numeric::Exact(b)) => {
                Numeric::Approx(approx(x, &Interval::from_rational(b, x.prec())))
            }
            (Numeric::Exact(a), Numeric::Approx(y)) => {
                Numeric::Approx(approx(&Interval::from_rational(a, y.prec()), y))
            }
            (Numeric::Approx(x), Numeric::Approx(y)) => Numeric::Approx(approx(x, y)),
        }
    }

    /// Division that reports a zero (or possibly-zero) divisor instead of panicking.
    pub fn try_div(&self, other: &Numeric) -> Result<Numeric> {
        match (self, other) {
            (_, Numeric::Exact(b)) if *b == 0 => Err(Error::domain("division by zero")),
            (Numeric::Exact(a), Numeric::Exact(b)) => Ok(Numeric::Exact(Rational::from(a / b))),
            (Numeric::Approx(x), Numeric::Exact(b)) => {
                x.div(&Interval::from_rational(b, x.prec())).map(Numeric::Approx)
            }
            (Numeric::Exact(a), Numeric::Approx(y)) => {
                Interval::from_rational(a, y.prec()).div(y).map(Numeric::Approx)
            }
            (Numeric::Approx(x), Numeric::Approx(y)) => x.div(y).map(Numeric::Approx),
        }
    }

    pub fn recip(&self) -> Result<Numeric> {
        Numeric::one().try_div(self)
    }

    pub fn abs(&self) -> Numeric {
        match self {
            Numeric::Exact(q) => Numeric::Exact(q.clone().abs()),
            Numeric::Approx(x) => Numeric::Approx(x.abs()),
        }
    }

    /// Enclosure of the smaller of two values.
    pub fn min(&self, other: &Numeric) -> Numeric {
        match (self, other) {
            (Numeric::Exact(a), Numeric::Exact(b)) => Numeric::Exact(a.min(b).clone()),
            _ => {
                let p = self.prec().or(other.prec()).unwrap_or(DEFAULT_PRECISION);
                let (x, y) = (self.to_interval(p), other.to_interval(p));
                Numeric::Approx(Interval::new(
                    fmin(x.lo.clone(), y.lo.clone()),
                    fmin(x.hi, y.hi),
                ))
            }
        }
    }

    /// Enclosure of the larger of two values.
    pub fn max(&self, other: &Numeric) -> Numeric {
        -(&(-self).min(&-other))
    }

    /// Integer power; exact for exact operands of moderate size.
    pub fn powi(&self, e: i64, prec: u32) -> Result<Numeric> {
        if e < 0 {
            return self.powi(-e, prec)?.recip();
        }
        let e32 = u32::try_from(e).map_err(|_| Error::invalid("exponent too large"))?;
        match self {
            Numeric::Exact(q) if rational_bits(q).saturating_mul(e as u64) <= EXACT_BITS_LIMIT => {
                Ok(Numeric::Exact(q.clone().pow(e32)))
            }
            _ => Ok(Numeric::Approx(self.to_interval(prec).pow_u(prec, e32))),
        }
    }

    /// `k`-th root of a nonnegative value (odd `k` also accepts negatives).
    ///
    /// An interval whose lower end dips below zero only through rounding is
    /// clipped at zero; an interval that is entirely negative is a domain error.
    pub fn root(&self, k: u32, prec: u32) -> Result<Numeric> {
        if k == 0 {
            return Err(Error::invalid("zeroth root"));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        match self {
            Numeric::Exact(q) => {
                if *q < 0 && k % 2 == 0 {
                    return Err(Error::domain(format!("even root of negative value {q}")));
                }
                if let Some(r) = exact_root(q, k) {
                    return Ok(Numeric::Exact(r));
                }
                Numeric::Approx(Interval::from_rational(q, prec)).root(k, prec)
            }
            Numeric::Approx(x) => {
                if k % 2 == 0 {
                    if x.hi < 0 {
                        return Err(Error::domain("even root of a negative value"));
                    }
                    let clipped = if x.lo < 0 {
                        Interval::new(Float::with_val(x.prec(), 0), x.hi.clone())
                    } else {
                        x.clone()
                    };
                    Ok(Numeric::Approx(clipped.monotone(prec, true, |f, r| f.root_round(k, r))))
                } else {
                    Ok(Numeric::Approx(x.monotone(prec, true, |f, r| f.root_round(k, r))))
                }
            }
        }
    }

    pub fn sqrt(&self, prec: u32) -> Result<Numeric> {
        self.root(2, prec)
    }

    /// Rational power `self^q` of a nonnegative value, as a root of an integer power.
    pub fn pow(&self, q: &Rational, prec: u32) -> Result<Numeric> {
        let num = q
            .numer()
            .to_i64()
            .ok_or_else(|| Error::invalid("exponent numerator too large"))?;
        if *q.denom() == 1 {
            return self.powi(num, prec);
        }
        let den = q
            .denom()
            .to_u32()
            .ok_or_else(|| Error::invalid("exponent denominator too large"))?;
        match self.sign() {
            Some(Ordering::Less) => {
                return Err(Error::domain("fractional power of a negative value"))
            }
            Some(Ordering::Equal) if self.is_exact() => {
                return if num > 0 {
                    Ok(Numeric::zero())
                } else {
                    Err(Error::domain("negative power of zero"))
                };
            }
            _ => {}
        }
        if den > ROOT_DENOM_LIMIT || num.unsigned_abs() > u64::from(ROOT_DENOM_LIMIT) {
            let log = self.ln(prec)?;
            return Ok((log * Numeric::Exact(q.clone())).exp(prec));
        }
        self.powi(num, prec)?.root(den, prec)
    }

    /// `self ± radius`, as an enclosure.
    pub fn widen(&self, radius: &Rational, prec: u32) -> Numeric {
        if *radius == 0 {
            return self.clone();
        }
        let x = self.to_interval(prec);
        let p = x.prec().max(prec);
        let r = up(p, radius);
        Numeric::Approx(Interval::new(down(p, &x.lo - &r), up(p, &x.hi + &r)))
    }

    pub fn exp(&self, prec: u32) -> Numeric {
        match self {
            Numeric::Exact(q) if *q == 0 => Numeric::one(),
            _ => Numeric::Approx(self.to_interval(prec).monotone(prec, true, |f, r| f.exp_round(r))),
        }
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self, prec: u32) -> Result<Numeric> {
        match self {
            Numeric::Exact(q) if *q == 1 => Ok(Numeric::zero()),
            Numeric::Exact(q) if *q <= 0 => Err(Error::domain(format!("logarithm of {q}"))),
            Numeric::Approx(x) if x.lo <= 0 => {
                Err(Error::domain("logarithm of a possibly nonpositive value"))
            }
            _ => Ok(Numeric::Approx(
                self.to_interval(prec).monotone(prec, true, |f, r| f.ln_round(r)),
            )),
        }
    }

    pub fn sin(&self, prec: u32) -> Numeric {
        match self {
            Numeric::Exact(q) if *q == 0 => Numeric::zero(),
            _ => Numeric::Approx(self.to_interval(prec).lipschitz_unit(prec, |f, r| f.sin_round(r))),
        }
    }

    pub fn cos(&self, prec: u32) -> Numeric {
        match self {
            Numeric::Exact(q) if *q == 0 => Numeric::one(),
            _ => Numeric::Approx(self.to_interval(prec).lipschitz_unit(prec, |f, r| f.cos_round(r))),
        }
    }

    /// Tangent of an argument enclosed in (−π/2, π/2).
    pub fn tan(&self, prec: u32) -> Result<Numeric> {
        let x = self.to_interval(prec);
        let half_pi = down(x.prec().max(prec), Constant::Pi) / 2u32;
        if x.hi >= half_pi || x.lo <= -half_pi {
            return Err(Error::domain("tangent argument not inside (-pi/2, pi/2)"));
        }
        if self.sign() == Some(Ordering::Equal) && self.is_exact() {
            return Ok(Numeric::zero());
        }
        Ok(Numeric::Approx(x.monotone(prec, true, |f, r| f.tan_round(r))))
    }

    /// Cotangent of an argument enclosed in (0, π).
    pub fn cot(&self, prec: u32) -> Result<Numeric> {
        let x = self.to_interval(prec);
        let pi = down(x.prec().max(prec), Constant::Pi);
        if x.lo <= 0 || x.hi >= pi {
            return Err(Error::domain("cotangent argument not inside (0, pi)"));
        }
        Ok(Numeric::Approx(x.monotone(prec, false, |f, r| f.cot_round(r))))
    }

    /// Decimal rendering of the (mid)value with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let v = match self {
            Numeric::Exact(q) => Float::with_val(DEFAULT_PRECISION.max(4 * digits as u32), q),
            Numeric::Approx(x) => x.mid(),
        };
        if v.is_zero() {
            return "0".to_string();
        }
        v.to_string_radix(10, Some(digits))
    }
}

impl fmt::Display for Numeric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Numeric::Exact(q) => write!(f, "{q}"),
            Numeric::Approx(_) => write!(f, "{} ± {:.3e}", self.to_decimal(20), self.radius_f64()),
        }
    }
}

impl From<Rational> for Numeric {
    fn from(q: Rational) -> Self {
        Numeric::Exact(q)
    }
}

impl From<Integer> for Numeric {
    fn from(n: Integer) -> Self {
        Numeric::Exact(Rational::from(n))
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Numeric {
            fn from(n: $t) -> Self {
                Numeric::Exact(Rational::from(n))
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, usize);

impl Neg for &Numeric {
    type Output = Numeric;
    fn neg(self) -> Numeric {
        match self {
            Numeric::Exact(q) => Numeric::Exact(Rational::from(-q)),
            Numeric::Approx(x) => Numeric::Approx(x.neg()),
        }
    }
}

impl Neg for Numeric {
    type Output = Numeric;
    fn neg(self) -> Numeric {
        -&self
    }
}

impl Add for &Numeric {
    type Output = Numeric;
    fn add(self, o: &Numeric) -> Numeric {
        self.binary(o, |a, b| Rational::from(a + b), Interval::add)
    }
}

impl Sub for &Numeric {
    type Output = Numeric;
    fn sub(self, o: &Numeric) -> Numeric {
        self.binary(o, |a, b| Rational::from(a - b), Interval::sub)
    }
}

impl Mul for &Numeric {
    type Output = Numeric;
    fn mul(self, o: &Numeric) -> Numeric {
        self.binary(o, |a, b| Rational::from(a * b), Interval::mul)
    }
}

/// Panics when the divisor is zero or its enclosure contains zero; see [`Numeric::try_div`].
impl Div for &Numeric {
    type Output = Numeric;
    fn div(self, o: &Numeric) -> Numeric {
        self.try_div(o).expect("division by a value that may be zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Numeric> for Numeric {
            type Output = Numeric;
            fn $m(self, o: Numeric) -> Numeric { (&self).$m(&o) }
        }
        impl $tr<&Numeric> for Numeric {
            type Output = Numeric;
            fn $m(self, o: &Numeric) -> Numeric { (&self).$m(o) }
        }
        impl $tr<Numeric> for &Numeric {
            type Output = Numeric;
            fn $m(self, o: Numeric) -> Numeric { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Sum for Numeric {
    fn sum<I: Iterator<Item = Numeric>>(iter: I) -> Numeric {
        iter.fold(Numeric::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Numeric> for Numeric {
    fn sum<I: Iterator<Item = &'a Numeric>>(iter: I) -> Numeric {
        iter.fold(Numeric::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_exact_literals() {
        assert_eq!(q("1/3"), Rational::from((1, 3)));
        assert_eq!(q("0.333"), Rational::from((333, 1000)));
        assert_eq!(q("-2"), Rational::from(-2));
        assert_eq!(q("1e-6"), Rational::from((1, 1_000_000)));
        assert_eq!(q("2.5E3"), Rational::from(2500));
        assert_eq!(q(".5"), Rational::from((1, 2)));
        assert_eq!(q("3/0.5"), Rational::from(6));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Numeric::ratio(1, 3);
        let b = Numeric::ratio(1, 6);
        let s = &a + &b;
        assert_eq!(s, Numeric::ratio(1, 2));
        assert_eq!(s.radius_f64(), 0.0);
        assert_eq!((&a * &b), Numeric::ratio(1, 18));
        assert_eq!((&a / &b), Numeric::from(2));
    }

    #[test]
    fn perfect_roots_are_exact() {
        let v = Numeric::ratio(9, 4).sqrt(128).unwrap();
        assert_eq!(v, Numeric::ratio(3, 2));
        let c = Numeric::from(-27).root(3, 128).unwrap();
        assert_eq!(c, Numeric::from(-3));
        let r = Numeric::from(2).sqrt(128).unwrap();
        assert!(!r.is_exact());
        assert!((r.to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(r.radius_f64() < 1e-36);
        assert!(Numeric::from(-4).sqrt(128).is_err());
    }

    #[test]
    fn rational_powers() {
        let v = Numeric::from(8).pow(&Rational::from((2, 3)), 128).unwrap();
        assert_eq!(v, Numeric::from(4));
        let w = Numeric::from(2).pow(&Rational::from((-1, 2)), 128).unwrap();
        assert!((w.to_f64() - 1.0 / std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(Numeric::zero().pow(&Rational::from((1, 2)), 64).unwrap(), Numeric::zero());
        assert!(Numeric::zero().pow(&Rational::from((-1, 2)), 64).is_err());
        assert_eq!(Numeric::ratio(2, 3).powi(-2, 64).unwrap(), Numeric::ratio(9, 4));
    }

    #[test]
    fn transcendental_enclosures() {
        let p = 128;
        let e = Numeric::e(p);
        assert!(e.encloses(&q("2.71828182845904523536028747135266249775724709369995")));
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        let pi = Numeric::pi(p);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let ln2 = Numeric::from(2).ln(p).unwrap();
        assert!((ln2.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(Numeric::one().ln(p).unwrap(), Numeric::zero());
        assert!(Numeric::zero().ln(p).is_err());
        let s = (&pi / &Numeric::from(6)).sin(p);
        assert!(s.overlaps(&Numeric::ratio(1, 2)));
        assert!(s.radius_f64() < 1e-35);
        let c = (&pi / &Numeric::from(4)).cot(p).unwrap();
        assert!(c.overlaps(&Numeric::one()));
        assert!(pi.cot(p).is_err());
        assert!((&pi / &Numeric::from(2)).tan(p).is_err());
    }

    #[test]
    fn certified_signs() {
        let pi = Numeric::pi(128);
        assert_eq!(pi.certified_cmp(&Numeric::ratio(355, 113)), Some(Ordering::Less));
        assert_eq!(pi.certified_cmp(&Numeric::ratio(22, 7)), Some(Ordering::Less));
        assert_eq!(pi.certified_cmp(&Numeric::ratio(333, 106)), Some(Ordering::Greater));
        let d = &pi - &pi;
        assert_eq!(d.sign(), None);
        assert_eq!(Numeric::zero().sign(), Some(Ordering::Equal));
    }

    #[test]
    fn min_max_enclose() {
        let a = Numeric::ratio(1, 3);
        let b = Numeric::from(2).sqrt(64).unwrap();
        assert_eq!(a.min(&Numeric::ratio(1, 2)), a);
        assert!(b.min(&a).overlaps(&a));
        assert!(b.max(&a).overlaps(&b));
    }

    #[test]
    fn large_integer_powers_fall_back_to_intervals() {
        let v = Numeric::ratio(3, 2).powi(1_000_000, 128).unwrap();
        assert!(!v.is_exact());
        let l = v.ln(128).unwrap().to_f64();
        assert!((l - 1_000_000.0 * 1.5f64.ln()).abs() < 1e-6);
    }
}
