//! Verdicts, labelled inequality checks, brackets and the precision-escalation policy.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Numeric, DEFAULT_PRECISION, MIN_PRECISION};

/// Outcome class of an inequality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Status {
    HoldsStrictly,
    HoldsWithEquality,
    Violated,
    Inconclusive,
}

impl Status {
    pub fn holds(self) -> bool {
        matches!(self, Status::HoldsStrictly | Status::HoldsWithEquality)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::HoldsStrictly => "HoldsStrictly",
            Status::HoldsWithEquality => "HoldsWithEquality",
            Status::Violated => "Violated",
            Status::Inconclusive => "Inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Status of a claimed inequality together with its slack.
///
/// `margin` is claimed-larger side minus claimed-smaller side. A verdict is
/// strict only when the whole enclosure of the margin is positive, violated
/// only when it is entirely negative. Equality is reported for an exact zero
/// margin, or for a zero-straddling enclosure when equality is known to hold
/// structurally (affine inputs, algebraic identities).
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub margin: Numeric,
}

impl Verdict {
    pub fn from_margin(margin: Numeric) -> Self {
        Verdict::with_equality_hint(margin, false)
    }

    pub fn with_equality_hint(margin: Numeric, equality_expected: bool) -> Self {
        let status = match margin.sign() {
            Some(Ordering::Greater) => Status::HoldsStrictly,
            Some(Ordering::Less) => Status::Violated,
            Some(Ordering::Equal) => Status::HoldsWithEquality,
            None if equality_expected => Status::HoldsWithEquality,
            None => Status::Inconclusive,
        };
        let margin = if status == Status::HoldsWithEquality && margin.is_exact() {
            Numeric::zero()
        } else {
            margin
        };
        Verdict { status, margin }
    }

    /// Status fixed by an exact comparison of the two sides (`larger.cmp(smaller)`),
    /// with `margin` kept only as the reported slack.
    pub fn decided(margin: Numeric, witness: Ordering) -> Self {
        let status = match witness {
            Ordering::Greater => Status::HoldsStrictly,
            Ordering::Equal => Status::HoldsWithEquality,
            Ordering::Less => Status::Violated,
        };
        let margin = if witness == Ordering::Equal {
            Numeric::zero()
        } else {
            margin
        };
        debug_assert!(
            margin.sign().map_or(true, |s| s == witness),
            "exact witness disagrees with the enclosure of the margin"
        );
        Verdict { status, margin }
    }

    pub fn holds(&self) -> bool {
        self.status.holds()
    }

    pub fn is_inconclusive(&self) -> bool {
        self.status == Status::Inconclusive
    }
}

/// A named claim `smaller <= larger` and its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub smaller: Numeric,
    pub larger: Numeric,
    pub verdict: Verdict,
}

impl Check {
    pub fn new(name: impl Into<String>, smaller: Numeric, larger: Numeric) -> Self {
        Check::with_hint(name, smaller, larger, false)
    }

    pub fn with_hint(
        name: impl Into<String>,
        smaller: Numeric,
        larger: Numeric,
        equality_expected: bool,
    ) -> Self {
        let verdict = Verdict::with_equality_hint(&larger - &smaller, equality_expected);
        Check {
            name: name.into(),
            smaller,
            larger,
            verdict,
        }
    }

    /// Uses an exact ordering of `larger` against `smaller` when one is available.
    pub fn with_witness(
        name: impl Into<String>,
        smaller: Numeric,
        larger: Numeric,
        witness: Option<Ordering>,
    ) -> Self {
        match witness {
            Some(w) => {
                let verdict = Verdict::decided(&larger - &smaller, w);
                Check {
                    name: name.into(),
                    smaller,
                    larger,
                    verdict,
                }
            }
            None => Check::new(name, smaller, larger),
        }
    }

    pub fn status(&self) -> Status {
        self.verdict.status
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }
}

/// Certified enclosure `[lower, upper]` of a target quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub lower: Numeric,
    pub upper: Numeric,
    pub lower_source: String,
    pub upper_source: String,
}

impl Bracket {
    pub fn new(
        lower: Numeric,
        upper: Numeric,
        lower_source: impl Into<String>,
        upper_source: impl Into<String>,
    ) -> Self {
        Bracket {
            lower,
            upper,
            lower_source: lower_source.into(),
            upper_source: upper_source.into(),
        }
    }

    pub fn width(&self) -> Numeric {
        &self.upper - &self.lower
    }

    /// Bracket of `-target`: sides negated and swapped.
    pub fn negated(&self) -> Bracket {
        Bracket {
            lower: -&self.upper,
            upper: -&self.lower,
            lower_source: self.upper_source.clone(),
            upper_source: self.lower_source.clone(),
        }
    }

    /// `lower <= upper`.
    pub fn ordering_check(&self, equality_expected: bool) -> Check {
        Check::with_hint(
            "lower <= upper",
            self.lower.clone(),
            self.upper.clone(),
            equality_expected,
        )
    }

    /// `lower <= target` and `target <= upper`.
    pub fn containment(&self, target: &Numeric, equality_expected: bool) -> [Check; 2] {
        [
            Check::with_hint(
                "lower <= target",
                self.lower.clone(),
                target.clone(),
                equality_expected,
            ),
            Check::with_hint(
                "target <= upper",
                target.clone(),
                self.upper.clone(),
                equality_expected,
            ),
        ]
    }

    /// True when the target cannot be certified to lie outside the bracket.
    pub fn admits(&self, target: &Numeric) -> bool {
        self.containment(target, false)
            .iter()
            .all(|c| c.status() != Status::Violated)
    }
}

/// Anything carrying verdicts that may call for a retry at higher precision.
pub trait Conclusive {
    fn inconclusive(&self) -> bool;
}

impl Conclusive for Verdict {
    fn inconclusive(&self) -> bool {
        self.is_inconclusive()
    }
}

impl Conclusive for Check {
    fn inconclusive(&self) -> bool {
        self.verdict.is_inconclusive()
    }
}

impl<T: Conclusive> Conclusive for Vec<T> {
    fn inconclusive(&self) -> bool {
        self.iter().any(Conclusive::inconclusive)
    }
}

impl<T: Conclusive> Conclusive for Option<T> {
    fn inconclusive(&self) -> bool {
        self.as_ref().is_some_and(Conclusive::inconclusive)
    }
}

impl<T: Conclusive, const N: usize> Conclusive for [T; N] {
    fn inconclusive(&self) -> bool {
        self.iter().any(Conclusive::inconclusive)
    }
}

/// Working precision and how often to double it when a verdict is inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Policy {
    pub precision: u32,
    pub max_retries: u32,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            precision: DEFAULT_PRECISION,
            max_retries: 4,
        }
    }
}

/// A result with the precision that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Certified<T> {
    pub value: T,
    pub precision: u32,
}

impl Policy {
    pub fn new(precision: u32, max_retries: u32) -> Result<Self> {
        if precision < MIN_PRECISION {
            return Err(Error::invalid(format!(
                "precision must be at least {MIN_PRECISION} bits"
            )));
        }
        Ok(Policy {
            precision,
            max_retries,
        })
    }

    /// The precision used on the final allowed attempt.
    pub fn max_precision(&self) -> u32 {
        self.precision
            .saturating_mul(1u32 << self.max_retries.min(16))
    }

    /// Runs `compute` at the working precision, doubling it while the result is inconclusive.
    pub fn certify<T: Conclusive>(&self, compute: impl Fn(u32) -> Result<T>) -> Result<Certified<T>> {
        let mut prec = self.precision;
        let mut attempt = 0;
        loop {
            let value = compute(prec)?;
            if !value.inconclusive() || attempt >= self.max_retries {
                return Ok(Certified {
                    value,
                    precision: prec,
                });
            }
            attempt += 1;
            prec = prec.saturating_mul(2);
        }
    }
}

/// A product `Π base^exponent` of rational powers of nonnegative rationals.
///
/// Two such products can be compared exactly by raising both to the least
/// common denominator of all exponents, which is how root-valued inequalities
/// are decided without tolerance.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PowerProduct {
    factors: Vec<(Rational, Rational)>,
}

const COMPARE_BITS_LIMIT: u64 = 1 << 22;

impl PowerProduct {
    pub fn new() -> Self {
        PowerProduct::default()
    }

    pub fn of(base: Rational, exponent: Rational) -> Self {
        PowerProduct::new().times(base, exponent)
    }

    pub fn rational(q: Rational) -> Self {
        PowerProduct::of(q, Rational::from(1))
    }

    pub fn times(mut self, base: Rational, exponent: Rational) -> Self {
        debug_assert!(base >= 0, "power product bases must be nonnegative");
        self.factors.push((base, exponent));
        self
    }

    pub fn over(self, base: Rational, exponent: Rational) -> Self {
        self.times(base, -exponent)
    }

    /// `self / other`.
    pub fn divided_by(mut self, other: &PowerProduct) -> Self {
        self.factors
            .extend(other.factors.iter().map(|(b, e)| (b.clone(), Rational::from(-e))));
        self
    }

    fn is_zero(&self) -> bool {
        self.factors.iter().any(|(b, e)| *b == 0 && *e > 0)
    }

    pub fn eval(&self, prec: u32) -> Result<Numeric> {
        let mut acc = Numeric::one();
        for (b, e) in &self.factors {
            acc = acc * Numeric::from(b.clone()).pow(e, prec)?;
        }
        Ok(acc)
    }

    /// Exact ordering of `self` against `other`, or `None` when the exact
    /// comparison would be too large to carry out.
    pub fn cmp_exact(&self, other: &PowerProduct) -> Option<Ordering> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some(Ordering::Equal),
            (true, false) => return Some(Ordering::Less),
            (false, true) => return Some(Ordering::Greater),
            _ => {}
        }
        let all = self
            .factors
            .iter()
            .map(|f| (f, false))
            .chain(other.factors.iter().map(|f| (f, true)));
        let mut lcm = Integer::from(1);
        for ((_, e), _) in all.clone() {
            lcm.lcm_mut(e.denom());
        }
        let mut bits: u64 = 0;
        let mut ratio = Rational::from(1);
        for ((b, e), negate) in all {
            if *b == 0 {
                continue;
            }
            let scaled = Rational::from(e * &lcm);
            let k = scaled.numer().to_i64()?;
            let k = if negate { -k } else { k };
            let cost = (u64::from(b.numer().significant_bits())
                + u64::from(b.denom().significant_bits()))
            .saturating_mul(k.unsigned_abs());
            bits = bits.saturating_add(cost);
            if bits > COMPARE_BITS_LIMIT {
                return None;
            }
            ratio *= b.clone().pow(i32::try_from(k).ok()?);
        }
        Some(ratio.cmp(&Rational::from(1)))
    }
}
