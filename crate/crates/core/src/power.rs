//! Power-sum inequalities: Alzer, Bennett, the refined Alzer chain, Minc–Sathre,
//! Martins, closed-form power-sum bounds and a Stirling-type factorial bound.
//!
//! Throughout, `P(n) = Σ_{i=1}^{n} i^r` and the ratio under study is
//! `R(n, r) = ((n+1) P(n) / (n P(n+1)))^{1/r}`.

use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::means::lp_ratio_verdicts;
use crate::numeric::Numeric;
use crate::verdict::{Check, PowerProduct, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Alzer,
    Bennett,
    RefinedAlzer,
    MincSathre,
    MincSathreRefined,
    Martins,
    MartinsReversed,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Alzer,
        Family::Bennett,
        Family::RefinedAlzer,
        Family::MincSathre,
        Family::MincSathreRefined,
        Family::Martins,
        Family::MartinsReversed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Alzer => "alzer",
            Family::Bennett => "bennett",
            Family::RefinedAlzer => "refined-alzer",
            Family::MincSathre => "minc-sathre",
            Family::MincSathreRefined => "minc-sathre-refined",
            Family::Martins => "martins",
            Family::MartinsReversed => "martins-reversed",
        }
    }

    /// Whether the family involves the exponent `r`.
    pub fn uses_exponent(self) -> bool {
        !matches!(self, Family::MincSathre | Family::MincSathreRefined)
    }

    fn check_exponent(self, r: &Rational) -> Result<()> {
        let ok = match self {
            Family::Alzer | Family::Martins => *r > 0,
            Family::Bennett => *r != 0 && *r != 1,
            Family::RefinedAlzer => *r > 0 && *r != 1,
            Family::MartinsReversed => *r < 0,
            Family::MincSathre | Family::MincSathreRefined => true,
        };
        if ok {
            return Ok(());
        }
        let range = match self {
            Family::Alzer | Family::Martins => "r > 0",
            Family::Bennett => "r != 0 and r != 1",
            Family::RefinedAlzer => "r > 1, or 0 < r < 1 for the reversed chain",
            Family::MartinsReversed => "r < 0",
            Family::MincSathre | Family::MincSathreRefined => unreachable!(),
        };
        Err(Error::invalid(format!(
            "{} needs {range}, got r = {r}",
            self.name()
        )))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// `Σ_{i=1}^{n} i^r`; exact whenever `r` is an integer.
pub fn power_sum(n: u64, r: &Rational, prec: u32) -> Result<Numeric> {
    if n == 0 {
        return Err(Error::invalid("power sums start at n = 1"));
    }
    (1..=n).map(|i| Numeric::from(i).pow(r, prec)).sum()
}

fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// A value with an exact power-product form when one is available.
#[derive(Clone, Debug)]
struct Side {
    value: Numeric,
    exact: Option<PowerProduct>,
}

impl Side {
    fn rational(q: Rational) -> Self {
        Side {
            value: Numeric::from(q.clone()),
            exact: Some(PowerProduct::rational(q)),
        }
    }

    fn root_of(radicand: Numeric, exponent: &Rational, prec: u32) -> Result<Self> {
        let exact = radicand
            .as_rational()
            .map(|q| PowerProduct::of(q.clone(), exponent.clone()));
        Ok(Side {
            value: radicand.pow(exponent, prec)?,
            exact,
        })
    }
}

fn check(name: &str, smaller: Side, larger: Side) -> Check {
    let witness = match (&smaller.exact, &larger.exact) {
        (Some(s), Some(l)) => l.cmp_exact(s),
        _ => None,
    };
    Check::with_witness(name, smaller.value, larger.value, witness)
}

fn alzer_side(n: u64, r: &Rational, prec: u32) -> Result<Side> {
    if *r == 0 {
        return Err(Error::invalid(
            "r = 0 has no ratio; the limit is the minc-sathre family",
        ));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let top = power_sum(n, r, prec)? * Numeric::from(n + 1);
    let bottom = power_sum(n + 1, r, prec)? * Numeric::from(n);
    Side::root_of(top.try_div(&bottom)?, &Rational::from(r.recip_ref()), prec)
}

/// `((n+1) Σ_{i=1}^{n} i^r / (n Σ_{i=1}^{n+1} i^r))^{1/r}`, `r != 0`.
pub fn alzer_ratio(n: u64, r: &Rational, prec: u32) -> Result<Numeric> {
    Ok(alzer_side(n, r, prec)?.value)
}

/// `(n!)^{1/n} / ((n+1)!)^{1/(n+1)}`.
fn factorial_side(n: u64, prec: u32) -> Result<Side> {
    let exact = PowerProduct::of(Rational::from(factorial(n)), Rational::from((1, n)))
        .over(Rational::from(factorial(n + 1)), Rational::from((1, n + 1)));
    Ok(Side {
        value: exact.eval(prec)?,
        exact: Some(exact),
    })
}

/// The factorial ratio appearing in the Minc–Sathre and Martins inequalities.
pub fn factorial_ratio(n: u64, prec: u32) -> Result<Numeric> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    Ok(factorial_side(n, prec)?.value)
}

/// Every verdict produced for one `(family, n, r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub family: Family,
    pub n: u64,
    pub r: Option<Rational>,
    pub checks: Vec<Check>,
}

impl FamilyReport {
    /// Worst status over the checks (Violated and Inconclusive dominate).
    pub fn status(&self) -> Status {
        self.checks
            .iter()
            .map(Check::status)
            .max()
            .unwrap_or(Status::HoldsWithEquality)
    }
}

/// Verifies one member of a family at `(n, r)`; `r` is ignored by the Minc–Sathre families.
pub fn verify_family(
    family: Family,
    n: u64,
    r: Option<&Rational>,
    prec: u32,
) -> Result<FamilyReport> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let r = if family.uses_exponent() {
        let r = r.ok_or_else(|| Error::invalid(format!("{family} needs an exponent r")))?;
        family.check_exponent(r)?;
        Some(r.clone())
    } else {
        None
    };
    let below = Side::rational(Rational::from((n, n + 1)));
    let above = || Side::rational(Rational::from((n + 1, n + 2)));
    let checks = match (family, &r) {
        (Family::Alzer, Some(r)) => vec![check("n/(n+1) <= R", below, alzer_side(n, r, prec)?)],
        (Family::Bennett, Some(r)) => {
            let ratio = alzer_side(n, r, prec)?;
            if *r > 1 {
                vec![check("R <= (n+1)/(n+2)", ratio, above())]
            } else {
                vec![check("(n+1)/(n+2) <= R", above(), ratio)]
            }
        }
        (Family::RefinedAlzer, Some(r)) => {
            let ratio = alzer_side(n, r, prec)?;
            let gain = Rational::from(((n + 1) * (n + 1), n * (n + 2)));
            let inv = Rational::from(r.recip_ref());
            let refined = PowerProduct::rational(Rational::from((n, n + 1))).times(gain, inv);
            let lower = Side {
                value: refined.eval(prec)?,
                exact: Some(refined),
            };
            if *r > 1 {
                vec![
                    check("(n/(n+1))(1+1/(n(n+2)))^(1/r) < R", lower, ratio.clone()),
                    check("R < (n+1)/(n+2)", ratio, above()),
                ]
            } else {
                vec![
                    check("R < (n/(n+1))(1+1/(n(n+2)))^(1/r)", ratio.clone(), lower),
                    check("(n+1)/(n+2) < R", above(), ratio),
                ]
            }
        }
        (Family::MincSathre, _) => vec![check("n/(n+1) <= F", below, factorial_side(n, prec)?)],
        (Family::MincSathreRefined, _) => {
            vec![check("(n+1)/(n+2) <= F", above(), factorial_side(n, prec)?)]
        }
        (Family::Martins, Some(r)) => vec![check(
            "R <= F",
            alzer_side(n, r, prec)?,
            factorial_side(n, prec)?,
        )],
        (Family::MartinsReversed, Some(r)) => vec![check(
            "F <= R",
            factorial_side(n, prec)?,
            alzer_side(n, r, prec)?,
        )],
        _ => unreachable!("exponent presence was checked above"),
    };
    Ok(FamilyReport {
        family,
        n,
        r,
        checks,
    })
}

/// Re-derives the statuses of [`verify_family`] from the ratio chains of `x^r`
/// on `[0, 1]`, where every grid term `(k-i)·0 + i·1` is just `i`.
///
/// The endpoint-inclusive chain at order `n` is the lower refined bound at
/// `n`, and the interior chain at order `n + 1` is the upper bound at `n`.
/// Statuses are returned in the order of the corresponding report's checks.
pub fn statuses_via_means(family: Family, n: u64, r: &Rational, prec: u32) -> Result<Vec<Status>> {
    family.check_exponent(r)?;
    let zero = Numeric::zero();
    let one = Numeric::one();
    let n = n as usize;
    let endpoint = || -> Result<Status> {
        let rep = lp_ratio_verdicts(&zero, &one, r, n, prec)?;
        Ok(rep.right.expect("defined for r > 0").status())
    };
    let interior = || -> Result<Status> {
        let rep = lp_ratio_verdicts(&zero, &one, r, n + 1, prec)?;
        Ok(rep.left.expect("defined for order >= 2").status())
    };
    match family {
        Family::RefinedAlzer => Ok(vec![endpoint()?, interior()?]),
        Family::Bennett => Ok(vec![interior()?]),
        Family::Alzer if *r > 1 => Ok(vec![endpoint()?]),
        Family::Alzer if *r < 1 => Ok(vec![interior()?]),
        _ => Err(Error::invalid(format!(
            "{family} at r = {r} has no counterpart among the power-mean chains"
        ))),
    }
}

/// Closed-form bounds on `Σ_{i=1}^{n} i^r`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSumBounds {
    /// `(n+1) n^r / (r+1)`; absent for `-1 < r < 0`.
    pub lower: Option<Numeric>,
    pub sum: Numeric,
    /// `n (n+1)^r / (r+1)`.
    pub upper: Numeric,
    /// True for `0 < r < 1`, where both bounds swap sides.
    pub reversed: bool,
    pub checks: Vec<Check>,
}

pub fn power_sum_bounds(n: u64, r: &Rational, prec: u32) -> Result<PowerSumBounds> {
    if *r <= -1 || *r == 0 || *r == 1 {
        return Err(Error::invalid(format!(
            "power-sum bounds need r > 1, 0 < r < 1 or -1 < r < 0, got r = {r}"
        )));
    }
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let sum = power_sum(n, r, prec)?;
    let r1 = Numeric::from(Rational::from(r + 1));
    let nn = Numeric::from(n);
    let n1 = Numeric::from(n + 1);
    let upper = (&nn * &n1.pow(r, prec)?).try_div(&r1)?;
    if *r < 0 {
        let checks = vec![Check::new("sum <= n(n+1)^r/(r+1)", sum.clone(), upper.clone())];
        return Ok(PowerSumBounds {
            lower: None,
            sum,
            upper,
            reversed: false,
            checks,
        });
    }
    let lower = (&n1 * &nn.pow(r, prec)?).try_div(&r1)?;
    let reversed = *r < 1;
    let checks = if reversed {
        vec![
            Check::new("sum < (n+1)n^r/(r+1)", sum.clone(), lower.clone()),
            Check::new("n(n+1)^r/(r+1) < sum", upper.clone(), sum.clone()),
        ]
    } else {
        vec![
            Check::new("(n+1)n^r/(r+1) < sum", lower.clone(), sum.clone()),
            Check::new("sum < n(n+1)^r/(r+1)", sum.clone(), upper.clone()),
        ]
    };
    Ok(PowerSumBounds {
        lower: Some(lower),
        sum,
        upper,
        reversed,
        checks,
    })
}

/// `(n+1)/e <= (n!)^{1/n}`.
pub fn factorial_lower(n: u64, prec: u32) -> Result<Check> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let root = Numeric::from(factorial(n)).root(n as u32, prec)?;
    let bound = Numeric::from(n + 1).try_div(&Numeric::e(prec))?;
    Ok(Check::new("(n+1)/e <= (n!)^(1/n)", bound, root))
}
