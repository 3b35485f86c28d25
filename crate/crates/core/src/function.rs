//! Evaluable functions tagged with their convexity class, and the registry of
//! named functions exposed on the command line.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rug::Rational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{parse_rational, Numeric};
use crate::partition::check_interval;

/// Evaluation map `(t, precision) -> f(t)`.
pub type EvalFn = Arc<dyn Fn(&Numeric, u32) -> Result<Numeric> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Convexity {
    Affine,
    Convex,
    StrictlyConvex,
    Concave,
    StrictlyConcave,
}

impl Convexity {
    /// Class of `-f`.
    pub fn negated(self) -> Self {
        match self {
            Convexity::Affine => Convexity::Affine,
            Convexity::Convex => Convexity::Concave,
            Convexity::StrictlyConvex => Convexity::StrictlyConcave,
            Convexity::Concave => Convexity::Convex,
            Convexity::StrictlyConcave => Convexity::StrictlyConvex,
        }
    }

    /// Convex in the wide sense (affine included).
    pub fn is_convex(self) -> bool {
        matches!(
            self,
            Convexity::Affine | Convexity::Convex | Convexity::StrictlyConvex
        )
    }

    /// Concave and not affine.
    pub fn is_concave(self) -> bool {
        matches!(self, Convexity::Concave | Convexity::StrictlyConcave)
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Convexity::StrictlyConvex | Convexity::StrictlyConcave)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Monotone {
    Increasing,
    Decreasing,
    None,
}

/// Where a function may be evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Real,
    NonNegative,
    Positive,
    /// `[0, π]`.
    ZeroToPi,
}

impl Domain {
    /// Whether `t` is not certifiably outside the domain.
    pub fn admits(&self, t: &Numeric, prec: u32) -> bool {
        let not = |o: Option<Ordering>, bad: Ordering| o != Some(bad);
        match self {
            Domain::Real => true,
            Domain::NonNegative => not(t.sign(), Ordering::Less),
            Domain::Positive => matches!(t.sign(), Some(Ordering::Greater) | None),
            Domain::ZeroToPi => {
                not(t.sign(), Ordering::Less)
                    && not(t.certified_cmp(&Numeric::pi(prec)), Ordering::Greater)
            }
        }
    }
}

/// A real function on a closed interval together with its shape hypotheses.
#[derive(Clone)]
pub struct FnSpec {
    name: String,
    eval: EvalFn,
    convexity: Convexity,
    log_convexity: Option<Convexity>,
    monotone: Monotone,
    domain: Domain,
    antiderivative: Option<EvalFn>,
    log_antiderivative: Option<EvalFn>,
}

impl fmt::Debug for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnSpec")
            .field("name", &self.name)
            .field("convexity", &self.convexity)
            .field("log_convexity", &self.log_convexity)
            .field("monotone", &self.monotone)
            .field("domain", &self.domain)
            .finish()
    }
}

/// A sampled triple whose second difference contradicts the declared convexity.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityDiagnostic {
    pub points: [Numeric; 3],
    pub second_difference: Numeric,
    pub declared: Convexity,
}

impl fmt::Display for ConvexityDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "second difference {} at ({}, {}, {}) contradicts {:?}",
            self.second_difference, self.points[0], self.points[1], self.points[2], self.declared
        )
    }
}

impl FnSpec {
    pub fn new(
        name: impl Into<String>,
        convexity: Convexity,
        eval: impl Fn(&Numeric, u32) -> Result<Numeric> + Send + Sync + 'static,
    ) -> Self {
        FnSpec {
            name: name.into(),
            eval: Arc::new(eval),
            convexity,
            log_convexity: None,
            monotone: Monotone::None,
            domain: Domain::Real,
            antiderivative: None,
            log_antiderivative: None,
        }
    }

    pub fn with_monotone(mut self, monotone: Monotone) -> Self {
        self.monotone = monotone;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// Declares `ln f` to have the given class (only convex classes make sense).
    pub fn with_log_convexity(mut self, class: Convexity) -> Self {
        self.log_convexity = Some(class);
        self
    }

    pub fn with_antiderivative(
        mut self,
        g: impl Fn(&Numeric, u32) -> Result<Numeric> + Send + Sync + 'static,
    ) -> Self {
        self.antiderivative = Some(Arc::new(g));
        self
    }

    /// Antiderivative of `ln f`, used as the oracle for geometric-mean brackets.
    pub fn with_log_antiderivative(
        mut self,
        g: impl Fn(&Numeric, u32) -> Result<Numeric> + Send + Sync + 'static,
    ) -> Self {
        self.log_antiderivative = Some(Arc::new(g));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn convexity(&self) -> Convexity {
        self.convexity
    }

    pub fn log_convexity(&self) -> Option<Convexity> {
        self.log_convexity
    }

    pub fn is_log_convex(&self) -> bool {
        self.log_convexity.is_some_and(Convexity::is_convex)
    }

    pub fn monotone(&self) -> Monotone {
        self.monotone
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn eval(&self, t: &Numeric, prec: u32) -> Result<Numeric> {
        if !self.domain.admits(t, prec) {
            return Err(Error::domain(format!(
                "{} is outside the domain of `{}`",
                t, self.name
            )));
        }
        (self.eval)(t, prec)
    }

    /// Checks `a < b` and that `[a, b]` lies in the domain.
    pub fn check_interval(&self, a: &Numeric, b: &Numeric, prec: u32) -> Result<()> {
        check_interval(a, b)?;
        for t in [a, b] {
            if !self.domain.admits(t, prec) {
                return Err(Error::domain(format!(
                    "[{a}, {b}] leaves the domain of `{}`",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// `-f`, with every tag flipped accordingly.
    pub fn negated(&self) -> FnSpec {
        let eval = self.eval.clone();
        let anti = self.antiderivative.clone();
        FnSpec {
            name: format!("-({})", self.name),
            eval: Arc::new(move |t, p| Ok(-eval(t, p)?)),
            convexity: self.convexity.negated(),
            log_convexity: None,
            monotone: match self.monotone {
                Monotone::Increasing => Monotone::Decreasing,
                Monotone::Decreasing => Monotone::Increasing,
                Monotone::None => Monotone::None,
            },
            domain: self.domain.clone(),
            antiderivative: anti.map(|g| -> EvalFn { Arc::new(move |t, p| Ok(-g(t, p)?)) }),
            log_antiderivative: None,
        }
    }

    /// `∫_a^b f`, when a closed-form antiderivative is registered.
    pub fn integral(&self, a: &Numeric, b: &Numeric, prec: u32) -> Option<Result<Numeric>> {
        let g = self.antiderivative.as_ref()?;
        Some((|| Ok(g(b, prec)? - g(a, prec)?))())
    }

    /// `exp((1/(b-a)) ∫_a^b ln f)`, when a closed form is registered.
    pub fn geometric_mean(&self, a: &Numeric, b: &Numeric, prec: u32) -> Option<Result<Numeric>> {
        let g = self.log_antiderivative.as_ref()?;
        Some((|| {
            let avg = (g(b, prec)? - g(a, prec)?).try_div(&(b - a))?;
            Ok(avg.exp(prec))
        })())
    }

    /// Samples `samples` triples in `[a, b]` on a deterministic low-discrepancy
    /// sequence offset by `seed` and reports every second difference whose sign
    /// contradicts the declared convexity. An empty result means no contradiction.
    pub fn spot_check(
        &self,
        a: &Numeric,
        b: &Numeric,
        samples: usize,
        seed: u64,
        prec: u32,
    ) -> Result<Vec<ConvexityDiagnostic>> {
        self.check_interval(a, b, prec)?;
        // 0.6180339887... truncated: an irrational-like rotation step on rationals
        let step = Rational::from((6_180_339_887i64, 10_000_000_000i64));
        let width = b - a;
        let mut found = Vec::new();
        for k in 0..samples as u64 {
            let mut u = Rational::from(&step * Rational::from(k + 1 + seed));
            u -= Rational::from(u.floor_ref());
            if u == 0 {
                continue;
            }
            let half = Rational::from(u.clone().min(Rational::from(1) - &u)) / 2u32;
            let centre = a + &(&width * &Numeric::from(u));
            let h = &width * &Numeric::from(half);
            let t1 = &centre - &h;
            let t3 = &centre + &h;
            let f1 = self.eval(&t1, prec)?;
            let f2 = self.eval(&centre, prec)?;
            let f3 = self.eval(&t3, prec)?;
            let second = ((&f3 - &f2) - (&f2 - &f1)).try_div(&h)?;
            let bad = match (self.convexity, second.sign()) {
                (Convexity::Affine, Some(s)) => s != Ordering::Equal,
                (c, Some(Ordering::Less)) if c.is_convex() => true,
                (c, Some(Ordering::Greater)) if c.is_concave() => true,
                _ => false,
            };
            if bad {
                found.push(ConvexityDiagnostic {
                    points: [t1, centre, t3],
                    second_difference: second,
                    declared: self.convexity,
                });
            }
        }
        Ok(found)
    }
}

/// Names accepted by [`lookup`].
pub const REGISTRY: &[&str] = &[
    "square",
    "exp",
    "reciprocal",
    "neg-log",
    "abs-shift",
    "abs-shift:c",
    "affine",
    "power:r",
    "sin",
];

fn t_ln_t_minus_t(t: &Numeric, p: u32) -> Result<Numeric> {
    if t.as_rational().is_some_and(|q| *q == 0) {
        return Ok(Numeric::zero());
    }
    Ok(t * &t.ln(p)? - t.clone())
}

/// `t²`, strictly convex on ℝ.
pub fn square() -> FnSpec {
    FnSpec::new("square", Convexity::StrictlyConvex, |t, _| Ok(t * t))
        .with_antiderivative(|t, _| Ok(&(t * t) * t / Numeric::from(3)))
}

/// `e^t`: strictly convex, increasing, and log-affine.
pub fn exp() -> FnSpec {
    FnSpec::new("exp", Convexity::StrictlyConvex, |t, p| Ok(t.exp(p)))
        .with_monotone(Monotone::Increasing)
        .with_log_convexity(Convexity::Affine)
        .with_antiderivative(|t, p| Ok(t.exp(p)))
        .with_log_antiderivative(|t, _| Ok(t * t / Numeric::from(2)))
}

/// `1/t` on `t > 0`: strictly convex, decreasing, strictly log-convex.
pub fn reciprocal() -> FnSpec {
    FnSpec::new("reciprocal", Convexity::StrictlyConvex, |t, _| t.recip())
        .with_domain(Domain::Positive)
        .with_monotone(Monotone::Decreasing)
        .with_log_convexity(Convexity::StrictlyConvex)
        .with_antiderivative(|t, p| t.ln(p))
        .with_log_antiderivative(|t, p| Ok(-t_ln_t_minus_t(t, p)?))
}

/// `-ln t` on `t > 0`: strictly convex, decreasing.
pub fn neg_log() -> FnSpec {
    FnSpec::new("neg-log", Convexity::StrictlyConvex, |t, p| Ok(-t.ln(p)?))
        .with_domain(Domain::Positive)
        .with_monotone(Monotone::Decreasing)
        .with_antiderivative(|t, p| Ok(-t_ln_t_minus_t(t, p)?))
}

/// `|t - c|`: convex but not strictly.
pub fn abs_shift(c: Rational) -> FnSpec {
    let c1 = Numeric::from(c.clone());
    let c2 = Numeric::from(c.clone());
    FnSpec::new(format!("abs-shift:{c}"), Convexity::Convex, move |t, _| {
        Ok((t - &c1).abs())
    })
    .with_antiderivative(move |t, _| {
        let d = t - &c2;
        let sq = &d * &d / Numeric::from(2);
        Ok(match d.sign() {
            Some(Ordering::Less) => -sq,
            _ => sq,
        })
    })
}

/// `t` itself.
pub fn affine() -> FnSpec {
    FnSpec::new("affine", Convexity::Affine, |t, _| Ok(t.clone()))
        .with_monotone(Monotone::Increasing)
        .with_antiderivative(|t, _| Ok(t * t / Numeric::from(2)))
}

/// `t^r` for rational `r`, tagged by the sign pattern of `r(r-1)`.
pub fn power(r: Rational) -> FnSpec {
    let one = Rational::from(1);
    let is_int = *r.denom() == 1;
    let even = is_int && r.numer().is_even();
    let (convexity, domain, monotone) = if r == 0 {
        (Convexity::Affine, Domain::Real, Monotone::None)
    } else if r == one {
        (Convexity::Affine, Domain::Real, Monotone::Increasing)
    } else if r > one {
        let domain = if even { Domain::Real } else { Domain::NonNegative };
        let monotone = if even { Monotone::None } else { Monotone::Increasing };
        (Convexity::StrictlyConvex, domain, monotone)
    } else if r > 0 {
        (Convexity::StrictlyConcave, Domain::NonNegative, Monotone::Increasing)
    } else {
        (Convexity::StrictlyConvex, Domain::Positive, Monotone::Decreasing)
    };
    let r_eval = r.clone();
    let mut spec = FnSpec::new(format!("power:{r}"), convexity, move |t, p| {
        t.pow(&r_eval, p)
    })
    .with_domain(domain)
    .with_monotone(monotone);
    if r < 0 {
        let r_log = Numeric::from(r.clone());
        spec = spec
            .with_log_convexity(Convexity::StrictlyConvex)
            .with_log_antiderivative(move |t, p| Ok(&r_log * &t_ln_t_minus_t(t, p)?));
    }
    if r == -1 {
        spec.with_antiderivative(|t, p| t.ln(p))
    } else {
        let r1 = Rational::from(&r + 1);
        spec.with_antiderivative(move |t, p| {
            t.pow(&r1, p)?.try_div(&Numeric::from(r1.clone()))
        })
    }
}

/// `sin t` on `[0, π]`, strictly concave there.
pub fn sin() -> FnSpec {
    FnSpec::new("sin", Convexity::StrictlyConcave, |t, p| Ok(t.sin(p)))
        .with_domain(Domain::ZeroToPi)
        .with_antiderivative(|t, p| Ok(-t.cos(p)))
}

/// Resolves a registry name such as `square`, `power:3/2` or `abs-shift:1/4`.
pub fn lookup(name: &str) -> Result<FnSpec> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let param = |a: &str| parse_rational(a).map_err(|_| Error::UnknownFunction(name.to_string()));
    match (head, arg) {
        ("square", None) => Ok(square()),
        ("exp", None) => Ok(exp()),
        ("reciprocal", None) => Ok(reciprocal()),
        ("neg-log", None) => Ok(neg_log()),
        ("abs-shift", None) => Ok(abs_shift(Rational::from((1, 2)))),
        ("abs-shift", Some(c)) => Ok(abs_shift(param(c)?)),
        ("affine", None) => Ok(affine()),
        ("power", Some(r)) => Ok(power(param(r)?)),
        ("sin", None) => Ok(sin()),
        _ => Err(Error::UnknownFunction(name.to_string())),
    }
}
