//! Segment integrals `∫_0^1 ‖(1-t)x + ty‖^q dt` for coordinate p-norms.
//!
//! `φ(t) = ‖(1-t)x + ty‖_p^q` is convex for `p, q >= 1` and strictly convex when
//! `1 < p < ∞` and `x, y` are linearly independent, so the Riemann brackets of
//! the convex engine apply on `[0, 1]` after clearing the `1/n` from the grid.

use std::cmp::Ordering;

use rug::Rational;

use crate::error::{Error, Result};
use crate::numeric::Numeric;
use crate::verdict::{Bracket, Check, PowerProduct};

/// Two vectors of equal dimension and the exponents of `‖·‖_p^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorPair {
    x: Vec<Numeric>,
    y: Vec<Numeric>,
    norm_p: Rational,
    power_q: Rational,
}

/// Whether `x` and `y` are linearly independent, when that can be certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    Dependent,
    Undecided,
}

impl VectorPair {
    pub fn new(x: Vec<Numeric>, y: Vec<Numeric>, norm_p: Rational, power_q: Rational) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::invalid(format!(
                "vectors must have the same positive dimension, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        if norm_p < 1 || power_q < 1 {
            return Err(Error::invalid(format!(
                "norm and power exponents must be >= 1, got {norm_p} and {power_q}"
            )));
        }
        let zero = |v: &[Numeric]| v.iter().all(|c| c.sign() == Some(Ordering::Equal));
        if zero(&x) && zero(&y) {
            return Err(Error::invalid("x and y must not both be zero"));
        }
        Ok(VectorPair {
            x,
            y,
            norm_p,
            power_q,
        })
    }

    /// Parses comma-separated rationals for each vector.
    pub fn parse(x: &str, y: &str, norm_p: Rational, power_q: Rational) -> Result<Self> {
        let coords = |s: &str| s.split(',').map(Numeric::parse).collect::<Result<Vec<_>>>();
        VectorPair::new(coords(x)?, coords(y)?, norm_p, power_q)
    }

    pub fn x(&self) -> &[Numeric] {
        &self.x
    }

    pub fn y(&self) -> &[Numeric] {
        &self.y
    }

    pub fn norm_p(&self) -> &Rational {
        &self.norm_p
    }

    pub fn power_q(&self) -> &Rational {
        &self.power_q
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `s·x, s·y`.
    pub fn scaled(&self, s: &Numeric) -> VectorPair {
        let scale = |v: &[Numeric]| v.iter().map(|c| c * s).collect();
        VectorPair {
            x: scale(&self.x),
            y: scale(&self.y),
            ..self.clone()
        }
    }

    /// Rank test on the `2 × d` matrix through its `2 × 2` minors.
    pub fn independence(&self) -> Independence {
        let mut undecided = false;
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let minor = &(&self.x[i] * &self.y[j]) - &(&self.x[j] * &self.y[i]);
                match minor.sign() {
                    Some(Ordering::Equal) => {}
                    Some(_) => return Independence::Independent,
                    None => undecided = true,
                }
            }
        }
        if undecided {
            Independence::Undecided
        } else {
            Independence::Dependent
        }
    }

    /// `φ` is affine on `[0, 1]`: with `q = 1`, every coordinate keeps its sign
    /// along the segment (`p = 1`), or `x, y` point the same way (`p > 1`).
    pub fn phi_is_affine(&self) -> bool {
        if self.power_q != 1 {
            return false;
        }
        let same_side = |i: usize| {
            matches!(
                (&self.x[i] * &self.y[i]).sign(),
                Some(Ordering::Greater | Ordering::Equal)
            )
        };
        if self.norm_p == 1 {
            return (0..self.dim()).all(same_side);
        }
        self.independence() == Independence::Dependent && (0..self.dim()).all(same_side)
    }

    /// Whether every inequality must be strict: `p > 1` and `x, y` independent.
    /// `None` when independence cannot be certified.
    pub fn strict_expected(&self) -> Option<bool> {
        if self.norm_p == 1 {
            return Some(false);
        }
        match self.independence() {
            Independence::Independent => Some(true),
            Independence::Dependent => Some(false),
            Independence::Undecided => None,
        }
    }

    /// `‖v‖_p^q`.
    fn norm_power(&self, v: &[Numeric], prec: u32) -> Result<Numeric> {
        let sum: Numeric = v
            .iter()
            .map(|c| c.abs().pow(&self.norm_p, prec))
            .sum::<Result<Numeric>>()?;
        sum.pow(&Rational::from(&self.power_q / &self.norm_p), prec)
    }

    /// `(k-i)x + iy`.
    fn grid_vector(&self, k: usize, i: usize) -> Vec<Numeric> {
        let (u, w) = (Numeric::from(k - i), Numeric::from(i));
        self.x
            .iter()
            .zip(&self.y)
            .map(|(a, b)| &(a * &u) + &(b * &w))
            .collect()
    }

    /// Exact form of `‖v‖_p^q` when it is a rational power of a rational.
    fn norm_power_exact(&self, v: &[Numeric]) -> Option<PowerProduct> {
        let mut sum = Rational::new();
        for c in v {
            let c = c.as_rational()?;
            if *self.norm_p.denom() != 1 {
                return None;
            }
            let e = self.norm_p.numer().to_u32()?;
            sum += rug::ops::Pow::pow(Rational::from(c.abs_ref()), e);
        }
        Some(PowerProduct::of(sum, Rational::from(&self.power_q / &self.norm_p)))
    }
}

/// `φ(t) = ‖(1-t)x + ty‖_p^q`.
pub fn phi_eval(vp: &VectorPair, t: &Numeric, prec: u32) -> Result<Numeric> {
    let s = &Numeric::one() - t;
    let z: Vec<Numeric> = vp
        .x
        .iter()
        .zip(&vp.y)
        .map(|(a, b)| &(a * &s) + &(b * t))
        .collect();
    vp.norm_power(&z, prec)
}

/// `∫_0^1 φ` in closed form when `p = q` is an integer, coordinate by coordinate.
pub fn segment_integral_exact(vp: &VectorPair, prec: u32) -> Option<Result<Numeric>> {
    if vp.norm_p != vp.power_q || *vp.norm_p.denom() != 1 {
        return None;
    }
    let p = vp.norm_p.numer().to_i64()?;
    let p1 = Numeric::from(p + 1);
    let term = |a: &Numeric, b: &Numeric| -> Result<Numeric> {
        let delta = (b - a).abs();
        if delta.sign() == Some(Ordering::Equal) {
            return a.abs().powi(p, prec);
        }
        let (ea, eb) = (a.abs().powi(p + 1, prec)?, b.abs().powi(p + 1, prec)?);
        let same_side = matches!((a * b).sign(), Some(Ordering::Greater | Ordering::Equal));
        let top = if same_side { (&eb - &ea).abs() } else { &ea + &eb };
        top.try_div(&(&p1 * &delta))
    };
    Some(
        vp.x.iter()
            .zip(&vp.y)
            .map(|(a, b)| term(a, b))
            .sum::<Result<Numeric>>(),
    )
}

/// Brackets of `∫_0^1 φ` and the ratio chains around `n/(n+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentReport {
    /// `Σ_{i=1}^{n-1} ‖(n-i)x+iy‖^q / (n^q (n-1))` and `Σ_{i=0}^{n} ‖(n-i)x+iy‖^q / (n^q (n+1))`.
    pub bracket: Bracket,
    /// Interior ratio `<= n/(n+1)` and `n/(n+1) <=` endpoint ratio.
    pub ratios: [Check; 2],
    /// `‖(x+y)/2‖^q <= ∫ <= (‖x‖^q + ‖y‖^q)/2`.
    pub classical: [Check; 2],
    /// Closed-form integral, or an enclosure from a finer bracket.
    pub integral: Numeric,
    pub integral_is_closed_form: bool,
    pub containment: [Check; 2],
    pub strict_expected: Option<bool>,
    pub affine: bool,
}

struct Sums {
    interior: Numeric,
    inclusive: Numeric,
    interior_exact: Option<Vec<PowerProduct>>,
    inclusive_exact: Option<Vec<PowerProduct>>,
}

fn grid_sums(vp: &VectorPair, k: usize, prec: u32) -> Result<Sums> {
    let vectors: Vec<Vec<Numeric>> = (0..=k).map(|i| vp.grid_vector(k, i)).collect();
    let values = vectors
        .iter()
        .map(|v| vp.norm_power(v, prec))
        .collect::<Result<Vec<_>>>()?;
    let exact: Option<Vec<PowerProduct>> = vectors.iter().map(|v| vp.norm_power_exact(v)).collect();
    let interior: Numeric = values[1..k].iter().sum();
    let inclusive: Numeric = values.iter().sum();
    Ok(Sums {
        interior,
        inclusive,
        interior_exact: exact.as_ref().map(|e| e[1..k].to_vec()),
        inclusive_exact: exact,
    })
}

/// The sum of power products is exact only when every term is rational.
fn rational_sum(terms: &Option<Vec<PowerProduct>>, prec: u32) -> Option<Rational> {
    let mut total = Rational::new();
    for t in terms.as_ref()? {
        total += t.eval(prec).ok()?.as_rational()?.clone();
    }
    Some(total)
}

fn hull(a: &Numeric, b: &Numeric, prec: u32) -> Numeric {
    let mid = &(a + b) / &Numeric::from(2);
    let half = (&(b - a).abs() / &Numeric::from(2)).to_interval(prec);
    let r = half.hi().to_rational().expect("finite");
    mid.widen(&r, prec)
}

/// Order used for the fallback enclosure of `∫_0^1 φ`.
const REFINED_ORDER: usize = 64;

pub fn segment_integral_bracket(vp: &VectorPair, n: usize, prec: u32) -> Result<SegmentReport> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "the interior side needs n >= 2, got {n}"
        )));
    }
    let affine = vp.phi_is_affine();
    let q = &vp.power_q;
    let nq = Numeric::from(n).pow(q, prec)?;
    let here = grid_sums(vp, n, prec)?;
    let lower = here.interior.try_div(&(&nq * &Numeric::from(n - 1)))?;
    let upper = here.inclusive.try_div(&(&nq * &Numeric::from(n + 1)))?;
    let bracket = Bracket::new(
        lower,
        upper,
        format!("interior segment sum, order {n}"),
        format!("endpoint-inclusive segment sum, order {n}"),
    );

    // ratio chains: compare the q-th powers, which are rational when the sums are
    let next = grid_sums(vp, n + 1, prec)?;
    let inv_q = Rational::from(q.recip_ref());
    let bound = Rational::from((n, n + 1));
    let ratio = |top: &Numeric,
                 top_exact: Option<Rational>,
                 top_w: usize,
                 bottom: &Numeric,
                 bottom_exact: Option<Rational>,
                 bottom_w: usize|
     -> Result<(Numeric, Option<PowerProduct>)> {
        let radicand = (top * &Numeric::from(top_w)).try_div(&(bottom * &Numeric::from(bottom_w)))?;
        let exact = match (top_exact, bottom_exact) {
            (Some(t), Some(b)) if b != 0 => Some(PowerProduct::of(
                t * Rational::from(top_w) / (b * Rational::from(bottom_w)),
                inv_q.clone(),
            )),
            _ => None,
        };
        Ok((radicand.pow(&inv_q, prec)?, exact))
    };
    let left_value = ratio(
        &here.interior,
        rational_sum(&here.interior_exact, prec),
        n,
        &next.interior,
        rational_sum(&next.interior_exact, prec),
        n - 1,
    )?;
    let right_value = ratio(
        &here.inclusive,
        rational_sum(&here.inclusive_exact, prec),
        n + 2,
        &next.inclusive,
        rational_sum(&next.inclusive_exact, prec),
        n + 1,
    )?;
    let decide = |name: &str, small: (Numeric, Option<PowerProduct>), large: (Numeric, Option<PowerProduct>)| {
        match (&small.1, &large.1) {
            (Some(s), Some(l)) => Check::with_witness(name, small.0, large.0, l.cmp_exact(s)),
            _ => Check::with_hint(name, small.0, large.0, affine),
        }
    };
    let bound_side = || {
        (
            Numeric::from(bound.clone()),
            Some(PowerProduct::rational(bound.clone())),
        )
    };
    let ratios = [
        decide("interior ratio <= n/(n+1)", left_value, bound_side()),
        decide("n/(n+1) <= endpoint ratio", bound_side(), right_value),
    ];

    let (integral, closed) = match segment_integral_exact(vp, prec) {
        Some(v) => (v?, true),
        None if affine => {
            let ends = &phi_eval(vp, &Numeric::zero(), prec)? + &phi_eval(vp, &Numeric::one(), prec)?;
            (&ends / &Numeric::from(2), true)
        }
        None => {
            let k = REFINED_ORDER.max(2 * n);
            let fine = grid_sums(vp, k, prec)?;
            let kq = Numeric::from(k).pow(q, prec)?;
            let lo = fine.interior.try_div(&(&kq * &Numeric::from(k - 1)))?;
            let hi = fine.inclusive.try_div(&(&kq * &Numeric::from(k + 1)))?;
            (hull(&lo, &hi, prec), false)
        }
    };
    let containment = bracket.containment(&integral, affine);
    let mid: Vec<Numeric> = vp
        .x
        .iter()
        .zip(&vp.y)
        .map(|(a, b)| &(a + b) / &Numeric::from(2))
        .collect();
    let midpoint = vp.norm_power(&mid, prec)?;
    let ends = &(&vp.norm_power(&vp.x, prec)? + &vp.norm_power(&vp.y, prec)?) / &Numeric::from(2);
    let classical = [
        Check::with_hint("‖(x+y)/2‖^q <= ∫", midpoint, integral.clone(), affine),
        Check::with_hint("∫ <= (‖x‖^q+‖y‖^q)/2", integral.clone(), ends, affine),
    ];
    Ok(SegmentReport {
        bracket,
        ratios,
        classical,
        integral,
        integral_is_closed_form: closed,
        containment,
        strict_expected: vp.strict_expected(),
        affine,
    })
}
