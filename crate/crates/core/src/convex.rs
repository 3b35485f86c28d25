//! Riemann-sum sequences of convex functions, the two-partition inequality and
//! the integral brackets built from them.
//!
//! The four sequences on the uniform grid `x_i = a + i(b-a)/n` are
//!
//! * `A_n = (b-a)/(n+1) Σ_{i=0}^{n} f(x_i)` (both endpoints),
//! * `B_n = (b-a)/(n-1) Σ_{i=1}^{n-1} f(x_i)` (neither endpoint, `n >= 2`),
//! * `S_n = (b-a)/n Σ_{i=1}^{n} f(x_i)` (right endpoints),
//! * `T_n = (b-a)/n Σ_{i=0}^{n-1} f(x_i)` (left endpoints).
//!
//! For convex `f`, `A_n` decreases and `B_n` increases to `∫_a^b f`. Concave
//! functions are handled by running the convex path on `-f` and mapping the
//! result back, so every engine below only ever sees convex or affine input.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{Convexity, FnSpec, Monotone};
use crate::numeric::Numeric;
use crate::partition::{grid_point, interleaving_valid, Partition};
use crate::verdict::{Bracket, Check, PowerProduct, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SequenceKind {
    A,
    B,
    S,
    T,
}

impl SequenceKind {
    /// Smallest order for which the sequence is defined.
    pub fn min_order(self) -> usize {
        match self {
            SequenceKind::B => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(SequenceKind::A),
            "B" | "b" => Ok(SequenceKind::B),
            "S" | "s" => Ok(SequenceKind::S),
            "T" | "t" => Ok(SequenceKind::T),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

fn grid_values(f: &FnSpec, a: &Numeric, b: &Numeric, n: usize, prec: u32) -> Result<Vec<Numeric>> {
    (0..=n)
        .map(|i| f.eval(&grid_point(a, b, i, n), prec))
        .collect()
}

fn average(values: &[Numeric]) -> Numeric {
    values.iter().sum::<Numeric>() / Numeric::from(values.len())
}

/// Value of `A_n`, `B_n`, `S_n` or `T_n` for `f` on `[a, b]`.
pub fn sequence_value(
    kind: SequenceKind,
    f: &FnSpec,
    a: &Numeric,
    b: &Numeric,
    n: usize,
    prec: u32,
) -> Result<Numeric> {
    f.check_interval(a, b, prec)?;
    if n < kind.min_order() {
        return Err(Error::invalid(format!(
            "{kind}_n needs n >= {}, got {n}",
            kind.min_order()
        )));
    }
    let values = grid_values(f, a, b, n, prec)?;
    let width = b - a;
    let slice = match kind {
        SequenceKind::A => &values[..],
        SequenceKind::B => &values[1..n],
        SequenceKind::S => &values[1..],
        SequenceKind::T => &values[..n],
    };
    Ok(&width * &average(slice))
}

/// Both sides of the two-partition inequalities and their verdicts.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoPartitionReport {
    /// `Σ_{i=1}^{n} (x_i - x_{i-1}) f(y_i) <= Σ_{i=0}^{n} (x_{i+1} - x_{i-1} + y_i - y_{i+1}) f(x_i)`.
    pub ineq2: Check,
    /// `Σ_{i=0}^{n} (y_{i+1} - y_i) f(x_i) <= Σ_{i=0}^{n+1} (y_{i+1} - y_{i-1} + x_{i-1} - x_i) f(y_i)`.
    pub ineq1: Check,
    /// The single combined form: mixed sum against the smaller of the two trapezoid sums.
    pub combined: Check,
    /// Some `x_{i-1} < y_i < x_i` with `1 <= i <= n`: strictness of `ineq2` is guaranteed for strictly convex `f`.
    pub ineq2_strict_condition: bool,
    /// Some `y_i < x_i < y_{i+1}` with `1 <= i <= n-1`: strictness of `ineq1` is guaranteed for strictly convex `f`.
    pub ineq1_strict_condition: bool,
}

/// Evaluates both two-partition inequalities for convex (or affine) `f`.
///
/// `x` has order `n`, `y` has order `n + 1`, and they must interleave. Indices
/// outside the partitions follow `x_{-1} = y_{-1} = a`, `x_{n+1} = y_{n+2} = b`.
pub fn two_partition_sides(
    f: &FnSpec,
    x: &Partition,
    y: &Partition,
    prec: u32,
) -> Result<TwoPartitionReport> {
    if !f.convexity().is_convex() {
        return Err(Error::invalid(format!(
            "`{}` is tagged {:?}; negate a concave function before calling the two-partition engine",
            f.name(),
            f.convexity()
        )));
    }
    if !interleaving_valid(x, y)? {
        return Err(Error::NotInterleaved(
            "x_{i-1} <= y_i <= x_i fails for some i".to_string(),
        ));
    }
    f.check_interval(x.a(), x.b(), prec)?;
    let n = x.order();
    let a = x.a();
    let b = x.b();
    let xs = x.points();
    let ys = y.points();
    // x_j and y_j with the boundary conventions
    let xp = |j: isize| -> &Numeric {
        if j < 0 {
            a
        } else if j as usize > n {
            b
        } else {
            &xs[j as usize]
        }
    };
    let yp = |j: isize| -> &Numeric {
        if j < 0 {
            a
        } else if j as usize > n + 1 {
            b
        } else {
            &ys[j as usize]
        }
    };
    let fx = xs
        .iter()
        .map(|t| f.eval(t, prec))
        .collect::<Result<Vec<_>>>()?;
    let fy = ys
        .iter()
        .map(|t| f.eval(t, prec))
        .collect::<Result<Vec<_>>>()?;
    let ni = n as isize;

    let lhs2: Numeric = (1..=ni)
        .map(|i| &(xp(i) - xp(i - 1)) * &fy[i as usize])
        .sum();
    let rhs2: Numeric = (0..=ni)
        .map(|i| &(&(xp(i + 1) - xp(i - 1)) + &(yp(i) - yp(i + 1))) * &fx[i as usize])
        .sum();
    let lhs1: Numeric = (0..=ni)
        .map(|i| &(yp(i + 1) - yp(i)) * &fx[i as usize])
        .sum();
    let rhs1: Numeric = (0..=ni + 1)
        .map(|i| &(&(yp(i + 1) - yp(i - 1)) + &(xp(i - 1) - xp(i))) * &fy[i as usize])
        .sum();

    let mixed = &lhs1
        + &(0..ni)
            .map(|i| &(xp(i + 1) - xp(i)) * &fy[i as usize + 1])
            .sum::<Numeric>();
    let trap_y: Numeric = (0..=ni)
        .map(|i| &(yp(i + 1) - yp(i)) * &(&fy[i as usize] + &fy[i as usize + 1]))
        .sum();
    let trap_x: Numeric = (0..ni)
        .map(|i| &(xp(i + 1) - xp(i)) * &(&fx[i as usize] + &fx[i as usize + 1]))
        .sum();

    let strictly_between = |lo: &Numeric, t: &Numeric, hi: &Numeric| {
        lo.certified_cmp(t) == Some(std::cmp::Ordering::Less)
            && t.certified_cmp(hi) == Some(std::cmp::Ordering::Less)
    };
    let ineq2_strict_condition = (1..=ni).any(|i| strictly_between(xp(i - 1), yp(i), xp(i)));
    let ineq1_strict_condition = (1..ni).any(|i| strictly_between(yp(i), xp(i), yp(i + 1)));

    let affine = f.convexity() == Convexity::Affine;
    Ok(TwoPartitionReport {
        ineq2: Check::with_hint("two-partition (x-weighted)", lhs2, rhs2, affine),
        ineq1: Check::with_hint("two-partition (y-weighted)", lhs1, rhs1, affine),
        combined: Check::with_hint("two-partition (combined)", mixed, trap_y.min(&trap_x), affine),
        ineq2_strict_condition,
        ineq1_strict_condition,
    })
}

fn convex_view(f: &FnSpec) -> Result<(FnSpec, bool)> {
    let c = f.convexity();
    if c.is_convex() {
        Ok((f.clone(), false))
    } else if c.is_concave() {
        Ok((f.negated(), true))
    } else {
        unreachable!("every convexity class is convex or concave")
    }
}

/// Bracket of `∫_a^b f` from `B_m` and `A_n` (`m >= 2`, `n >= 1`).
///
/// For convex `f` the lower side is `B_m` and the upper side `A_n`; for concave
/// `f` the roles swap. `m = 2, n = 1` is the midpoint/trapezoid pair.
pub fn hh_bracket(
    f: &FnSpec,
    a: &Numeric,
    b: &Numeric,
    m: usize,
    n: usize,
    prec: u32,
) -> Result<Bracket> {
    if m < 2 || n < 1 {
        return Err(Error::invalid(format!(
            "bracket needs m >= 2 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    let (g, negated) = convex_view(f)?;
    let lower = sequence_value(SequenceKind::B, &g, a, b, m, prec)?;
    let upper = sequence_value(SequenceKind::A, &g, a, b, n, prec)?;
    let bracket = Bracket::new(
        lower,
        upper,
        format!("interior Riemann mean B_{m}"),
        format!("endpoint-inclusive Riemann mean A_{n}"),
    );
    Ok(if negated { bracket.negated() } else { bracket })
}

/// Geometric-mean bracket and ratio checks for a positive log-convex function.
#[derive(Clone, Debug, PartialEq)]
pub struct LogBracketReport {
    /// Encloses `exp((1/(b-a)) ∫_a^b ln f)`.
    pub geo_bracket: Bracket,
    /// `G_B(m) / G_B(m+1) <= 1`, interior geometric means.
    pub left_ratio: Check,
    /// `1 <= G_A(n) / G_A(n+1)`, endpoint-inclusive geometric means.
    pub right_ratio: Check,
}

struct GeoMean {
    value: Numeric,
    witness: Option<PowerProduct>,
}

fn geo_mean(values: &[Numeric], prec: u32) -> Result<GeoMean> {
    let k = values.len() as u32;
    let product = values.iter().fold(Numeric::one(), |acc, v| acc * v);
    let witness = product
        .as_rational()
        .map(|p| PowerProduct::of(p.clone(), rug::Rational::from((1, k))));
    Ok(GeoMean {
        value: product.root(k, prec)?,
        witness,
    })
}

fn positive_grid(f: &FnSpec, a: &Numeric, b: &Numeric, n: usize, prec: u32) -> Result<Vec<Numeric>> {
    let values = grid_values(f, a, b, n, prec)?;
    for (i, v) in values.iter().enumerate() {
        if v.sign() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::domain(format!(
                "`{}` is not positive at grid point {i}/{n} (value {v})",
                f.name()
            )));
        }
    }
    Ok(values)
}

fn ratio_check(
    name: &str,
    smaller: &GeoMean,
    larger: &GeoMean,
    equality_expected: bool,
) -> Result<Check> {
    // smaller/larger <= 1 is the same claim as smaller <= larger, decided on the products
    let ratio = smaller.value.try_div(&larger.value)?;
    let witness = match (&smaller.witness, &larger.witness) {
        (Some(s), Some(l)) => l.cmp_exact(s),
        _ => None,
    };
    Ok(match witness {
        Some(w) => Check::with_witness(name, ratio, Numeric::one(), Some(w)),
        None => Check::with_hint(name, ratio, Numeric::one(), equality_expected),
    })
}

/// Bracket of the geometric mean of a positive log-convex `f`, with the two
/// ratio chains around 1.
pub fn log_bracket(
    f: &FnSpec,
    a: &Numeric,
    b: &Numeric,
    m: usize,
    n: usize,
    prec: u32,
) -> Result<LogBracketReport> {
    if !f.is_log_convex() {
        return Err(Error::invalid(format!("`{}` is not tagged log-convex", f.name())));
    }
    if m < 2 || n < 1 {
        return Err(Error::invalid(format!(
            "log bracket needs m >= 2 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    f.check_interval(a, b, prec)?;
    let interior = |k: usize| -> Result<GeoMean> {
        let v = positive_grid(f, a, b, k, prec)?;
        geo_mean(&v[1..k], prec)
    };
    let inclusive = |k: usize| -> Result<GeoMean> {
        let v = positive_grid(f, a, b, k, prec)?;
        geo_mean(&v, prec)
    };
    let gb_m = interior(m)?;
    let gb_m1 = interior(m + 1)?;
    let ga_n = inclusive(n)?;
    let ga_n1 = inclusive(n + 1)?;
    let log_affine = f.log_convexity() == Some(Convexity::Affine);

    let left_ratio = ratio_check("G_B(m)/G_B(m+1) <= 1", &gb_m, &gb_m1, log_affine)?;
    // 1 <= G_A(n)/G_A(n+1), phrased as G_A(n+1)/G_A(n) <= 1 for the exact decision
    let flipped = ratio_check("", &ga_n1, &ga_n, log_affine)?;
    let right = ga_n.value.try_div(&ga_n1.value)?;
    let right_ratio = Check {
        name: "1 <= G_A(n)/G_A(n+1)".to_string(),
        smaller: Numeric::one(),
        verdict: crate::verdict::Verdict {
            status: flipped.verdict.status,
            margin: if flipped.verdict.status == Status::HoldsWithEquality && right.is_exact() {
                Numeric::zero()
            } else {
                &right - &Numeric::one()
            },
        },
        larger: right,
    };

    Ok(LogBracketReport {
        geo_bracket: Bracket::new(
            gb_m.value,
            ga_n.value,
            format!("interior geometric mean G_B({m})"),
            format!("endpoint-inclusive geometric mean G_A({n})"),
        ),
        left_ratio,
        right_ratio,
    })
}

/// A three-term chain `left <= middle <= right` (or reversed) with both checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub left: Numeric,
    pub middle: Numeric,
    pub right: Numeric,
    /// `left <= middle`, or `middle <= left` when reversed.
    pub left_check: Check,
    /// `middle <= right`, or `right <= middle` when reversed.
    pub right_check: Check,
    /// True for concave `f`, where every inequality points the other way.
    pub reversed: bool,
}

fn chain(
    name: &str,
    left: Numeric,
    middle: Numeric,
    right: Numeric,
    reversed: bool,
    left_equal: bool,
    right_equal: bool,
) -> Chain {
    let (left_check, right_check) = if reversed {
        (
            Check::with_hint(format!("{name}: left"), middle.clone(), left.clone(), left_equal),
            Check::with_hint(format!("{name}: right"), right.clone(), middle.clone(), right_equal),
        )
    } else {
        (
            Check::with_hint(format!("{name}: left"), left.clone(), middle.clone(), left_equal),
            Check::with_hint(format!("{name}: right"), middle.clone(), right.clone(), right_equal),
        )
    };
    Chain {
        left,
        middle,
        right,
        left_check,
        right_check,
        reversed,
    }
}

/// Refinement bounds on the steps of `S_n` and `T_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StReport {
    /// `(S_{n+1} - (b-a) f(a)) / (n(n+2)) <= S_n - S_{n+1} <= ((b-a) f(b) - S_{n+1}) / n²`.
    pub s_gap: Chain,
    /// `(T_{n+1} - (b-a) f(a)) / n² <= T_{n+1} - T_n <= ((b-a) f(b) - T_{n+1}) / (n(n+2))`.
    pub t_gap: Chain,
    /// For increasing `f`: `S_{n+1} <= S_n` and `T_n <= T_{n+1}`.
    pub monotone: Option<[Check; 2]>,
}

/// Two-sided bounds on `S_n - S_{n+1}` and `T_{n+1} - T_n` (`n >= 1`).
///
/// At `n = 1` the right side of the S chain and the left side of the T chain
/// are algebraic identities and always report equality.
pub fn st_refinement(f: &FnSpec, a: &Numeric, b: &Numeric, n: usize, prec: u32) -> Result<StReport> {
    if n < 1 {
        return Err(Error::invalid("S/T refinement needs n >= 1"));
    }
    let (g, reversed) = convex_view(f)?;
    let s_n = sequence_value(SequenceKind::S, &g, a, b, n, prec)?;
    let s_n1 = sequence_value(SequenceKind::S, &g, a, b, n + 1, prec)?;
    let t_n = sequence_value(SequenceKind::T, &g, a, b, n, prec)?;
    let t_n1 = sequence_value(SequenceKind::T, &g, a, b, n + 1, prec)?;
    let width = b - a;
    let wfa = &width * &g.eval(a, prec)?;
    let wfb = &width * &g.eval(b, prec)?;
    let nn = Numeric::from(n * n);
    let nn2 = Numeric::from(n * (n + 2));

    let sign = |v: Numeric| if reversed { -v } else { v };
    let affine = f.convexity() == Convexity::Affine;
    let identity = n == 1;

    let s_gap = chain(
        "S refinement",
        sign((&s_n1 - &wfa) / &nn2),
        sign(&s_n - &s_n1),
        sign((&wfb - &s_n1) / &nn),
        reversed,
        affine,
        affine || identity,
    );
    let t_gap = chain(
        "T refinement",
        sign((&t_n1 - &wfa) / &nn),
        sign(&t_n1 - &t_n),
        sign((&wfb - &t_n1) / &nn2),
        reversed,
        affine || identity,
        affine,
    );
    let monotone = (f.monotone() == Monotone::Increasing).then(|| {
        [
            Check::with_hint("S_{n+1} <= S_n", sign(s_n1.clone()), sign(s_n.clone()), affine),
            Check::with_hint("T_n <= T_{n+1}", sign(t_n.clone()), sign(t_n1.clone()), affine),
        ]
    });
    Ok(StReport {
        s_gap,
        t_gap,
        monotone,
    })
}

/// Monotonicity and convergence of the normalized sequences `A_n/(b-a)` and `B_n/(b-a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    /// `A_n/(b-a)` for `n = 1..=n_max`.
    pub a_means: Vec<Numeric>,
    /// `B_n/(b-a)` for `n = 2..=n_max`.
    pub b_means: Vec<Numeric>,
    /// `A_{n+1} <= A_n` for `n = 1..n_max` (reversed for concave `f`).
    pub a_steps: Vec<Check>,
    /// `B_n <= B_{n+1}` for `n = 2..n_max` (reversed for concave `f`).
    pub b_steps: Vec<Check>,
    /// `B_n/(b-a) <= oracle <= A_n/(b-a)` for `n = 2..=n_max` (sides swap for concave `f`).
    pub containment: Vec<[Check; 2]>,
    /// `A_{n_max}/(b-a) - oracle`.
    pub final_gap_a: Numeric,
    /// `oracle - B_{n_max}/(b-a)`.
    pub final_gap_b: Numeric,
    /// Both final gaps below the tolerance, when one was given.
    pub converged: Option<bool>,
    /// First step that is certifiably out of order, as `(sequence, n)`.
    pub first_violation: Option<(SequenceKind, usize)>,
}

impl LimitReport {
    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.a_steps
            .iter()
            .chain(&self.b_steps)
            .chain(self.containment.iter().flatten())
    }
}

/// Checks that `A_n/(b-a)` decreases and `B_n/(b-a)` increases for `n <= n_max`,
/// and that both approach `mean_oracle = (1/(b-a)) ∫_a^b f`.
pub fn sequence_limit_check(
    f: &FnSpec,
    a: &Numeric,
    b: &Numeric,
    n_max: usize,
    mean_oracle: &Numeric,
    tolerance: Option<&Numeric>,
    prec: u32,
) -> Result<LimitReport> {
    if n_max < 2 {
        return Err(Error::invalid("limit check needs n_max >= 2"));
    }
    f.check_interval(a, b, prec)?;
    let (g, reversed) = convex_view(f)?;
    let oracle = if reversed { -mean_oracle } else { mean_oracle.clone() };
    let affine = f.convexity() == Convexity::Affine;

    let means: Vec<(Numeric, Option<Numeric>)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let v = grid_values(&g, a, b, n, prec)?;
            let a_mean = average(&v);
            let b_mean = (n >= 2).then(|| average(&v[1..n]));
            Ok((a_mean, b_mean))
        })
        .collect::<Result<Vec<_>>>()?;
    let a_means: Vec<Numeric> = means.iter().map(|(x, _)| x.clone()).collect();
    let b_means: Vec<Numeric> = means.iter().filter_map(|(_, y)| y.clone()).collect();

    let a_steps: Vec<Check> = a_means
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            Check::with_hint(format!("A_{} <= A_{}", k + 2, k + 1), w[1].clone(), w[0].clone(), affine)
        })
        .collect();
    let b_steps: Vec<Check> = b_means
        .windows(2)
        .enumerate()
        .map(|(k, w)| {
            Check::with_hint(format!("B_{} <= B_{}", k + 2, k + 3), w[0].clone(), w[1].clone(), affine)
        })
        .collect();
    let containment: Vec<[Check; 2]> = (2..=n_max)
        .map(|n| {
            Bracket::new(b_means[n - 2].clone(), a_means[n - 1].clone(), "B_n", "A_n")
                .containment(&oracle, affine)
        })
        .collect();

    let first_violation = a_steps
        .iter()
        .position(|c| c.status() == Status::Violated)
        .map(|k| (SequenceKind::A, k + 1))
        .into_iter()
        .chain(
            b_steps
                .iter()
                .position(|c| c.status() == Status::Violated)
                .map(|k| (SequenceKind::B, k + 2)),
        )
        .min_by_key(|(_, n)| *n);

    let final_gap_a = &a_means[n_max - 1] - &oracle;
    let final_gap_b = &oracle - &b_means[n_max - 2];
    let converged = tolerance.map(|tol| {
        [&final_gap_a, &final_gap_b]
            .iter()
            .all(|gap| gap.abs().certified_cmp(tol) != Some(std::cmp::Ordering::Greater))
    });

    let unflip = |v: Vec<Numeric>| -> Vec<Numeric> {
        if reversed {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        }
    };
    let (final_gap_a, final_gap_b) = (final_gap_a, final_gap_b);
    Ok(LimitReport {
        a_means: unflip(a_means),
        b_means: unflip(b_means),
        a_steps,
        b_steps,
        containment,
        final_gap_a,
        final_gap_b,
        converged,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{affine, exp, reciprocal, sin, square};
    use crate::partition::uniform_partition;
    use rug::Rational;

    const P: u32 = 128;

    fn q(n: i64, d: i64) -> Numeric {
        Numeric::ratio(n, d)
    }

    fn zero_one() -> (Numeric, Numeric) {
        (Numeric::zero(), Numeric::one())
    }

    /// Riemann means of t² on [0,1] summed independently with rug rationals.
    fn square_sum(n: i64, from: i64, to: i64) -> Rational {
        (from..=to).fold(Rational::new(), |acc, i| acc + Rational::from((i * i, n * n)))
    }

    #[test]
    fn sequence_values_match_direct_sums() {
        let (a, b) = zero_one();
        let f = square();
        let v = |k| sequence_value(k, &f, &a, &b, 2, P).unwrap();
        assert_eq!(v(SequenceKind::A), q(5, 12));
        assert_eq!(v(SequenceKind::B), q(1, 4));
        assert_eq!(v(SequenceKind::S), q(5, 8));
        assert_eq!(v(SequenceKind::T), q(1, 8));
        for n in 2..20i64 {
            let an = sequence_value(SequenceKind::A, &f, &a, &b, n as usize, P).unwrap();
            let oracle = square_sum(n, 0, n) / Rational::from(n + 1);
            assert_eq!(an, Numeric::from(oracle));
            assert_eq!(an, q(2 * n + 1, 6 * n));
        }
        assert!(sequence_value(SequenceKind::B, &f, &a, &b, 1, P).is_err());
    }

    #[test]
    fn two_partition_examples() {
        let x = Partition::parse("0,1").unwrap();
        let y = Partition::parse("0,1/2,1").unwrap();
        let r = two_partition_sides(&affine(), &x, &y, P).unwrap();
        assert_eq!(r.ineq2.smaller, q(1, 2));
        assert_eq!(r.ineq2.larger, q(1, 2));
        assert_eq!(r.ineq2.status(), Status::HoldsWithEquality);

        let r = two_partition_sides(&square(), &x, &y, P).unwrap();
        assert_eq!(r.ineq2.smaller, q(1, 4));
        assert_eq!(r.ineq2.larger, q(1, 2));
        assert_eq!(r.ineq2.status(), Status::HoldsStrictly);
        assert!(r.ineq2_strict_condition);
        // order one: the y-weighted form collapses to an identity
        assert_eq!(r.ineq1.status(), Status::HoldsWithEquality);
        assert!(!r.ineq1_strict_condition);

        let x = Partition::parse("0,1/2,1").unwrap();
        let y = Partition::parse("0,1/4,3/4,1").unwrap();
        let r = two_partition_sides(&square(), &x, &y, P).unwrap();
        // lhs2 = (1/2)(1/16) + (1/2)(9/16) = 5/16
        assert_eq!(r.ineq2.smaller, q(5, 16));
        // rhs2 = (1/2 - 0 + 0 - 1/4)·0 + (1 - 0 + 1/4 - 3/4)(1/4) + (1 - 1/2 + 3/4 - 1)·1 = 3/8
        assert_eq!(r.ineq2.larger, q(3, 8));
        assert_eq!(r.ineq2.status(), Status::HoldsStrictly);
        assert_eq!(r.combined.status(), Status::HoldsStrictly);
    }

    #[test]
    fn two_partition_rejects_concave_and_bad_partitions() {
        let x = Partition::parse("0,1").unwrap();
        let y = Partition::parse("0,1/2,1").unwrap();
        assert!(matches!(
            two_partition_sides(&sin(), &x, &y, P),
            Err(Error::InvalidArgument(_))
        ));
        let x = Partition::parse("0,1/2,1").unwrap();
        let y = Partition::parse("0,0.6,0.7,1").unwrap();
        assert!(matches!(
            two_partition_sides(&square(), &x, &y, P),
            Err(Error::NotInterleaved(_))
        ));
    }

    #[test]
    fn uniform_specialization_reproduces_monotonicity() {
        // On uniform grids of orders n and n+1 the x-weighted sum is B_{n+1}
        // and the margin signs match B_n <= B_{n+1} and A_{n+1} <= A_n.
        let (a, b) = zero_one();
        let f = square();
        for n in 2..12usize {
            let x = uniform_partition(&a, &b, n).unwrap();
            let y = uniform_partition(&a, &b, n + 1).unwrap();
            let r = two_partition_sides(&f, &x, &y, P).unwrap();
            let b_next = sequence_value(SequenceKind::B, &f, &a, &b, n + 1, P).unwrap();
            let b_here = sequence_value(SequenceKind::B, &f, &a, &b, n, P).unwrap();
            assert_eq!(r.ineq2.smaller, b_next);
            let diff_b = &b_next - &b_here;
            assert_eq!(r.ineq2.verdict.margin.sign(), diff_b.sign());
            let a_here = sequence_value(SequenceKind::A, &f, &a, &b, n, P).unwrap();
            let a_next = sequence_value(SequenceKind::A, &f, &a, &b, n + 1, P).unwrap();
            assert_eq!(r.ineq1.verdict.margin.sign(), (&a_here - &a_next).sign());
        }
    }

    #[test]
    fn hh_bracket_examples() {
        let (a, b) = zero_one();
        let br = hh_bracket(&square(), &a, &b, 2, 1, P).unwrap();
        assert_eq!((br.lower.clone(), br.upper.clone()), (q(1, 4), q(1, 2)));
        assert!(br.admits(&q(1, 3)));
        let br = hh_bracket(&square(), &a, &b, 3, 2, P).unwrap();
        assert_eq!((br.lower, br.upper), (q(5, 18), q(5, 12)));
        let br = hh_bracket(&affine(), &a, &b, 2, 1, P).unwrap();
        assert_eq!((br.lower, br.upper), (q(1, 2), q(1, 2)));
        assert!(hh_bracket(&square(), &a, &b, 1, 1, P).is_err());
        assert!(hh_bracket(&square(), &a, &b, 2, 0, P).is_err());
    }

    #[test]
    fn concave_bracket_swaps_sides() {
        let pi = Numeric::pi(P);
        let br = hh_bracket(&sin(), &Numeric::zero(), &pi, 3, 2, P).unwrap();
        // ∫_0^π sin = 2
        assert!(br.lower.to_f64() < 2.0 && 2.0 < br.upper.to_f64());
        assert!(br.lower_source.starts_with("endpoint"));
        let neg = hh_bracket(&sin().negated(), &Numeric::zero(), &pi, 3, 2, P).unwrap();
        assert!(neg.lower.overlaps(&-&br.upper));
        assert!(neg.upper.overlaps(&-&br.lower));
    }

    #[test]
    fn log_bracket_examples() {
        let r = log_bracket(&reciprocal(), &Numeric::one(), &Numeric::from(2), 2, 1, P).unwrap();
        assert_eq!(r.geo_bracket.lower, q(2, 3));
        assert!((r.geo_bracket.upper.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
        let target = std::f64::consts::E / 4.0;
        assert!(r.geo_bracket.lower.to_f64() < target && target < r.geo_bracket.upper.to_f64());
        assert_eq!(r.right_ratio.status(), Status::HoldsStrictly);
        assert_eq!(r.left_ratio.status(), Status::HoldsStrictly);

        let r = log_bracket(&exp(), &Numeric::zero(), &Numeric::one(), 2, 1, P).unwrap();
        let half = (0.5f64).exp();
        assert!((r.geo_bracket.lower.to_f64() - half).abs() < 1e-15);
        assert!((r.geo_bracket.upper.to_f64() - half).abs() < 1e-15);
        assert_eq!(r.left_ratio.status(), Status::HoldsWithEquality);
        assert_eq!(r.right_ratio.status(), Status::HoldsWithEquality);

        assert!(log_bracket(&square(), &Numeric::zero(), &Numeric::one(), 2, 1, P).is_err());
    }

    #[test]
    fn st_refinement_examples() {
        let (a, b) = zero_one();
        let r = st_refinement(&square(), &a, &b, 1, P).unwrap();
        assert_eq!(r.s_gap.left, q(5, 24));
        assert_eq!(r.s_gap.middle, q(3, 8));
        assert_eq!(r.s_gap.right, q(3, 8));
        assert_eq!(r.s_gap.right_check.status(), Status::HoldsWithEquality);
        assert_eq!(r.t_gap.left_check.status(), Status::HoldsWithEquality);
        assert_eq!(r.s_gap.left_check.status(), Status::HoldsStrictly);

        let r = st_refinement(&square(), &a, &b, 2, P).unwrap();
        // S_2 = 5/8, S_3 = 14/27
        assert_eq!(r.s_gap.middle, q(23, 216));
        assert_eq!(r.s_gap.left, q(7, 108));
        assert_eq!(r.s_gap.right, q(13, 108));
        for c in [&r.s_gap.left_check, &r.s_gap.right_check, &r.t_gap.left_check, &r.t_gap.right_check] {
            assert_eq!(c.status(), Status::HoldsStrictly, "{}", c.name);
        }
        assert!(r.monotone.is_none());

        let r = st_refinement(&affine(), &a, &b, 3, P).unwrap();
        for c in [&r.s_gap.left_check, &r.s_gap.right_check, &r.t_gap.left_check, &r.t_gap.right_check] {
            assert_eq!(c.status(), Status::HoldsWithEquality);
            assert_eq!(c.verdict.margin, Numeric::zero());
        }
    }

    #[test]
    fn st_refinement_concave_reverses() {
        let f = crate::function::power(Rational::from((1, 2)));
        let r = st_refinement(&f, &Numeric::zero(), &Numeric::one(), 3, P).unwrap();
        assert!(r.s_gap.reversed);
        assert_eq!(r.s_gap.left_check.status(), Status::HoldsStrictly);
        assert_eq!(r.s_gap.right_check.status(), Status::HoldsStrictly);
        assert!(r.s_gap.middle.to_f64() < r.s_gap.left.to_f64());
        let flags = r.monotone.unwrap();
        assert!(flags.iter().all(|c| c.status() == Status::HoldsStrictly));
    }

    #[test]
    fn limit_check_examples() {
        let (a, b) = zero_one();
        let r = sequence_limit_check(&square(), &a, &b, 100, &q(1, 3), None, P).unwrap();
        assert_eq!(r.final_gap_a, q(1, 600));
        assert!(r.a_steps.iter().all(|c| c.status() == Status::HoldsStrictly));
        assert!(r.first_violation.is_none());

        let r = sequence_limit_check(&affine(), &a, &b, 10, &q(1, 2), None, P).unwrap();
        assert!(r.a_means.iter().all(|v| *v == q(1, 2)));
        assert!(r.checks().all(|c| c.status() == Status::HoldsWithEquality));

        let e1 = exp().integral(&a, &b, P).unwrap().unwrap();
        let r = sequence_limit_check(&exp(), &a, &b, 200, &e1, Some(&q(1, 1000)), P).unwrap();
        assert!(r.containment.iter().flatten().all(|c| c.status() == Status::HoldsStrictly));
        assert_eq!(r.converged, Some(true));
    }

    #[test]
    fn limit_check_reports_violations() {
        // a function mislabelled as convex: -t² makes A_n increase
        let lying = FnSpec::new("lying", Convexity::Convex, |t, _| Ok(-(t * t)));
        let (a, b) = zero_one();
        let r = sequence_limit_check(&lying, &a, &b, 5, &q(-1, 3), None, P).unwrap();
        assert_eq!(r.first_violation, Some((SequenceKind::A, 1)));
    }
}
