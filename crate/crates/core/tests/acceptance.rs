//! Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

use std::io::Write;

use certbounds::convex::{self, SequenceKind};
use certbounds::function::{self, FnSpec};
use certbounds::means::{self, MeanArgs, MeanKind};
use certbounds::normed::{segment_integral_bracket, Independence, VectorPair};
use certbounds::power::{self, Family};
use certbounds::trig::{self, TrigFn};
use certbounds::{Check, Numeric, Partition, Status};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::Rational;

const P: u32 = 128;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Writes straight to the stderr handle so the line survives libtest's capture.
fn report(id: u32, title: &str, tolerance: &str, outcome: Outcome) {
    let line = match &outcome {
        Ok(detail) => format!("criterion {id:>2} PASS  {title} (tolerance: {tolerance}) {detail}\n"),
        Err(why) => format!("criterion {id:>2} FAIL  {title} (tolerance: {tolerance}) {why}\n"),
    };
    std::io::stderr().write_all(line.as_bytes()).unwrap();
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn strict(c: &Check) -> Outcome {
    ensure!(c.status() == Status::HoldsStrictly, "{}: {:?}, margin {}", c.name, c.status(), c.verdict.margin);
    Ok(String::new())
}

fn q(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    q(rng.gen_range(lo * den..=hi * den), den)
}

fn monotone_case(f: &FnSpec, a: i64, b: i64, exact: bool) -> Outcome {
    let (a, b) = (Numeric::from(a), Numeric::from(b));
    let integral = f.integral(&a, &b, P).expect("closed form").map_err(|e| e.to_string())?;
    let oracle = integral.try_div(&(&b - &a)).map_err(|e| e.to_string())?;
    let rep = convex::sequence_limit_check(f, &a, &b, 500, &oracle, None, P).map_err(|e| e.to_string())?;
    ensure!(rep.a_steps.len() == 499 && rep.b_steps.len() == 498, "unexpected step counts");
    for c in rep.a_steps.iter().chain(&rep.b_steps) {
        strict(c)?;
        if exact {
            ensure!(c.verdict.margin.is_exact(), "{}: inexact margin for {}", c.name, f.name());
        } else {
            let m = &c.verdict.margin;
            ensure!(m.to_f64() > m.radius_f64(), "{}: margin within error radius", c.name);
        }
    }
    Ok(format!("{}", f.name()))
}

#[test]
fn criterion_01_monotone_sequences() {
    let cases: Vec<(FnSpec, i64, i64, bool)> = vec![
        (function::square(), 0, 1, true),
        (function::power(Rational::from(4)), 0, 1, true),
        (function::exp(), 0, 1, false),
        (function::reciprocal(), 1, 2, false),
        (function::neg_log(), 1, 2, false),
    ];
    let outcome = cases
        .par_iter()
        .map(|(f, a, b, exact)| monotone_case(f, *a, *b, *exact))
        .collect::<Result<Vec<_>, _>>()
        .map(|names| format!("A_n decreasing, B_n increasing for n <= 500: {}", names.join(", ")));
    report(1, "monotone Riemann sequences", "exact for t^2, t^4; margin > radius otherwise", outcome);
}

/// `x` of order `n` and `y` of order `n+1` on `[0, 1]` with `x_{i-1} < y_i < x_i`.
fn interleaved_pair(rng: &mut ChaCha8Rng, n: usize) -> (Partition, Partition) {
    let mut cuts: Vec<Rational> = Vec::new();
    while cuts.len() < n - 1 {
        let c = q(rng.gen_range(1..1000), 1000);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort();
    let mut x = vec![Rational::new()];
    x.extend(cuts);
    x.push(Rational::from(1));
    let mut y = vec![Rational::new()];
    for w in x.windows(2) {
        let u = q(rng.gen_range(1..100), 100);
        y.push(Rational::from(&w[0] + Rational::from(&w[1] - &w[0]) * u));
    }
    y.push(Rational::from(1));
    let part = |v: Vec<Rational>| Partition::new(v.into_iter().map(Numeric::from).collect()).unwrap();
    (part(x), part(y))
}

fn two_partition_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (square, affine) = (function::square(), function::affine());
    for trial in 0..200 {
        let n = rng.gen_range(2..=30);
        let (x, y) = interleaved_pair(&mut rng, n);
        let rep = convex::two_partition_sides(&square, &x, &y, P).map_err(|e| e.to_string())?;
        for c in [&rep.ineq2, &rep.ineq1] {
            ensure!(c.status() == Status::HoldsStrictly && c.verdict.margin.is_exact(),
                "trial {trial} (order {n}): {} {:?}", c.name, c.status());
        }
        let flat = convex::two_partition_sides(&affine, &x, &y, P).map_err(|e| e.to_string())?;
        for c in [&flat.ineq2, &flat.ineq1] {
            ensure!(c.status() == Status::HoldsWithEquality && c.verdict.margin == Numeric::zero(),
                "trial {trial}: affine {} gave {:?}, margin {}", c.name, c.status(), c.verdict.margin);
        }
    }
    Ok("200 pairs, orders 2..=30: strict for t^2, zero margin for affine".into())
}

#[test]
fn criterion_02_two_partition_engine() {
    report(2, "two-partition inequalities", "exact arithmetic", two_partition_suite());
}

fn hh_suite() -> Outcome {
    let square = function::square();
    let (zero, one) = (Numeric::zero(), Numeric::one());
    let third = q(1, 3);
    let bad = (2..=100usize)
        .into_par_iter()
        .map(|m| -> Result<(), String> {
            for n in 1..=100usize {
                let br = convex::hh_bracket(&square, &zero, &one, m, n, P).map_err(|e| e.to_string())?;
                ensure!(br.lower == Numeric::from(q(2 * m as i64 - 1, 6 * m as i64)), "B_{m} closed form");
                ensure!(br.upper == Numeric::from(q(2 * n as i64 + 1, 6 * n as i64)), "A_{n} closed form");
                for c in br.containment(&Numeric::from(third.clone()), false) {
                    strict(&c).map_err(|e| format!("m = {m}, n = {n}: {e}"))?;
                }
            }
            Ok(())
        })
        .collect::<Result<Vec<_>, _>>();
    bad?;
    let width = convex::hh_bracket(&square, &zero, &one, 100, 100, P).unwrap().width();
    ensure!(width == Numeric::from(q(1, 300)), "width at (100, 100) is {width}");
    Ok("9900 brackets contain 1/3; width(100, 100) = 1/300".into())
}

#[test]
fn criterion_03_hh_refinement() {
    report(3, "midpoint/trapezoid refinement", "exact", hh_suite());
}

fn st_suite() -> Outcome {
    let square = function::square();
    let (zero, one) = (Numeric::zero(), Numeric::one());
    let first = convex::st_refinement(&square, &zero, &one, 1, P).map_err(|e| e.to_string())?;
    ensure!(first.s_gap.right_check.status() == Status::HoldsWithEquality, "S right side at n = 1");
    ensure!(first.t_gap.left_check.status() == Status::HoldsWithEquality, "T left side at n = 1");
    strict(&first.s_gap.left_check)?;
    strict(&first.t_gap.right_check)?;
    for n in 2..=100 {
        let rep = convex::st_refinement(&square, &zero, &one, n, P).map_err(|e| e.to_string())?;
        for c in [&rep.s_gap.left_check, &rep.s_gap.right_check, &rep.t_gap.left_check, &rep.t_gap.right_check] {
            strict(c).map_err(|e| format!("n = {n}: {e}"))?;
        }
    }
    Ok("equality at n = 1 on the identity sides; strict for n = 2..=100".into())
}

#[test]
fn criterion_04_equality_clause() {
    report(4, "S/T refinement equality clause", "exact", st_suite());
}

fn sweep_grid() -> Vec<(Family, Rational)> {
    let mut grid = Vec::new();
    for r in [q(2, 1), q(3, 1), q(7, 1), q(1, 2)] {
        for f in [Family::Alzer, Family::Bennett, Family::RefinedAlzer] {
            grid.push((f, r.clone()));
        }
    }
    for r in [q(-1, 1), q(-2, 1)] {
        grid.push((Family::Bennett, r));
    }
    grid
}

fn family_suite() -> Outcome {
    let grid = sweep_grid();
    let jobs: Vec<(Family, Rational, u64)> = grid
        .iter()
        .flat_map(|(f, r)| (1..=200).map(move |n| (*f, r.clone(), n)))
        .collect();
    let count = jobs.len();
    jobs.par_iter()
        .map(|(f, r, n)| -> Result<(), String> {
            let rep = power::verify_family(*f, *n, Some(r), P).map_err(|e| e.to_string())?;
            for c in &rep.checks {
                strict(c).map_err(|e| format!("{f} n = {n} r = {r}: {e}"))?;
            }
            if *r.denom() == 1 {
                let radicand = power::power_sum(*n, r, P).map_err(|e| e.to_string())?;
                ensure!(radicand.is_exact(), "power sum at n = {n}, r = {r} is not exact");
            }
            Ok(())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{count} (family, n, r) cases, zero Violated, zero Inconclusive"))
}

#[test]
fn criterion_05_power_sum_families() {
    report(5, "Alzer / Bennett / refined chain sweep", "exact radicands", family_suite());
}

fn cross_suite() -> Outcome {
    let jobs: Vec<(Family, Rational, u64)> = sweep_grid()
        .into_iter()
        .flat_map(|(f, r)| (1..=200).map(move |n| (f, r.clone(), n)))
        .collect();
    let count = jobs.len();
    jobs.par_iter()
        .map(|(f, r, n)| -> Result<(), String> {
            let direct: Vec<Status> = power::verify_family(*f, *n, Some(r), P)
                .map_err(|e| e.to_string())?
                .checks
                .iter()
                .map(Check::status)
                .collect();
            let via = power::statuses_via_means(*f, *n, r, P).map_err(|e| e.to_string())?;
            ensure!(direct == via, "{f} n = {n} r = {r}: {direct:?} vs {via:?}");
            Ok(())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{count}/{count} statuses agree"))
}

#[test]
fn criterion_06_cross_derivation() {
    report(6, "power sums re-derived from mean chains on [0, 1]", "100% agreement", cross_suite());
}

fn binomial_suite() -> Outcome {
    for m in 2..=200 {
        let s = means::central_binomial_step(m, P).map_err(|e| e.to_string())?;
        strict(&s.increase).map_err(|e| format!("m = {m}: {e}"))?;
        strict(&s.below_four).map_err(|e| format!("m = {m}: {e}"))?;
    }
    let last = means::central_binomial_seq(200, P).map_err(|e| e.to_string())?;
    ensure!(
        last.certified_cmp(&Numeric::ratio(393, 100)) == Some(std::cmp::Ordering::Greater),
        "value at m = 200 is {last}"
    );
    Ok(format!("strictly increasing, all below 4, m = 200 value {}", last.to_decimal(8)))
}

#[test]
fn criterion_07_binomial_limit() {
    report(7, "central binomial root sequence", "certified", binomial_suite());
}

fn identric_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..20 {
        let den = rng.gen_range(4..=1000);
        let hi = den / 2;
        let i = rng.gen_range(1..hi);
        let j = rng.gen_range(i + 1..=hi);
        let (a, b) = (q(i, den), q(j, den));
        let args = MeanArgs::new(Numeric::from(a.clone()), Numeric::from(b.clone())).unwrap();
        let rep = means::identric_ratio_bounds(&args, 2, 1, P).map_err(|e| e.to_string())?;
        let expected_low = (Rational::from(2) - &a - &b) / Rational::from(&a + &b);
        ensure!(rep.special[0].smaller == Numeric::from(expected_low), "trial {trial}: lower side");
        let upper = ((1.0 - a.to_f64()) * (1.0 - b.to_f64()) / (a.to_f64() * b.to_f64())).sqrt();
        ensure!((rep.special[1].larger.to_f64() - upper).abs() < 1e-12 * upper, "trial {trial}: upper side");
        for c in &rep.special {
            strict(c).map_err(|e| format!("trial {trial} (a = {a}, b = {b}): {e}"))?;
            let m = &c.verdict.margin;
            ensure!(m.to_f64() > m.radius_f64(), "trial {trial}: margin within radius");
        }
    }
    Ok("20 random pairs in (0, 1/2]".into())
}

#[test]
fn criterion_08_identric_special_case() {
    report(8, "identric ratio bounds", "margin > error radius", identric_suite());
}

fn trig_suite() -> Outcome {
    for f in TrigFn::ALL {
        (3..=10_000u64)
            .into_par_iter()
            .map(|n| -> Result<(), String> {
                let rep = trig::rational_trig_bounds(f, &Numeric::from(n), P).map_err(|e| e.to_string())?;
                ensure!(rep.gap_matches == Some(true), "{f} n = {n}: gap identity");
                ensure!(!rep.conjectural, "{f} n = {n} labelled conjectural");
                for c in &rep.bounds.checks {
                    strict(c).map_err(|e| format!("{f} n = {n}: {e}"))?;
                }
                Ok(())
            })
            .collect::<Result<Vec<_>, _>>()?;
    }
    let scaled = |f: TrigFn| -> f64 {
        let g = trig::gap_asymptotics(f, 10_000).unwrap();
        g.rows.last().unwrap().scaled_gap.to_f64()
    };
    let (tan, cos) = (scaled(TrigFn::Tan), scaled(TrigFn::Cos));
    ensure!((tan - 4.0).abs() < 4e-3, "n·gap_tan = {tan}");
    ensure!((cos - 16.0).abs() < 16e-3, "n²·gap_cos = {cos}");
    Ok(format!("n = 3..=10000 for tan, cos, sin; n·gap_tan = {tan:.6}, n²·gap_cos = {cos:.6}"))
}

#[test]
fn criterion_09_trig_identities() {
    report(9, "rational trig bounds and exact gaps", "exact gaps; 0.1% for the scaled limits", trig_suite());
}

fn conjecture_suite() -> Outcome {
    let (lo, hi, step) = (q(2001, 1000), q(100, 1), q(1, 1000));
    let mut detail = Vec::new();
    for f in TrigFn::ALL {
        let rep = trig::conjecture_sweep(f, &lo, &hi, &step, P).map_err(|e| e.to_string())?;
        ensure!(rep.violations.is_empty(), "{f}: {} violations", rep.violations.len());
        ensure!(rep.undecided.is_empty(), "{f}: {} undecided points", rep.undecided.len());
        ensure!(rep.min_margin.sign() == Some(std::cmp::Ordering::Greater), "{f}: min margin {}", rep.min_margin);
        ensure!(rep.refined_points > 0, "{f}: no refinement performed");
        detail.push(format!("{f} min {} at {}", rep.min_margin.to_decimal(6), rep.argmin));
    }
    Ok(format!("{}; {}", detail.join(", "), trig::SweepReport::EVIDENCE))
}

#[test]
fn criterion_10_conjecture_sweep() {
    report(10, "real-argument sweep", "zero violations, positive minimum margin", conjecture_suite());
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Numeric> {
    loop {
        let v: Vec<Rational> = (0..dim).map(|_| random_rational(rng, -3, 3, 5)).collect();
        if v.iter().any(|c| *c != 0) {
            return v.into_iter().map(Numeric::from).collect();
        }
    }
}

fn normed_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = Vec::new();
    for k in 0..50 {
        let dim = rng.gen_range(2..=5);
        let norm_p = Rational::from([1, 2, 3][k % 3]);
        let power_q = Rational::from([1, 2][(k / 3) % 2]);
        let (x, y) = (random_vector(&mut rng, dim), random_vector(&mut rng, dim));
        pairs.push(VectorPair::new(x, y, norm_p, power_q).map_err(|e| e.to_string())?);
    }
    let closed = pairs
        .par_iter()
        .enumerate()
        .map(|(k, vp)| -> Result<usize, String> {
            let l2 = *vp.norm_p() == 2;
            let strict_pair = l2 && vp.independence() == Independence::Independent;
            let mut closed = 0;
            for n in 2..=50 {
                let rep = segment_integral_bracket(vp, n, P).map_err(|e| e.to_string())?;
                for c in rep.ratios.iter().chain(&rep.classical).chain(&rep.containment) {
                    ensure!(c.holds(), "pair {k}, n = {n}: {} {:?}", c.name, c.status());
                }
                if strict_pair {
                    ensure!(rep.strict_expected == Some(true), "pair {k}: strictness not expected");
                    for c in rep.ratios.iter().chain(&rep.classical) {
                        strict(c).map_err(|e| format!("pair {k}, n = {n}: {e}"))?;
                    }
                }
                if l2 && *vp.power_q() == 2 {
                    ensure!(rep.integral_is_closed_form, "pair {k}: no closed form");
                    for c in &rep.containment {
                        ensure!(c.holds(), "pair {k}, n = {n}: containment");
                    }
                    closed += 1;
                }
            }
            Ok(closed)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum::<usize>();

    let face = VectorPair::parse("1,0", "0,1", Rational::from(1), Rational::from(1)).unwrap();
    let rep = segment_integral_bracket(&face, 5, P).map_err(|e| e.to_string())?;
    for c in rep.ratios.iter().chain(&rep.classical) {
        ensure!(c.status() == Status::HoldsWithEquality, "l1 face: {} {:?}", c.name, c.status());
    }
    Ok(format!("50 pairs x n = 2..=50, {closed} closed-form containments; l1 face pair gives equality"))
}

#[test]
fn criterion_11_normed_segments() {
    report(11, "p-norm segment integrals", "certified", normed_suite());
}

fn limit_suite() -> Outcome {
    let tiny = q(1, 1_000_000);
    let args = MeanArgs::new(Numeric::one(), Numeric::from(2)).unwrap();
    let lp = means::mean_value(&MeanKind::lp(tiny.clone()).unwrap(), &args, P).map_err(|e| e.to_string())?;
    let id = means::mean_value(&MeanKind::Identric, &args, P).map_err(|e| e.to_string())?;
    let diff = (&lp - &id).abs();
    ensure!(diff.to_f64() + diff.radius_f64() < 1e-5, "|L_p - I| = {diff}");
    let mut worst: f64 = 0.0;
    for n in 1..=20 {
        let a = power::alzer_ratio(n, &tiny, P).map_err(|e| e.to_string())?;
        let f = power::factorial_ratio(n, P).map_err(|e| e.to_string())?;
        let d = (&a - &f).abs();
        let bound = d.to_f64() + d.radius_f64();
        ensure!(bound < 1e-5, "n = {n}: |alzer - factorial| = {d}");
        worst = worst.max(bound);
    }
    Ok(format!("|L_p(1,2) - I(1,2)| = {:.3e}; worst ratio gap {worst:.3e}", diff.to_f64()))
}

#[test]
fn criterion_12_limit_checks() {
    report(12, "p -> 0 limits", "1e-5", limit_suite());
}

#[test]
fn sequence_kinds_agree_with_brackets() {
    let f = function::square();
    let (a, b) = (Numeric::zero(), Numeric::one());
    let br = convex::hh_bracket(&f, &a, &b, 7, 5, P).unwrap();
    assert_eq!(br.lower, convex::sequence_value(SequenceKind::B, &f, &a, &b, 7, P).unwrap());
    assert_eq!(br.upper, convex::sequence_value(SequenceKind::A, &f, &a, &b, 5, P).unwrap());
}
