use std::cmp::Ordering;

use certbounds::convex::{self, SequenceKind};
use certbounds::function::{self, FnSpec};
use certbounds::means::{self, MeanArgs, MeanKind};
use certbounds::normed::{segment_integral_bracket, segment_integral_exact, Independence, VectorPair};
use certbounds::power::{self, Family};
use certbounds::trig::{self, Angle, TrigFn};
use certbounds::{uniform_partition, Numeric, Partition, Status};
use proptest::prelude::*;
use rug::Rational;

const P: u32 = 128;

fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

fn num(num: i64, den: i64) -> Numeric {
    Numeric::from(rat(num, den))
}

/// `(a, b)` with `lo <= a < b <= hi`, on a grid of step `1/den`.
fn interval(lo: i64, hi: i64) -> impl Strategy<Value = (Numeric, Numeric)> {
    (1i64..12).prop_flat_map(move |den| {
        (lo * den..hi * den, 1i64..=(hi - lo) * den).prop_map(move |(i, w)| {
            let j = (i + w).min(hi * den);
            let i = i.min(j - 1);
            (num(i, den), num(j, den))
        })
    })
}

fn convex_fn() -> impl Strategy<Value = (FnSpec, bool)> {
    prop_oneof![
        Just((function::square(), true)),
        Just((function::power(Rational::from(3)), true)),
        Just((function::exp(), false)),
    ]
}

fn less(smaller: &Numeric, larger: &Numeric) -> bool {
    smaller.certified_cmp(larger) == Some(Ordering::Less)
}

fn not_greater(smaller: &Numeric, larger: &Numeric) -> bool {
    smaller.certified_cmp(larger) != Some(Ordering::Greater)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn riemann_sequences_are_strictly_monotone((f, exact) in convex_fn(), (a, b) in interval(0, 3), n in 2usize..30) {
        let seq = |k, n| convex::sequence_value(k, &f, &a, &b, n, P).unwrap();
        let (a_n, a_next) = (seq(SequenceKind::A, n), seq(SequenceKind::A, n + 1));
        let (b_n, b_next) = (seq(SequenceKind::B, n), seq(SequenceKind::B, n + 1));
        prop_assert!(less(&a_next, &a_n));
        prop_assert!(less(&b_n, &b_next));
        if exact {
            prop_assert!(a_n.is_exact() && b_next.is_exact());
        }
    }

    #[test]
    fn brackets_contain_the_integral((f, _) in convex_fn(), (a, b) in interval(0, 2), m in 2usize..40, n in 1usize..40) {
        let br = convex::hh_bracket(&f, &a, &b, m, n, P).unwrap();
        let integral = f.integral(&a, &b, P).unwrap().unwrap();
        prop_assert!(less(&br.lower, &br.upper));
        for c in br.containment(&integral, false) {
            prop_assert_eq!(c.status(), Status::HoldsStrictly);
        }
    }

    #[test]
    fn affine_inputs_collapse_to_equality((a, b) in interval(-3, 3), n in 1usize..12, m in 2usize..12) {
        let f = function::affine();
        let br = convex::hh_bracket(&f, &a, &b, m, n, P).unwrap();
        let c = br.ordering_check(true);
        prop_assert_eq!(c.status(), Status::HoldsWithEquality);
        prop_assert_eq!(c.verdict.margin, Numeric::zero());
        let st = convex::st_refinement(&f, &a, &b, n, P).unwrap();
        for c in [st.s_gap.left_check, st.s_gap.right_check, st.t_gap.left_check, st.t_gap.right_check] {
            prop_assert_eq!(c.status(), Status::HoldsWithEquality);
            prop_assert_eq!(c.verdict.margin, Numeric::zero());
        }
        let x = uniform_partition(&a, &b, n).unwrap();
        let y = uniform_partition(&a, &b, n + 1).unwrap();
        let tp = convex::two_partition_sides(&f, &x, &y, P).unwrap();
        for c in [tp.ineq2, tp.ineq1, tp.combined] {
            prop_assert_eq!(c.status(), Status::HoldsWithEquality);
            prop_assert_eq!(c.verdict.margin, Numeric::zero());
        }
    }

    #[test]
    fn negation_swaps_bracket_sides((a, b) in interval(-2, 2), m in 2usize..20, n in 1usize..20) {
        let f = function::square();
        let g = f.negated();
        let br = convex::hh_bracket(&f, &a, &b, m, n, P).unwrap();
        let neg = convex::hh_bracket(&g, &a, &b, m, n, P).unwrap();
        prop_assert_eq!(&neg.lower, &-&br.upper);
        prop_assert_eq!(&neg.upper, &-&br.lower);
        let st = convex::st_refinement(&f, &a, &b, n, P).unwrap();
        let st_neg = convex::st_refinement(&g, &a, &b, n, P).unwrap();
        prop_assert!(st_neg.s_gap.reversed && !st.s_gap.reversed);
        prop_assert_eq!(st_neg.s_gap.middle, -&st.s_gap.middle);
        prop_assert_eq!(st_neg.s_gap.left_check.status(), st.s_gap.left_check.status());
    }

    #[test]
    fn uniform_grids_reproduce_sequence_monotonicity((a, b) in interval(0, 2), n in 2usize..16) {
        let f = function::power(Rational::from(4));
        let x = uniform_partition(&a, &b, n).unwrap();
        let y = uniform_partition(&a, &b, n + 1).unwrap();
        let r = convex::two_partition_sides(&f, &x, &y, P).unwrap();
        let seq = |k, n| convex::sequence_value(k, &f, &a, &b, n, P).unwrap();
        prop_assert_eq!(&r.ineq2.smaller, &seq(SequenceKind::B, n + 1));
        prop_assert_eq!(r.ineq2.verdict.margin.sign(), (seq(SequenceKind::B, n + 1) - seq(SequenceKind::B, n)).sign());
        prop_assert_eq!(r.ineq1.verdict.margin.sign(), (seq(SequenceKind::A, n) - seq(SequenceKind::A, n + 1)).sign());
    }

    #[test]
    fn polynomial_outputs_are_exact_and_order_free(points in prop::collection::btree_set(1i64..200, 3..12)) {
        let pts: Vec<Numeric> = std::iter::once(0).chain(points).chain(std::iter::once(200)).map(|k| num(k, 200)).collect();
        let x = Partition::new(pts.clone()).unwrap();
        let mut y_pts = vec![pts[0].clone()];
        for w in pts.windows(2) {
            y_pts.push(&(&w[0] + &w[1]) / &Numeric::from(2));
        }
        y_pts.push(pts[pts.len() - 1].clone());
        let y = Partition::new(y_pts).unwrap();
        let f = function::square();
        let first = convex::two_partition_sides(&f, &x, &y, P).unwrap();
        let again = convex::two_partition_sides(&f, &x, &y, 4 * P).unwrap();
        prop_assert!(first.ineq1.verdict.margin.is_exact() && first.ineq2.verdict.margin.is_exact());
        prop_assert_eq!(first, again);
    }

    #[test]
    fn means_are_internal_and_symmetric(i in 1i64..50, j in 1i64..50, den in 1i64..9, kind in 0usize..4) {
        prop_assume!(i != j);
        let kind = [MeanKind::Identric, MeanKind::Logarithmic, MeanKind::lp(rat(3, 2)).unwrap(), MeanKind::lp(rat(-5, 2)).unwrap()][kind].clone();
        let (x, y) = (num(i, den), num(j, den));
        let m = means::mean_value(&kind, &MeanArgs::new(x.clone(), y.clone()).unwrap(), P).unwrap();
        let swapped = means::mean_value(&kind, &MeanArgs::new(y.clone(), x.clone()).unwrap(), P).unwrap();
        prop_assert_eq!(&m, &swapped);
        let (lo, hi) = if i < j { (x, y) } else { (y, x) };
        prop_assert!(less(&lo, &m) && less(&m, &hi));
    }

    #[test]
    fn mean_brackets_tighten_with_order(i in 1i64..20, w in 1i64..20, n in 2usize..20, r in prop_oneof![Just(rat(2, 1)), Just(rat(1, 2)), Just(rat(-2, 1)), Just(rat(7, 3))]) {
        let args = MeanArgs::new(num(i, 4), num(i + w, 4)).unwrap();
        let here = means::lp_bracket(&args, &r, n, P).unwrap();
        let next = means::lp_bracket(&args, &r, n + 1, P).unwrap();
        prop_assert!(not_greater(&here.bracket.lower, &next.bracket.lower));
        prop_assert!(not_greater(&next.bracket.upper, &here.bracket.upper));
        let swapped = means::lp_bracket(&MeanArgs::new(num(i + w, 4), num(i, 4)).unwrap(), &r, n, P).unwrap();
        prop_assert_eq!(&swapped.bracket, &here.bracket);
        let id = means::identric_bracket(&args, n, P).unwrap();
        let id_next = means::identric_bracket(&args, n + 1, P).unwrap();
        prop_assert!(not_greater(&id.bracket.lower, &id_next.bracket.lower));
        prop_assert!(not_greater(&id_next.bracket.upper, &id.bracket.upper));
    }

    #[test]
    fn integer_exponents_are_exact(n in 1u64..80, r in 2i64..9) {
        let r = Rational::from(r);
        prop_assert!(power::power_sum(n, &r, P).unwrap().is_exact());
        for family in [Family::Alzer, Family::Bennett, Family::RefinedAlzer] {
            let rep = power::verify_family(family, n, Some(&r), P).unwrap();
            prop_assert_eq!(rep.status(), Status::HoldsStrictly);
        }
    }

    #[test]
    fn bennett_direction_flips_at_one(n in 1u64..60, k in 2i64..50) {
        let above = power::verify_family(Family::Bennett, n, Some(&rat(k + 1, k)), P).unwrap();
        let below = power::verify_family(Family::Bennett, n, Some(&rat(k - 1, k)), P).unwrap();
        let bound = num(n as i64 + 1, n as i64 + 2);
        prop_assert_eq!(&above.checks[0].larger, &bound);
        prop_assert_eq!(&below.checks[0].smaller, &bound);
        prop_assert_eq!(above.status(), Status::HoldsStrictly);
        prop_assert_eq!(below.status(), Status::HoldsStrictly);
        prop_assert_eq!(power::alzer_ratio(n, &Rational::from(1), P).unwrap(), bound);
    }

    #[test]
    fn refined_lower_bound_exceeds_classical(n in 1u64..200, r in prop_oneof![Just(rat(2, 1)), Just(rat(3, 1)), Just(rat(7, 1)), Just(rat(5, 2))]) {
        let rep = power::verify_family(Family::RefinedAlzer, n, Some(&r), P).unwrap();
        prop_assert!(less(&num(n as i64, n as i64 + 1), &rep.checks[0].smaller));
    }

    #[test]
    fn l2_brackets_contain_closed_form(x in prop::collection::vec(-6i64..6, 2..5), y in prop::collection::vec(-6i64..6, 2..5), n in 2usize..30) {
        let d = x.len().min(y.len());
        prop_assume!(x[..d].iter().any(|&c| c != 0) && y[..d].iter().any(|&c| c != 0));
        let v = |s: &[i64]| s[..d].iter().map(|&c| num(c, 3)).collect::<Vec<_>>();
        let vp = VectorPair::new(v(&x), v(&y), Rational::from(2), Rational::from(2)).unwrap();
        let exact = segment_integral_exact(&vp, P).unwrap().unwrap();
        let dot: i64 = x[..d].iter().zip(&y[..d]).map(|(a, b)| a * b).sum();
        let nx: i64 = x[..d].iter().map(|a| a * a).sum();
        let ny: i64 = y[..d].iter().map(|a| a * a).sum();
        prop_assert_eq!(&exact, &num(nx + dot + ny, 27));
        let rep = segment_integral_bracket(&vp, n, P).unwrap();
        prop_assert!(rep.containment.iter().all(|c| c.holds()));
        let next = segment_integral_bracket(&vp, n + 1, P).unwrap();
        prop_assert!(not_greater(&rep.bracket.lower, &next.bracket.lower));
        prop_assert!(not_greater(&next.bracket.upper, &rep.bracket.upper));
        if vp.independence() == Independence::Independent {
            prop_assert!(rep.ratios.iter().chain(&rep.classical).all(|c| c.status() == Status::HoldsStrictly));
        }
    }

    #[test]
    fn normed_brackets_scale_covariantly(x in prop::collection::vec(1i64..6, 3), y in prop::collection::vec(-5i64..6, 3), p in 1i64..3, q in 1i64..3, s in 1i64..7, n in 2usize..12) {
        prop_assume!(y.iter().any(|&c| c != 0));
        let v = |s: &[i64]| s.iter().map(|&c| Numeric::from(c)).collect::<Vec<_>>();
        let vp = VectorPair::new(v(&x), v(&y), Rational::from(p), Rational::from(q)).unwrap();
        let scale = num(s, 2);
        let factor = scale.powi(q, P).unwrap();
        let base = segment_integral_bracket(&vp, n, P).unwrap();
        let scaled = segment_integral_bracket(&vp.scaled(&scale), n, P).unwrap();
        for (lhs, rhs) in [(&scaled.bracket.lower, &base.bracket.lower), (&scaled.bracket.upper, &base.bracket.upper)] {
            let expected = rhs * &factor;
            if lhs.is_exact() && expected.is_exact() {
                prop_assert_eq!(lhs, &expected);
            } else {
                prop_assert!(lhs.overlaps(&expected));
            }
        }
    }

    #[test]
    fn dependent_affine_pairs_give_equality(x in prop::collection::vec(0i64..6, 2..5), c in 2i64..9, n in 2usize..20) {
        prop_assume!(x.iter().any(|&v| v != 0));
        let xs: Vec<Numeric> = x.iter().map(|&v| Numeric::from(v)).collect();
        let ys: Vec<Numeric> = x.iter().map(|&v| num(v * c, 3)).collect();
        let vp = VectorPair::new(xs, ys, Rational::from(2), Rational::from(1)).unwrap();
        prop_assert!(vp.phi_is_affine());
        let rep = segment_integral_bracket(&vp, n, P).unwrap();
        prop_assert!(rep.classical.iter().chain(&rep.ratios).all(|c| c.status() == Status::HoldsWithEquality));
    }

    #[test]
    fn independent_pairs_are_strict(x in prop::collection::vec(-5i64..6, 3), y in prop::collection::vec(-5i64..6, 3), p in 2i64..4, n in 2usize..15) {
        let v = |s: &[i64]| s.iter().map(|&c| Numeric::from(c)).collect::<Vec<_>>();
        prop_assume!(x.iter().any(|&c| c != 0) && y.iter().any(|&c| c != 0));
        let vp = VectorPair::new(v(&x), v(&y), Rational::from(p), Rational::from(1)).unwrap();
        prop_assume!(vp.independence() == Independence::Independent);
        let rep = segment_integral_bracket(&vp, n, P).unwrap();
        prop_assert!(rep.ratios.iter().chain(&rep.classical).all(|c| c.status() == Status::HoldsStrictly));
    }

    #[test]
    fn cot_and_sinc_bounds_hold_on_a_dense_grid(k in 1i64..=1000, n in 1usize..=1000) {
        let x = Angle::PiMultiple(rat(k, 2000));
        let cot = trig::cot_bounds(&x, n, P).unwrap();
        let sinc = trig::sinc_bounds(&x, n, P).unwrap();
        for c in cot.checks.iter().chain(&sinc.checks) {
            prop_assert_eq!(c.status(), Status::HoldsStrictly, "{} at k = {}, n = {}", c.name, k, n);
        }
    }

    #[test]
    fn telescoped_bounds_enclose_direct_values(n in 3usize..400) {
        let direct = trig::tan_half_bounds(n, P).unwrap();
        let (lo, hi) = trig::telescoped_tan_bounds(n).unwrap();
        prop_assert!(less(&Numeric::from(lo), &direct.value));
        prop_assert!(less(&direct.value, &Numeric::from(hi)));
        if n >= 3 {
            let step = trig::tan_half_ratio(n - 1, P).unwrap();
            prop_assert!(step.checks.iter().all(|c| c.status() == Status::HoldsStrictly));
        }
    }
}

#[test]
fn limit_means_are_approached_monotonically() {
    let args = MeanArgs::new(Numeric::one(), Numeric::from(2)).unwrap();
    let identric = means::mean_value(&MeanKind::Identric, &args, P).unwrap();
    let log = means::mean_value(&MeanKind::Logarithmic, &args, P).unwrap();
    for sign in [1i64, -1] {
        let mut last = f64::INFINITY;
        for k in 2..=6u32 {
            let p = Rational::from((sign, 10i64.pow(k)));
            let d = (means::mean_value(&MeanKind::lp(p).unwrap(), &args, P).unwrap() - &identric).abs().to_f64();
            assert!(d < last, "p = {sign}e-{k}");
            last = d;
        }
        let mut last = f64::INFINITY;
        for k in 2..=6u32 {
            let p = Rational::from(-1) + Rational::from((sign, 10i64.pow(k)));
            let d = (means::mean_value(&MeanKind::lp(p).unwrap(), &args, P).unwrap() - &log).abs().to_f64();
            assert!(d < last, "p = -1 + {sign}e-{k}");
            last = d;
        }
    }
}

#[test]
fn alzer_ratio_approaches_factorial_ratio() {
    for n in [1u64, 5, 20] {
        let target = power::factorial_ratio(n, P).unwrap();
        let mut last = f64::INFINITY;
        for k in 1..=6u32 {
            let r = Rational::from((1, 10i64.pow(k)));
            let d = (power::alzer_ratio(n, &r, P).unwrap() - &target).abs().to_f64();
            assert!(d < last, "n = {n}, r = 1e-{k}");
            last = d;
        }
    }
}

#[test]
fn scaled_gaps_converge_at_the_stated_rates() {
    for f in [TrigFn::Tan, TrigFn::Cos] {
        let bound = if f == TrigFn::Tan { 10 } else { 300 };
        let g = trig::gap_asymptotics(f, 3000).unwrap();
        for row in g.rows.iter().filter(|r| r.n >= 10) {
            assert!(row.deviation.clone().abs() < Rational::from((bound, row.n)), "{f} n = {}", row.n);
        }
    }
    let sin = trig::gap_asymptotics(TrigFn::Sin, 3000).unwrap();
    let last = sin.rows.last().unwrap().scaled_gap.to_f64();
    assert!((last - 4.0).abs() < 1e-2);
}

#[test]
fn trig_bounds_hold_for_every_integer_up_to_ten_thousand_in_steps() {
    for n in (3..=10_000u64).step_by(997) {
        for f in TrigFn::ALL {
            let rep = trig::rational_trig_bounds(f, &Numeric::from(n), P).unwrap();
            assert_eq!(rep.gap_matches, Some(true));
            assert!(rep.bounds.checks.iter().all(|c| c.status() == Status::HoldsStrictly));
        }
    }
}
