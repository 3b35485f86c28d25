//! Cotangent, sinc and rational bounds for trigonometric values.

use certbounds::trig::{self, Angle, TrigFn};
use certbounds::Numeric;

fn main() -> certbounds::Result<()> {
    let x = Angle::parse("pi/2")?;
    for n in [2, 3, 10] {
        let cot = trig::cot_bounds(&x, n, 128)?;
        let sinc = trig::sinc_bounds(&x, n, 128)?;
        println!(
            "n = {n:>2}: cot(x/n) {} < {} < {}   sin(x)/x {} < {} < {}",
            cot.lower.as_ref().map(|v| v.to_decimal(8)).unwrap_or("-".into()),
            cot.value.to_decimal(8),
            cot.upper.as_ref().map(|v| v.to_decimal(8)).unwrap_or("-".into()),
            sinc.lower.as_ref().map(|v| v.to_decimal(8)).unwrap_or("-".into()),
            sinc.value.to_decimal(8),
            sinc.upper.as_ref().map(|v| v.to_decimal(8)).unwrap_or("-".into()),
        );
    }

    for f in TrigFn::ALL {
        for n in [3, 6, 100] {
            let rep = trig::rational_trig_bounds(f, &Numeric::from(n), 128)?;
            println!(
                "{f}(pi/{n}): {} < {} < {}   gap {} (identity holds: {:?})",
                rep.bounds.lower.as_ref().unwrap(),
                rep.bounds.value.to_decimal(10),
                rep.bounds.upper.as_ref().unwrap(),
                rep.gap,
                rep.gap_matches,
            );
        }
        let g = trig::gap_asymptotics(f, 1000)?;
        let last = g.rows.last().unwrap();
        println!("  scaled gap at n = 1000: {:.6} (limit {})", last.scaled_gap.to_f64(), g.limit);
    }

    for n in [3, 10, 100] {
        let (lo, hi) = trig::telescoped_tan_bounds(n)?;
        let direct = trig::tan_half_bounds(n, 128)?;
        println!("tan(pi/{}) = {} in ({lo}, {hi})", 2 * n, direct.value.to_decimal(10));
    }
    Ok(())
}
