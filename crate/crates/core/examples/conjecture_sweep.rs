//! Sweeps the rational trig bounds over real arguments and writes plot rows.
//!
//! Usage: `conjecture_sweep [tan|cos|sin] [output.csv]`

use std::io::Write;

use certbounds::trig::{conjecture_sweep, SweepReport, TrigFn};
use rug::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let f: TrigFn = args.next().as_deref().unwrap_or("sin").parse()?;
    let out = args.next();

    let (lo, hi, step) = (Rational::from((2001, 1000)), Rational::from(100), Rational::from((1, 100)));
    let rep = conjecture_sweep(f, &lo, &hi, &step, 128)?;
    println!(
        "{f}: {} grid points, {} refined, min margin {} at x = {}, violations {}",
        rep.rows.len(),
        rep.refined_points,
        rep.min_margin.to_decimal(8),
        rep.argmin,
        rep.violations.len()
    );
    println!("{}", SweepReport::EVIDENCE);

    if let Some(path) = out {
        let mut w = std::io::BufWriter::new(std::fs::File::create(&path)?);
        writeln!(w, "x,lower,value,upper,margin")?;
        for r in &rep.rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.x.to_f64(),
                r.lower.to_f64(),
                r.value.to_f64(),
                r.upper.to_f64(),
                r.margin.to_f64()
            )?;
        }
        println!("wrote {path}");
    }
    Ok(())
}
