//! Stolarsky, identric and logarithmic means with their Riemann-sum brackets.

use certbounds::means::{self, MeanArgs, MeanKind};
use certbounds::Numeric;
use rug::Rational;

fn main() -> certbounds::Result<()> {
    let args = MeanArgs::new(Numeric::one(), Numeric::from(2))?;
    for kind in [
        MeanKind::lp(Rational::from(2))?,
        MeanKind::lp(Rational::from((1, 2)))?,
        MeanKind::Identric,
        MeanKind::Logarithmic,
    ] {
        println!("{kind}(1, 2) = {}", means::mean_value(&kind, &args, 128)?.to_decimal(16));
    }

    for n in [2, 8, 32] {
        let rep = means::lp_bracket(&args, &Rational::from(3), n, 128)?;
        let id = means::identric_bracket(&args, n, 128)?;
        println!(
            "n = {n:>2}: L_3 in [{}, {}], I in [{}, {}]",
            rep.bracket.lower.to_decimal(10),
            rep.bracket.upper.to_decimal(10),
            id.bracket.lower.to_decimal(10),
            id.bracket.upper.to_decimal(10),
        );
    }

    let small = MeanArgs::new(Numeric::ratio(1, 10), Numeric::ratio(1, 3))?;
    let rep = means::identric_ratio_bounds(&small, 2, 1, 128)?;
    for c in &rep.special {
        println!("{}: {} <= {} [{}]", c.name, c.smaller.to_decimal(10), c.larger.to_decimal(10), c.status());
    }

    for m in [2, 10, 100, 400] {
        let step = means::central_binomial_step(m, 128)?;
        println!("C(2m, m)^(1/m) at m = {m}: {}", step.value.to_decimal(12));
    }
    Ok(())
}
