//! Power-sum ratio inequalities, decided exactly for integer exponents.

use certbounds::power::{self, Family};
use rug::Rational;

fn main() -> certbounds::Result<()> {
    let exponents = [Rational::from(2), Rational::from(7), Rational::from((1, 2)), Rational::from(-2)];
    for family in [Family::Alzer, Family::Bennett, Family::RefinedAlzer, Family::Martins] {
        for r in &exponents {
            let mut counts = [0usize; 4];
            let mut skipped = false;
            for n in 1..=100 {
                match power::verify_family(family, n, Some(r), 128) {
                    Ok(rep) => counts[rep.status() as usize] += 1,
                    Err(_) => {
                        skipped = true;
                        break;
                    }
                }
            }
            if skipped {
                println!("{family:<14} r = {r:<4} outside the family's range");
            } else {
                println!(
                    "{family:<14} r = {r:<4} n = 1..=100: {} strict, {} equal, {} violated, {} inconclusive",
                    counts[0], counts[1], counts[2], counts[3]
                );
            }
        }
    }

    for n in [1, 10, 50] {
        let rep = power::verify_family(Family::MincSathreRefined, n, None, 128)?;
        let c = &rep.checks[0];
        println!("{}: {} <= {} at n = {n}", c.name, c.smaller.to_decimal(8), c.larger.to_decimal(8));
    }

    let b = power::power_sum_bounds(50, &Rational::from(3), 128)?;
    println!(
        "sum of i^3 for i <= 50 = {} within [{}, {}]",
        b.sum,
        b.lower.as_ref().map(|v| v.to_string()).unwrap_or_default(),
        b.upper
    );
    Ok(())
}
