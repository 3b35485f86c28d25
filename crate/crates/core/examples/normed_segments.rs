//! Integrals of powers of p-norms along line segments.

use certbounds::normed::{segment_integral_bracket, VectorPair};
use rug::Rational;

fn main() -> certbounds::Result<()> {
    let cases = [
        ("1,0", "0,1", 2, 2),
        ("1,0", "0,1", 2, 1),
        ("1,2,-1", "3,-1,2", 3, 2),
        ("1,0", "0,1", 1, 1),
        ("1,1", "2,2", 2, 1),
    ];
    for (x, y, p, q) in cases {
        let vp = VectorPair::parse(x, y, Rational::from(p), Rational::from(q))?;
        println!("x = ({x}), y = ({y}), p = {p}, q = {q}");
        for n in [2, 8, 32] {
            let rep = segment_integral_bracket(&vp, n, 128)?;
            println!(
                "  n = {n:>2}: [{}, {}]  integral {}{}  ratios {} / {}",
                rep.bracket.lower.to_decimal(10),
                rep.bracket.upper.to_decimal(10),
                rep.integral.to_decimal(10),
                if rep.integral_is_closed_form { " (closed form)" } else { "" },
                rep.ratios[0].status(),
                rep.ratios[1].status(),
            );
        }
    }
    Ok(())
}
