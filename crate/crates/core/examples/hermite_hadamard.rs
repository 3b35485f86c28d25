//! Midpoint/trapezoid style brackets of integrals, refined by larger orders.

use certbounds::function::{self, FnSpec};
use certbounds::{hh_bracket, Numeric, Status};

fn show(f: &FnSpec, a: &Numeric, b: &Numeric) -> certbounds::Result<()> {
    let exact = f.integral(a, b, 128).transpose()?;
    println!("{} on [{a}, {b}]", f.name());
    for (m, n) in [(2, 1), (4, 4), (16, 16), (64, 64)] {
        let br = hh_bracket(f, a, b, m, n, 128)?;
        let inside = exact.as_ref().map(|v| {
            br.containment(v, false)
                .iter()
                .all(|c| c.status() == Status::HoldsStrictly)
        });
        println!(
            "  m = {m:>2}, n = {n:>2}: [{}, {}]  width {}  contains integral: {inside:?}",
            br.lower.to_decimal(12),
            br.upper.to_decimal(12),
            br.width().to_decimal(4),
        );
    }
    Ok(())
}

fn main() -> certbounds::Result<()> {
    show(&function::square(), &Numeric::zero(), &Numeric::one())?;
    show(&function::exp(), &Numeric::zero(), &Numeric::one())?;
    // concave: the roles of the two sums swap
    show(&function::sin(), &Numeric::zero(), &Numeric::ratio(3, 1))?;
    Ok(())
}
