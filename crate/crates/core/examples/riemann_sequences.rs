//! Monotone Riemann-sum sequences and their common limit.

use certbounds::function;
use certbounds::{sequence_limit_check, sequence_value, Numeric, SequenceKind};

fn main() -> certbounds::Result<()> {
    let f = function::reciprocal();
    let (a, b) = (Numeric::one(), Numeric::from(2));
    for n in [1, 2, 5, 10] {
        let row: Vec<String> = [SequenceKind::A, SequenceKind::B, SequenceKind::S, SequenceKind::T]
            .into_iter()
            .filter(|k| n >= k.min_order())
            .map(|k| Ok(format!("{k}_{n} = {}", sequence_value(k, &f, &a, &b, n, 128)?.to_decimal(10))))
            .collect::<certbounds::Result<_>>()?;
        println!("{}", row.join("  "));
    }

    let ln2 = f.integral(&a, &b, 128).expect("closed form")?;
    let tol = Numeric::ratio(1, 1000);
    let rep = sequence_limit_check(&f, &a, &b, 200, &ln2, Some(&tol), 128)?;
    let strict = rep.checks().filter(|c| c.status().holds()).count();
    println!("ln 2 = {}", ln2.to_decimal(15));
    println!("{strict} of {} checks hold", rep.checks().count());
    println!(
        "gaps at n = 200: A {}, B {}; within 1e-3: {:?}",
        rep.final_gap_a.to_decimal(4),
        rep.final_gap_b.to_decimal(4),
        rep.converged
    );
    Ok(())
}
