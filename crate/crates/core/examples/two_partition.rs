//! Interleaved partitions and the two inequalities they satisfy for convex functions.

use certbounds::convex::two_partition_sides;
use certbounds::function;
use certbounds::{interleaving_valid, Partition};

fn main() -> certbounds::Result<()> {
    let x = Partition::parse("0,1/5,1/2,4/5,1")?;
    let y = Partition::parse("0,1/10,3/10,3/5,9/10,1")?;
    println!("interleaved: {}", interleaving_valid(&x, &y)?);

    for f in [function::square(), function::exp(), function::affine()] {
        let rep = two_partition_sides(&f, &x, &y, 128)?;
        println!("{}:", f.name());
        for c in [&rep.ineq2, &rep.ineq1, &rep.combined] {
            println!("  {:<18} {} <= {}  [{}]", c.name, c.smaller.to_decimal(10), c.larger.to_decimal(10), c.status());
        }
    }

    let bad = Partition::parse("0,3/5,7/10,4/5,9/10,1")?;
    println!("misplaced points rejected: {}", two_partition_sides(&function::square(), &x, &bad, 128).is_err());
    Ok(())
}
