//! Partitions of a closed interval and the interleaving condition between a
//! partition and one that is exactly one point finer.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeric::Numeric;

/// A strictly increasing grid `a = p_0 < p_1 < ... < p_n = b`, `n >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    points: Vec<Numeric>,
}

/// `a + i(b-a)/n`, formed directly from the integers `i` and `n`.
pub fn grid_point(a: &Numeric, b: &Numeric, i: usize, n: usize) -> Numeric {
    debug_assert!(n > 0 && i <= n);
    if i == 0 {
        return a.clone();
    }
    if i == n {
        return b.clone();
    }
    a + &(&(b - a) * &Numeric::ratio(i as i64, n as i64))
}

pub(crate) fn check_interval(a: &Numeric, b: &Numeric) -> Result<()> {
    match a.certified_cmp(b) {
        Some(Ordering::Less) => Ok(()),
        Some(_) => Err(Error::domain(format!("interval needs a < b, got a = {a}, b = {b}"))),
        None => Err(Error::domain("cannot certify a < b")),
    }
}

/// Uniform partition of order `n`: `n + 1` points `a + i(b-a)/n`.
pub fn uniform_partition(a: &Numeric, b: &Numeric, n: usize) -> Result<Partition> {
    check_interval(a, b)?;
    if n == 0 {
        return Err(Error::invalid("partition order must be at least 1"));
    }
    Ok(Partition {
        points: (0..=n).map(|i| grid_point(a, b, i, n)).collect(),
    })
}

impl Partition {
    /// Validates strict monotonicity; every consecutive gap must be certified positive.
    pub fn new(points: Vec<Numeric>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("a partition needs at least two points"));
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[0].certified_cmp(&w[1]) != Some(Ordering::Less) {
                return Err(Error::invalid(format!(
                    "partition points must be strictly increasing (index {i}: {} then {})",
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(Partition { points })
    }

    /// Parses comma-separated exact rationals.
    pub fn parse(text: &str) -> Result<Self> {
        let points = text
            .split(',')
            .map(Numeric::parse)
            .collect::<Result<Vec<_>>>()?;
        Partition::new(points)
    }

    pub fn points(&self) -> &[Numeric] {
        &self.points
    }

    /// Number of subintervals.
    pub fn order(&self) -> usize {
        self.points.len() - 1
    }

    pub fn a(&self) -> &Numeric {
        &self.points[0]
    }

    pub fn b(&self) -> &Numeric {
        &self.points[self.points.len() - 1]
    }
}

fn same_point(p: &Numeric, q: &Numeric) -> bool {
    match p.certified_cmp(q) {
        Some(o) => o == Ordering::Equal,
        None => p.overlaps(q),
    }
}

/// Whether `x_{i-1} <= y_i <= x_i` for `i = 1..=n`, where `x` has order `n`
/// and `y` has order `n + 1` over the same interval.
pub fn interleaving_valid(x: &Partition, y: &Partition) -> Result<bool> {
    if !same_point(x.a(), y.a()) || !same_point(x.b(), y.b()) {
        return Err(Error::NotInterleaved(format!(
            "endpoints differ: [{}, {}] vs [{}, {}]",
            x.a(),
            x.b(),
            y.a(),
            y.b()
        )));
    }
    if y.order() != x.order() + 1 {
        return Err(Error::NotInterleaved(format!(
            "finer partition must have exactly one more subinterval ({} vs {})",
            x.order(),
            y.order()
        )));
    }
    let xs = x.points();
    let ys = y.points();
    let not_below = |lo: &Numeric, hi: &Numeric| {
        matches!(lo.certified_cmp(hi), Some(Ordering::Less | Ordering::Equal))
    };
    Ok((1..=x.order()).all(|i| not_below(&xs[i - 1], &ys[i]) && not_below(&ys[i], &xs[i])))
}
