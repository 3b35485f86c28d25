//! Command-line front end.
//!
//! Every subcommand produces a list of records. Row records share one set of
//! columns per subcommand; summary records close a run. JSONL (default) writes
//! both to stdout, CSV writes rows to stdout and summaries to stderr, and
//! `--pretty` prints aligned text.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use rug::Rational;
use serde_json::{json, Map, Value};

use crate::convex::{self, SequenceKind};
use crate::error::{Error, Result};
use crate::function::{lookup, Convexity, FnSpec};
use crate::means::{self, MeanArgs, MeanKind};
use crate::normed::{segment_integral_bracket, Independence, VectorPair};
use crate::numeric::{parse_rational, Numeric};
use crate::partition::Partition;
use crate::power::{self, Family};
use crate::trig::{self, Angle, SweepReport, TrigBounds, TrigFn};
use crate::verdict::{Bracket, Check, Conclusive, Policy, Status, Verdict};

#[derive(Debug, Parser)]
#[command(name = "certbounds", version, about = "Certified brackets and inequality verdicts")]
pub struct Cli {
    /// Working precision in bits (at least 53).
    #[arg(long, global = true, env = "CB_PRECISION_BITS", default_value_t = 128)]
    pub precision: u32,

    /// How many times to double the precision when a verdict is inconclusive.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_retries: u32,

    /// Offset for the sampled convexity spot-checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, conflicts_with = "pretty")]
    pub csv: bool,

    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bracket the integral (or, with --log, the geometric mean) of a registry function.
    Bracket(BracketArgs),
    /// Riemann-sum sequences, their limits and refinements.
    #[command(subcommand)]
    Sequence(SequenceCmd),
    /// Stolarsky, identric and logarithmic means.
    #[command(subcommand)]
    Means(MeansCmd),
    /// Power-sum inequality families.
    Verify(VerifyArgs),
    /// Integral of a power of a p-norm along a segment.
    Normed(NormedArgs),
    /// Trigonometric bounds.
    #[command(subcommand)]
    Trig(TrigCmd),
}

#[derive(Debug, Args)]
pub struct Interval {
    /// Registry name, e.g. `square`, `power:3/2`, `abs-shift:1/4`.
    #[arg(long = "fn")]
    pub function: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct BracketArgs {
    #[command(flatten)]
    pub interval: Interval,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Bracket the geometric mean of a log-convex function instead.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Subcommand)]
pub enum SequenceCmd {
    /// A_n, B_n, S_n and T_n for n = 1..=n-max.
    Values {
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        n_max: usize,
    },
    /// Monotone steps and convergence of A_n/(b-a) and B_n/(b-a).
    Limit {
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        tolerance: Option<String>,
    },
    /// Two-sided bounds on the steps of S_n and T_n.
    Refine {
        #[command(flatten)]
        interval: Interval,
        #[arg(long)]
        n: usize,
    },
    /// Two-partition inequalities for interleaved partitions.
    Partition {
        #[arg(long = "fn")]
        function: String,
        /// Comma-separated points of the order-n partition.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated points of the order-(n+1) partition.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum MeansCmd {
    /// Value of a mean.
    Value {
        /// `lp:<p>`, `identric` or `logarithmic`.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Riemann-sum bracket of L_r (`lp:<r>`) or of the identric mean.
    Bracket {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Bounds on I(1-a, 1-b)/I(a, b) for 0 < a < b <= 1/2.
    Ratio {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// (C(2m, m))^(1/m) for m = 2..=m-max.
    Binomial {
        #[arg(long)]
        m_max: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub family: String,
    /// A single n or an inclusive range `lo..hi`.
    #[arg(long)]
    pub n: String,
    /// Comma-separated exponents; ignored by the Minc–Sathre families.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
}

#[derive(Debug, Args)]
pub struct NormedArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, default_value = "2")]
    pub norm_p: String,
    #[arg(long, default_value = "1")]
    pub power_q: String,
    /// A single order or an inclusive range `lo..hi` (orders start at 2).
    #[arg(long, default_value = "2")]
    pub n: String,
}

#[derive(Debug, Subcommand)]
pub enum TrigCmd {
    /// Rational bounds on tan, cos or sin at pi/n; n may be a range `lo..hi`.
    Bounds {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        n: String,
    },
    /// Scaled gaps n·gap (tan, sin) or n²·gap (cos) for n = 3..=n-max.
    Gaps {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        n_max: u64,
    },
    /// Sweep of the rational bounds over real arguments.
    Conjecture {
        #[arg(long = "fn")]
        function: String,
        /// Inclusive range `x_min..x_max`.
        #[arg(long, default_value = "2.001..100")]
        x: String,
        #[arg(long, default_value = "0.001")]
        step: String,
        /// Print only the summary record.
        #[arg(long)]
        summary_only: bool,
    },
    /// Bounds on cot(x/n).
    Cot {
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: String,
    },
    /// Bounds on sin(x)/x.
    Sinc {
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: String,
    },
    /// 1/(n-1) < tan(pi/(2n)) < 3/(n+1) with the step ratios.
    TanHalf {
        #[arg(long)]
        n: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Row,
    Summary,
}

/// One output record: ordered fields plus the checks that decide its status.
#[derive(Clone, Debug)]
pub struct Record {
    kind: Kind,
    fields: Vec<(String, Value)>,
    checks: Vec<Check>,
    radius: f64,
}

fn fmt_num(x: &Numeric) -> String {
    match x.as_rational() {
        Some(q) => q.to_string(),
        None => x.to_decimal(20),
    }
}

impl Record {
    fn row() -> Self {
        Record {
            kind: Kind::Row,
            fields: Vec::new(),
            checks: Vec::new(),
            radius: 0.0,
        }
    }

    fn summary() -> Self {
        Record {
            kind: Kind::Summary,
            ..Record::row()
        }
    }

    fn val(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    fn num(mut self, key: &str, x: &Numeric) -> Self {
        self.radius = self.radius.max(x.radius_f64());
        self.val(key, fmt_num(x))
    }

    fn opt_num(self, key: &str, x: Option<&Numeric>) -> Self {
        match x {
            Some(x) => self.num(key, x),
            None => self.val(key, Value::Null),
        }
    }

    fn check(mut self, c: Check) -> Self {
        self.radius = self.radius.max(c.verdict.margin.radius_f64());
        self.checks.push(c);
        self
    }

    fn checks(self, cs: impl IntoIterator<Item = Check>) -> Self {
        cs.into_iter().fold(self, Record::check)
    }

    fn bracket(self, b: &Bracket) -> Self {
        self.num("lower", &b.lower).num("upper", &b.upper)
    }

    /// Worst status over the checks, if there are any.
    pub fn status(&self) -> Option<Status> {
        self.checks.iter().map(Check::status).max()
    }

    /// The smallest margin, by midpoint.
    fn min_margin(&self) -> Option<&Numeric> {
        self.checks
            .iter()
            .map(|c| &c.verdict.margin)
            .min_by(|p, q| p.to_f64().total_cmp(&q.to_f64()))
    }

    fn to_json(&self, precision: u32) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        if self.kind == Kind::Row || !self.checks.is_empty() {
            let checks: Vec<Value> = self
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "smaller": fmt_num(&c.smaller),
                        "larger": fmt_num(&c.larger),
                        "status": c.status().as_str(),
                        "margin": fmt_num(&c.verdict.margin),
                        "margin_radius": c.verdict.margin.radius_f64(),
                    })
                })
                .collect();
            m.insert("checks".into(), Value::Array(checks));
            m.insert("status".into(), self.status().map(Status::as_str).into());
        }
        m.insert("precision".into(), precision.into());
        m.insert("radius".into(), self.radius.into());
        Value::Object(m)
    }

    fn csv_cells(&self, precision: u32) -> Vec<String> {
        let mut cells: Vec<String> = self
            .fields
            .iter()
            .map(|(_, v)| match v {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        cells.push(self.status().map(|s| s.as_str().to_string()).unwrap_or_default());
        cells.push(self.min_margin().map(fmt_num).unwrap_or_default());
        cells.push(precision.to_string());
        cells.push(format!("{:e}", self.radius));
        cells
    }

    fn csv_header(&self) -> Vec<String> {
        let mut h: Vec<String> = self.fields.iter().map(|(k, _)| k.clone()).collect();
        h.extend(["status", "margin", "precision", "radius"].map(String::from));
        h
    }

    fn pretty(&self, out: &mut String) {
        let line: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k} = {s}"),
                other => format!("{k} = {other}"),
            })
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}: {} <= {}  (margin {})\n",
                c.status(),
                c.name,
                c.smaller,
                c.larger,
                c.verdict.margin
            ));
        }
    }
}

impl Conclusive for Record {
    fn inconclusive(&self) -> bool {
        self.checks.inconclusive()
    }
}

/// Parses `lo..hi` (inclusive) or a single value.
fn parse_range(text: &str) -> Result<RangeInclusive<u64>> {
    let parse = |s: &str| s.trim().parse::<u64>().map_err(|_| Error::Parse(text.to_string()));
    let r = match text.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi.trim_start_matches('='))?,
        None => {
            let v = parse(text)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(Error::InvalidArgument(format!("empty range `{text}`")));
    }
    Ok(r)
}

fn parse_rational_range(text: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::Parse(text.to_string()))?;
    Ok((parse_rational(lo.trim())?, parse_rational(hi.trim())?))
}

fn parse_mean_kind(text: &str) -> Result<MeanKind> {
    match text.split_once(':') {
        Some(("lp", p)) => MeanKind::lp(parse_rational(p)?),
        None if text == "identric" => Ok(MeanKind::Identric),
        None if text == "logarithmic" => Ok(MeanKind::Logarithmic),
        _ => Err(Error::Parse(text.to_string())),
    }
}

fn parse_usize(text: &str) -> Result<usize> {
    text.trim().parse().map_err(|_| Error::Parse(text.to_string()))
}

fn bounds_record(b: &TrigBounds) -> Record {
    Record::row()
        .opt_num("lower", b.lower.as_ref())
        .num("value", &b.value)
        .opt_num("upper", b.upper.as_ref())
        .checks(b.checks.iter().cloned())
}

fn interval_args(i: &Interval) -> Result<(FnSpec, Numeric, Numeric)> {
    Ok((lookup(&i.function)?, Numeric::parse(&i.a)?, Numeric::parse(&i.b)?))
}

fn cmd_bracket(args: &BracketArgs, seed: u64, prec: u32) -> Result<Vec<Record>> {
    let (f, a, b) = interval_args(&args.interval)?;
    let contradictions = f.spot_check(&a, &b, 16, seed, prec)?.len();
    let affine = f.convexity() == Convexity::Affine;
    let base = Record::row()
        .val("fn", f.name())
        .num("a", &a)
        .num("b", &b)
        .val("m", args.m)
        .val("n", args.n)
        .val("log", args.log);
    let rec = if args.log {
        let rep = convex::log_bracket(&f, &a, &b, args.m, args.n, prec)?;
        let oracle = f.geometric_mean(&a, &b, prec).transpose()?;
        let mut rec = base
            .bracket(&rep.geo_bracket)
            .num("width", &rep.geo_bracket.width())
            .opt_num("oracle", oracle.as_ref())
            .check(rep.left_ratio)
            .check(rep.right_ratio)
            .check(rep.geo_bracket.ordering_check(affine));
        if let Some(o) = &oracle {
            rec = rec.checks(rep.geo_bracket.containment(o, affine));
        }
        rec
    } else {
        let br = convex::hh_bracket(&f, &a, &b, args.m, args.n, prec)?;
        let oracle = f.integral(&a, &b, prec).transpose()?;
        let mut rec = base
            .bracket(&br)
            .num("width", &br.width())
            .opt_num("oracle", oracle.as_ref())
            .check(br.ordering_check(affine));
        if let Some(o) = &oracle {
            rec = rec.checks(br.containment(o, affine));
        }
        rec
    };
    Ok(vec![rec.val("spot_check_contradictions", contradictions)])
}

fn cmd_sequence(cmd: &SequenceCmd, prec: u32) -> Result<Vec<Record>> {
    match cmd {
        SequenceCmd::Values { interval, n_max } => {
            let (f, a, b) = interval_args(interval)?;
            (1..=*n_max)
                .into_par_iter()
                .map(|n| {
                    let seq = |k: SequenceKind| convex::sequence_value(k, &f, &a, &b, n, prec);
                    let b_n = if n >= 2 { Some(seq(SequenceKind::B)?) } else { None };
                    Ok(Record::row()
                        .val("n", n)
                        .num("A", &seq(SequenceKind::A)?)
                        .opt_num("B", b_n.as_ref())
                        .num("S", &seq(SequenceKind::S)?)
                        .num("T", &seq(SequenceKind::T)?))
                })
                .collect()
        }
        SequenceCmd::Limit {
            interval,
            n_max,
            tolerance,
        } => {
            let (f, a, b) = interval_args(interval)?;
            let integral = f.integral(&a, &b, prec).ok_or_else(|| {
                Error::InvalidArgument(format!("`{}` has no closed-form integral", f.name()))
            })??;
            let oracle = integral.try_div(&(&b - &a))?;
            let tol = tolerance.as_deref().map(Numeric::parse).transpose()?;
            let rep = convex::sequence_limit_check(&f, &a, &b, *n_max, &oracle, tol.as_ref(), prec)?;
            let mut rows: Vec<Record> = (1..=*n_max)
                .map(|n| {
                    let mut r = Record::row()
                        .val("n", n)
                        .num("A_mean", &rep.a_means[n - 1])
                        .opt_num("B_mean", n.checked_sub(2).map(|i| &rep.b_means[i]));
                    if n < *n_max {
                        r = r.check(rep.a_steps[n - 1].clone());
                    }
                    if n >= 2 && n < *n_max {
                        r = r.check(rep.b_steps[n - 2].clone());
                    }
                    if n >= 2 {
                        r = r.checks(rep.containment[n - 2].clone());
                    }
                    r
                })
                .collect();
            rows.push(
                Record::summary()
                    .num("oracle", &oracle)
                    .num("final_gap_a", &rep.final_gap_a)
                    .num("final_gap_b", &rep.final_gap_b)
                    .val("converged", rep.converged)
                    .val(
                        "first_violation",
                        rep.first_violation.map(|(k, n)| format!("{k}_{n}")),
                    ),
            );
            Ok(rows)
        }
        SequenceCmd::Refine { interval, n } => {
            let (f, a, b) = interval_args(interval)?;
            let rep = convex::st_refinement(&f, &a, &b, *n, prec)?;
            let mut rec = Record::row()
                .val("fn", f.name())
                .val("n", *n)
                .num("S_step", &rep.s_gap.middle)
                .num("T_step", &rep.t_gap.middle)
                .check(rep.s_gap.left_check)
                .check(rep.s_gap.right_check)
                .check(rep.t_gap.left_check)
                .check(rep.t_gap.right_check);
            if let Some(m) = rep.monotone {
                rec = rec.checks(m);
            }
            Ok(vec![rec])
        }
        SequenceCmd::Partition { function, x, y } => {
            let f = lookup(function)?;
            let (xp, yp) = (Partition::parse(x)?, Partition::parse(y)?);
            let rep = convex::two_partition_sides(&f, &xp, &yp, prec)?;
            Ok(vec![Record::row()
                .val("fn", f.name())
                .val("order", xp.order())
                .val("ineq2_strict_condition", rep.ineq2_strict_condition)
                .val("ineq1_strict_condition", rep.ineq1_strict_condition)
                .check(rep.ineq2)
                .check(rep.ineq1)
                .check(rep.combined)])
        }
    }
}

fn cmd_means(cmd: &MeansCmd, prec: u32) -> Result<Vec<Record>> {
    match cmd {
        MeansCmd::Value { kind, x, y } => {
            let kind = parse_mean_kind(kind)?;
            let args = MeanArgs::new(Numeric::parse(x)?, Numeric::parse(y)?)?;
            let v = means::mean_value(&kind, &args, prec)?;
            Ok(vec![Record::row()
                .val("kind", kind.to_string())
                .num("a", args.a())
                .num("b", args.b())
                .num("mean", &v)])
        }
        MeansCmd::Bracket { kind, x, y, n } => {
            let kind = parse_mean_kind(kind)?;
            let args = MeanArgs::new(Numeric::parse(x)?, Numeric::parse(y)?)?;
            let base = Record::row()
                .val("kind", kind.to_string())
                .num("a", args.a())
                .num("b", args.b())
                .val("n", *n);
            let rec = match &kind {
                MeanKind::Lp(r) => {
                    let rep = means::lp_bracket(&args, r, *n, prec)?;
                    base.bracket(&rep.bracket)
                        .num("mean", &rep.mean)
                        .checks(rep.ratios.left)
                        .checks(rep.ratios.right)
                        .checks(rep.containment)
                }
                MeanKind::Identric => {
                    let rep = means::identric_bracket(&args, *n, prec)?;
                    base.bracket(&rep.bracket)
                        .num("mean", &rep.mean)
                        .check(rep.left)
                        .check(rep.right)
                        .checks(rep.containment)
                }
                MeanKind::Logarithmic => {
                    return Err(Error::InvalidArgument(
                        "bracket supports `lp:<r>` and `identric`".into(),
                    ))
                }
            };
            Ok(vec![rec])
        }
        MeansCmd::Ratio { a, b, m, n } => {
            let args = MeanArgs::new(Numeric::parse(a)?, Numeric::parse(b)?)?;
            let rep = means::identric_ratio_bounds(&args, *m, *n, prec)?;
            Ok(vec![Record::row()
                .num("a", args.a())
                .num("b", args.b())
                .val("m", *m)
                .val("n", *n)
                .num("ratio", &rep.ratio)
                .bracket(&rep.chain)
                .checks(rep.chain_checks)
                .check(rep.left_ratio)
                .check(rep.right_ratio)
                .checks(rep.special)])
        }
        MeansCmd::Binomial { m_max } => {
            if *m_max < 2 {
                return Err(Error::InvalidArgument("m-max must be at least 2".into()));
            }
            (2..=*m_max)
                .into_par_iter()
                .map(|m| {
                    let s = means::central_binomial_step(m, prec)?;
                    Ok(Record::row()
                        .val("m", m)
                        .num("value", &s.value)
                        .check(s.increase)
                        .check(s.below_four))
                })
                .collect()
        }
    }
}

fn cmd_verify(args: &VerifyArgs, prec: u32) -> Result<Vec<Record>> {
    let family: Family = args.family.parse()?;
    let ns = parse_range(&args.n)?;
    if *ns.start() == 0 {
        return Err(Error::InvalidArgument("n starts at 1".into()));
    }
    let rs: Vec<Option<Rational>> = match (&args.r, family.uses_exponent()) {
        (Some(list), true) => list
            .split(',')
            .map(|s| parse_rational(s.trim()).map(Some))
            .collect::<Result<_>>()?,
        (None, true) => return Err(Error::InvalidArgument(format!("{family} needs --r"))),
        (_, false) => vec![None],
    };
    let jobs: Vec<(u64, Option<Rational>)> = ns
        .flat_map(|n| rs.iter().map(move |r| (n, r.clone())))
        .collect();
    jobs.par_iter()
        .map(|(n, r)| {
            let rep = power::verify_family(family, *n, r.as_ref(), prec)?;
            let worst = rep
                .checks
                .iter()
                .max_by(|p, q| {
                    p.status().cmp(&q.status()).then_with(|| {
                        q.verdict.margin.to_f64().total_cmp(&p.verdict.margin.to_f64())
                    })
                })
                .cloned();
            Ok(Record::row()
                .val("family", family.name())
                .val("n", *n)
                .val("r", r.as_ref().map(|q| q.to_string()))
                .opt_num("lhs", worst.as_ref().map(|c| &c.smaller))
                .opt_num("rhs", worst.as_ref().map(|c| &c.larger))
                .checks(rep.checks))
        })
        .collect()
}

fn cmd_normed(args: &NormedArgs, prec: u32) -> Result<Vec<Record>> {
    let vp = VectorPair::parse(
        &args.x,
        &args.y,
        parse_rational(&args.norm_p)?,
        parse_rational(&args.power_q)?,
    )?;
    let independence = match vp.independence() {
        Independence::Independent => "independent",
        Independence::Dependent => "dependent",
        Independence::Undecided => "undecided",
    };
    parse_range(&args.n)?
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let rep = segment_integral_bracket(&vp, n as usize, prec)?;
            Ok(Record::row()
                .val("n", n)
                .val("dim", vp.dim())
                .val("norm_p", vp.norm_p().to_string())
                .val("power_q", vp.power_q().to_string())
                .val("independence", independence)
                .val("affine", rep.affine)
                .val("strict_expected", rep.strict_expected)
                .bracket(&rep.bracket)
                .num("integral", &rep.integral)
                .val("integral_is_closed_form", rep.integral_is_closed_form)
                .checks(rep.ratios)
                .checks(rep.classical)
                .checks(rep.containment))
        })
        .collect()
}

fn trig_fn(name: &str) -> Result<TrigFn> {
    name.parse()
}

fn sweep_summary(rep: &SweepReport, x_min: &Rational, x_max: &Rational) -> Record {
    Record::summary()
        .val("fn", rep.function.to_string())
        .val("x_min", x_min.to_string())
        .val("x_max", x_max.to_string())
        .val("points", rep.rows.len())
        .val("refined_points", rep.refined_points)
        .num("min_margin", &rep.min_margin)
        .val("argmin", rep.argmin.to_string())
        .val("violations", rep.violations.len())
        .val("undecided", rep.undecided.len())
        .val("evidence", SweepReport::EVIDENCE)
        .check(Check::new("min margin > 0", Numeric::zero(), rep.min_margin.clone()))
}

fn cmd_trig(cmd: &TrigCmd, prec: u32) -> Result<Vec<Record>> {
    match cmd {
        TrigCmd::Bounds { function, n } => {
            let f = trig_fn(function)?;
            let args: Vec<Numeric> = if n.contains("..") {
                parse_range(n)?.map(Numeric::from).collect()
            } else {
                vec![Numeric::parse(n)?]
            };
            args.par_iter()
                .map(|arg| {
                    let rep = trig::rational_trig_bounds(f, arg, prec)?;
                    // a mismatch between the two exact gaps is a failed identity
                    let identity = (rep.gap_matches == Some(false)).then(|| Check {
                        name: "gap identity".into(),
                        smaller: rep.gap_formula.clone(),
                        larger: rep.gap.clone(),
                        verdict: Verdict {
                            status: Status::Violated,
                            margin: -(&rep.gap - &rep.gap_formula).abs(),
                        },
                    });
                    Ok(Record::row()
                        .val("fn", f.to_string())
                        .num("n", arg)
                        .val("conjectural", rep.conjectural)
                        .opt_num("lower", rep.bounds.lower.as_ref())
                        .num("value", &rep.bounds.value)
                        .opt_num("upper", rep.bounds.upper.as_ref())
                        .num("gap", &rep.gap)
                        .num("gap_formula", &rep.gap_formula)
                        .val("gap_matches", rep.gap_matches)
                        .checks(rep.bounds.checks)
                        .checks(identity))
                })
                .collect()
        }
        TrigCmd::Gaps { function, n_max } => {
            let g = trig::gap_asymptotics(trig_fn(function)?, *n_max)?;
            let mut rows: Vec<Record> = g
                .rows
                .iter()
                .map(|r| {
                    let scaled = Numeric::from(r.scaled_gap.clone());
                    Record::row()
                        .val("fn", g.function.to_string())
                        .val("n", r.n)
                        .val("scaled_gap", scaled.to_decimal(20))
                        .val("deviation", Numeric::from(r.deviation.clone()).to_decimal(20))
                        .val("scaled_gap_exact", r.scaled_gap.to_string())
                })
                .collect();
            rows.push(
                Record::summary()
                    .val("fn", g.function.to_string())
                    .val("limit", g.limit)
                    .val("monotone_from", g.monotone_from),
            );
            Ok(rows)
        }
        TrigCmd::Conjecture {
            function,
            x,
            step,
            summary_only,
        } => {
            let f = trig_fn(function)?;
            let (lo, hi) = parse_rational_range(x)?;
            let rep = trig::conjecture_sweep(f, &lo, &hi, &parse_rational(step)?, prec)?;
            let mut out = Vec::new();
            if !summary_only {
                out = rep
                    .rows
                    .iter()
                    .map(|r| {
                        Record::row()
                            .val("x", r.x.to_string())
                            .num("lower", &r.lower)
                            .num("value", &r.value)
                            .num("upper", &r.upper)
                            .num("margin", &r.margin)
                            .check(Check::new("margin > 0", Numeric::zero(), r.margin.clone()))
                    })
                    .collect();
            }
            out.push(sweep_summary(&rep, &lo, &hi));
            Ok(out)
        }
        TrigCmd::Cot { x, n } => {
            let angle = Angle::parse(x)?;
            let n = parse_usize(n)?;
            let b = trig::cot_bounds(&angle, n, prec)?;
            Ok(vec![bounds_record(&b).val("x", angle.to_string()).val("n", n)])
        }
        TrigCmd::Sinc { x, n } => {
            let angle = Angle::parse(x)?;
            let n = parse_usize(n)?;
            let b = trig::sinc_bounds(&angle, n, prec)?;
            Ok(vec![bounds_record(&b).val("x", angle.to_string()).val("n", n)])
        }
        TrigCmd::TanHalf { n } => parse_range(n)?
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&n| {
                let n = n as usize;
                let b = trig::tan_half_bounds(n, prec)?;
                let (lo, hi) = trig::telescoped_tan_bounds(n)?;
                let telescoped = [
                    Check::new("telescoped lower", Numeric::from(lo), b.lower.clone().expect("set")),
                    Check::new("telescoped upper", b.upper.clone().expect("set"), Numeric::from(hi)),
                ];
                let mut rec = bounds_record(&b).val("n", n).checks(telescoped);
                if n >= 3 {
                    rec = rec.checks(trig::tan_half_ratio(n - 1, prec)?.checks);
                }
                Ok(rec)
            })
            .collect(),
    }
}

fn run_command(cli: &Cli, prec: u32) -> Result<Vec<Record>> {
    match &cli.command {
        Command::Bracket(a) => cmd_bracket(a, cli.seed, prec),
        Command::Sequence(c) => cmd_sequence(c, prec),
        Command::Means(c) => cmd_means(c, prec),
        Command::Verify(a) => cmd_verify(a, prec),
        Command::Normed(a) => cmd_normed(a, prec),
        Command::Trig(c) => cmd_trig(c, prec),
    }
}

/// Exit status for a finished run.
pub fn exit_code(records: &[Record]) -> i32 {
    let worst = records.iter().filter_map(Record::status).max();
    let violated = records.iter().any(|r| r.status() == Some(Status::Violated));
    match worst {
        _ if violated => 1,
        Some(Status::Inconclusive) => 4,
        _ => 0,
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::NotInterleaved(_) => 3,
        _ => 2,
    }
}

fn status_counts(records: &[Record]) -> Value {
    let mut counts: BTreeMap<&str, usize> = [
        Status::HoldsStrictly,
        Status::HoldsWithEquality,
        Status::Violated,
        Status::Inconclusive,
    ]
    .iter()
    .map(|s| (s.as_str(), 0))
    .collect();
    for s in records.iter().filter_map(Record::status) {
        *counts.entry(s.as_str()).or_default() += 1;
    }
    json!({ "records": records.len(), "counts": counts })
}

fn emit(
    cli: &Cli,
    records: &[Record],
    precision: u32,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<()> {
    let summary = json!({ "summary": status_counts(records), "precision": precision });
    if cli.pretty {
        let mut text = String::new();
        for r in records {
            r.pretty(&mut text);
        }
        out.write_all(text.as_bytes())?;
        writeln!(out, "summary: {}", summary["summary"])?;
    } else if cli.csv {
        let rows: Vec<&Record> = records.iter().filter(|r| r.kind == Kind::Row).collect();
        if let Some(first) = rows.first() {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(first.csv_header())?;
            for r in &rows {
                w.write_record(r.csv_cells(precision))?;
            }
            w.flush()?;
        }
        for r in records.iter().filter(|r| r.kind == Kind::Summary) {
            writeln!(err, "{}", r.to_json(precision))?;
        }
        writeln!(err, "{summary}")?;
    } else {
        for r in records {
            writeln!(out, "{}", r.to_json(precision))?;
        }
        writeln!(out, "{summary}")?;
    }
    Ok(())
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let policy = match Policy::new(cli.precision, cli.max_retries) {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match policy.certify(|prec| run_command(&cli, prec)) {
        Ok(done) => {
            if let Err(e) = emit(&cli, &done.value, done.precision, out, err) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            exit_code(&done.value)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}
