pub mod cli;
pub mod convex;
pub mod error;
pub mod function;
pub mod means;
pub mod normed;
pub mod numeric;
pub mod partition;
pub mod power;
pub mod trig;
pub mod verdict;

pub use convex::{
    hh_bracket, log_bracket, sequence_limit_check, sequence_value, st_refinement,
    two_partition_sides, SequenceKind,
};
pub use error::{Error, Result};
pub use function::{Convexity, FnSpec, Monotone};
pub use numeric::{Interval, Numeric, DEFAULT_PRECISION};
pub use partition::{interleaving_valid, uniform_partition, Partition};
pub use verdict::{Bracket, Certified, Check, Policy, PowerProduct, Status, Verdict};
