//! Fixed-point sets of group elements and the singular strata of `T/G`.

mod fixed;
mod strata;
mod subtorus;

pub use fixed::fixed_set;
pub use strata::{locate, oriented_parametrization, strata, Stratum, StratumAnchor, GENERIC_PRIMES, CHECK_PRIMES};
pub use subtorus::{act_on_point, act_on_subtorus, AffineSubtorus};
