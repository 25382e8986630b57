//! Exact combinatorial substrate: partitions, binomials, Bernoulli numbers
//! and Faulhaber polynomials, Littlewood-Richardson coefficients, and the
//! closed-form evaluation of doubly symmetric subset sums.

mod bernoulli;
mod binomial;
mod lr;
mod partition;
mod powersum;
mod setpart;

pub use bernoulli::{bernoulli_plus, faulhaber, FaulhaberPoly};
pub use binomial::{binomial, binomial_u, factorial};
pub use lr::{lr_cache_len, lr_cache_preload, lr_cache_snapshot, lr_coefficient, schur_expand};
pub use partition::{partitions_in_rect, Partition};
pub use powersum::PowerSumExpr;
pub use setpart::{mobius_weight, set_partitions};
