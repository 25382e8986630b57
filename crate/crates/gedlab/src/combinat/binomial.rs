use num_traits::{One, Zero};

use crate::Int;

/// Binomial coefficient `C(n, k)`, exact; zero for any out-of-range pair
/// (negative arguments or `k > n`).
pub fn binomial(n: i64, k: i64) -> Int {
    if k < 0 || n < 0 || k > n {
        return Int::zero();
    }
    binomial_u(n as u64, k as u64)
}

/// Binomial coefficient on unsigned arguments, zero when `k > n`.
pub fn binomial_u(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 1..=k {
        acc = acc * Int::from(n - k + i) / Int::from(i);
    }
    acc
}

pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}
