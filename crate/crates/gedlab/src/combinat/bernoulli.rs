use std::sync::RwLock;

use num_traits::Zero;

use crate::combinat::binomial_u;
use crate::{rat_from_int, GedError, Int, Rat};

static TABLE: RwLock<Vec<Rat>> = RwLock::new(Vec::new());

/// Bernoulli number `B_r` in the `B_1 = +1/2` convention, the one that makes
/// the Faulhaber closed form reproduce `sum_{k<=n} k^p` on the nose
/// (fixed by the `F_1(n) = n(n+1)/2` test below).
///
/// Recurrence: `sum_{j=0}^{r} C(r+1, j) B_j = r + 1`.
pub fn bernoulli_plus(r: u32) -> Rat {
    {
        let table = TABLE.read().unwrap();
        if let Some(b) = table.get(r as usize) {
            return b.clone();
        }
    }
    let mut table = TABLE.write().unwrap();
    while table.len() <= r as usize {
        let m = table.len() as u64;
        let mut sum = rat_from_int(m as i64 + 1);
        for (j, b) in table.iter().enumerate() {
            sum -= Rat::from_integer(binomial_u(m + 1, j as u64)) * b;
        }
        let value = sum / Rat::from_integer(binomial_u(m + 1, m));
        table.push(value);
    }
    table[r as usize].clone()
}

/// The exact closed form of the power sum `F_p(n) = sum_{k=1}^{n} k^p`,
/// a polynomial in `n` of degree `p + 1` with leading coefficient `1/(p+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaulhaberPoly {
    exponent: u32,
    /// coefficient of `n^j` at index `j`, length `p + 2`
    coeffs: Vec<Rat>,
}

/// `F_p(n) = 1/(p+1) * sum_{r=0}^{p} C(p+1, r) B_r n^{p+1-r}`.
pub fn faulhaber(p: u32) -> FaulhaberPoly {
    let mut coeffs = vec![Rat::zero(); p as usize + 2];
    let lead_inv = Rat::from_integer(Int::from(p + 1));
    for r in 0..=p {
        let term = Rat::from_integer(binomial_u(p as u64 + 1, r as u64)) * bernoulli_plus(r)
            / lead_inv.clone();
        coeffs[(p + 1 - r) as usize] = term;
    }
    FaulhaberPoly {
        exponent: p,
        coeffs,
    }
}

impl FaulhaberPoly {
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rat {
        self.coeffs.last().unwrap()
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, n: &Int) -> Rat {
        let x = Rat::from_integer(n.clone());
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c;
        }
        acc
    }

    pub fn eval_u(&self, n: u64) -> Rat {
        self.eval(&Int::from(n))
    }

    /// Evaluation known to be an integer (it always is at integer points).
    pub fn eval_int(&self, n: u64) -> Result<Int, GedError> {
        crate::rat_to_int(&self.eval_u(n), "Faulhaber value")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn brute(p: u32, n: u64) -> Int {
        let mut acc = Int::zero();
        for k in 1..=n {
            acc += Int::from(k).pow(p);
        }
        acc
    }

    #[test]
    fn convention_fixed_by_f1() {
        // F_1(n) = n(n+1)/2, which forces B_1 = +1/2.
        let f1 = faulhaber(1);
        for n in 0..50u64 {
            assert_eq!(f1.eval_int(n).unwrap(), Int::from(n * (n + 1) / 2));
        }
        assert_eq!(bernoulli_plus(1), Rat::new(Int::one(), Int::from(2)));
    }

    #[test]
    fn spec_values() {
        assert_eq!(faulhaber(1).eval_int(4).unwrap(), Int::from(10));
        assert_eq!(faulhaber(2).eval_int(3).unwrap(), Int::from(14));
        assert_eq!(faulhaber(0).eval_int(7).unwrap(), Int::from(7));
    }

    #[test]
    fn matches_brute_force() {
        for p in 0..=10u32 {
            let f = faulhaber(p);
            assert_eq!(
                f.leading(),
                &Rat::new(Int::one(), Int::from(p + 1)),
                "leading coefficient of F_{p}"
            );
            for n in [0u64, 1, 2, 3, 7, 20, 50, 200] {
                assert_eq!(f.eval_int(n).unwrap(), brute(p, n), "p={p} n={n}");
            }
        }
    }
}
