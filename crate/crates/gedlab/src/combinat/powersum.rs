use std::collections::BTreeMap;

use num_traits::Zero;

use crate::combinat::{binomial_u, faulhaber, mobius_weight, set_partitions, Partition};
use crate::{GedError, Rat};

/// A polynomial symmetric separately in two blocks of variables, stored in
/// the power-sum basis: `F(x, y) = sum c_{lam,mu} p_lam(x) p_mu(y)`.
///
/// Keys are pairs of partitions; every key must satisfy
/// `|lam| + |mu| <= degree_cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSumExpr {
    terms: BTreeMap<(Partition, Partition), Rat>,
    degree_cap: u64,
}

impl PowerSumExpr {
    pub fn new(degree_cap: u64) -> Self {
        PowerSumExpr {
            terms: BTreeMap::new(),
            degree_cap,
        }
    }

    /// The constant expression `c` (key `(∅, ∅)`).
    pub fn constant(c: Rat) -> Self {
        PowerSumExpr::new(0)
            .with_term(Partition::empty(), Partition::empty(), c)
            .unwrap()
    }

    pub fn with_term(
        mut self,
        lam: Partition,
        mu: Partition,
        coeff: Rat,
    ) -> Result<Self, GedError> {
        if lam.weight() + mu.weight() > self.degree_cap {
            return Err(GedError::invalid(format!(
                "term p_{lam} p_{mu} exceeds the degree cap {}",
                self.degree_cap
            )));
        }
        if !coeff.is_zero() {
            *self.terms.entry((lam, mu)).or_insert_with(Rat::zero) += coeff;
        }
        Ok(self)
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), Rat> {
        &self.terms
    }

    pub fn degree_cap(&self) -> u64 {
        self.degree_cap
    }

    /// `G(N, m) = sum_{A ⊂ [N], |A|=k} sum_{B ⊂ [m], |B|=k} F(A, B)`,
    /// evaluated by the closed-form route: power sums over distinct indices
    /// are expanded by Moebius inversion on the partition lattice into
    /// products of Faulhaber values. No subset is ever enumerated.
    pub fn double_symmetric_sum(
        &self,
        k: u32,
        n_count: u64,
        m_count: u64,
    ) -> Result<Rat, GedError> {
        if (k as u64) > n_count.min(m_count) {
            return Err(GedError::invalid(format!(
                "subset size k={k} exceeds min(N, m) = {}",
                n_count.min(m_count)
            )));
        }
        let mut total = Rat::zero();
        for ((lam, mu), c) in &self.terms {
            let s_lam = subset_power_sum(lam, k, n_count);
            let s_mu = subset_power_sum(mu, k, m_count);
            total += c * s_lam * s_mu;
        }
        Ok(total)
    }
}

/// `S_lam(N; k) = sum_{A ⊂ [N], |A| = k} p_lam(A)`, closed form.
///
/// Expanding `p_lam(A)` as a sum over index tuples and grouping tuples by
/// their equality pattern gives, for each set partition `pi` of the positions
/// with `s` blocks and block exponents `e_c`,
/// a contribution `C(N - s, k - s) * D(e_1, .., e_s; N)` where `D` is the sum
/// over distinct indices, itself resolved by Moebius inversion into products
/// of Faulhaber values.
pub fn subset_power_sum(lam: &Partition, k: u32, n_count: u64) -> Rat {
    if lam.is_empty() {
        // p_∅ = 1: just count the subsets
        return Rat::from_integer(binomial_u(n_count, k as u64));
    }
    let r = lam.len();
    let mut total = Rat::zero();
    for pattern in set_partitions(r) {
        let s = pattern.len() as u64;
        if s > k as u64 || s > n_count {
            continue;
        }
        let exps: Vec<u64> = pattern
            .iter()
            .map(|block| block.iter().map(|&t| lam.part(t) as u64).sum())
            .collect();
        let d = distinct_index_sum(&exps, n_count);
        if d.is_zero() {
            continue;
        }
        let count = binomial_u(n_count - s, k as u64 - s);
        total += Rat::from_integer(count) * d;
    }
    total
}

/// `sum over pairwise-distinct (j_1, .., j_s) in [N]^s of prod j_b^{e_b}`.
fn distinct_index_sum(exps: &[u64], n_count: u64) -> Rat {
    let s = exps.len();
    let mut total = Rat::zero();
    for merge in set_partitions(s) {
        let mu = mobius_weight(&merge);
        let mut prod = Rat::from_integer(mu);
        for block in &merge {
            let e: u64 = block.iter().map(|&b| exps[b]).sum();
            prod *= faulhaber(e as u32).eval_u(n_count);
        }
        total += prod;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_from_int, Int};

    /// Brute-force oracle: enumerate both subsets directly.
    fn brute_double_sum(expr: &PowerSumExpr, k: u32, n_count: u64, m_count: u64) -> Rat {
        fn combinations(n: u64, k: u32) -> Vec<Vec<u64>> {
            fn rec(out: &mut Vec<Vec<u64>>, cur: &mut Vec<u64>, start: u64, n: u64, k: u32) {
                if cur.len() == k as usize {
                    out.push(cur.clone());
                    return;
                }
                for v in start..=n {
                    cur.push(v);
                    rec(out, cur, v + 1, n, k);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(&mut out, &mut Vec::new(), 1, n, k);
            out
        }
        fn p_eval(lam: &Partition, vals: &[u64]) -> Int {
            lam.parts()
                .iter()
                .map(|&e| vals.iter().map(|&v| Int::from(v).pow(e)).sum::<Int>())
                .product()
        }
        let mut total = Rat::zero();
        for a in combinations(n_count, k) {
            for b in combinations(m_count, k) {
                for ((lam, mu), c) in expr.terms() {
                    total += c * Rat::from_integer(p_eval(lam, &a) * p_eval(mu, &b));
                }
            }
        }
        total
    }

    #[test]
    fn spec_examples() {
        let p1x = PowerSumExpr::new(1)
            .with_term(Partition::row(1), Partition::empty(), rat_from_int(1))
            .unwrap();
        assert_eq!(p1x.double_symmetric_sum(1, 3, 2).unwrap(), rat_from_int(12));

        let one = PowerSumExpr::constant(rat_from_int(1));
        assert_eq!(one.double_symmetric_sum(1, 4, 5).unwrap(), rat_from_int(20));

        let p1p1 = PowerSumExpr::new(2)
            .with_term(Partition::row(1), Partition::row(1), rat_from_int(1))
            .unwrap();
        assert_eq!(p1p1.double_symmetric_sum(1, 2, 2).unwrap(), rat_from_int(9));
    }

    #[test]
    fn rejects_oversized_subset() {
        let one = PowerSumExpr::constant(rat_from_int(1));
        assert!(one.double_symmetric_sum(3, 2, 5).is_err());
    }

    #[test]
    fn cap_enforced() {
        assert!(PowerSumExpr::new(2)
            .with_term(
                Partition::new(vec![2, 1]).unwrap(),
                Partition::empty(),
                rat_from_int(1)
            )
            .is_err());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        // several expressions of total degree <= 4
        let exprs = vec![
            PowerSumExpr::constant(rat_from_int(3)),
            PowerSumExpr::new(2)
                .with_term(Partition::row(2), Partition::empty(), rat_from_int(1))
                .unwrap(),
            PowerSumExpr::new(4)
                .with_term(Partition::row(1), Partition::row(1), rat_from_int(2))
                .unwrap()
                .with_term(
                    Partition::new(vec![1, 1]).unwrap(),
                    Partition::empty(),
                    Rat::new(Int::from(1), Int::from(2)),
                )
                .unwrap()
                .with_term(Partition::row(2), Partition::row(2), rat_from_int(-1))
                .unwrap(),
            PowerSumExpr::new(4)
                .with_term(
                    Partition::new(vec![2, 1]).unwrap(),
                    Partition::row(1),
                    rat_from_int(5),
                )
                .unwrap(),
        ];
        for expr in &exprs {
            for k in 1..=3u32 {
                for n in k as u64..=8 {
                    for m in k as u64..=8 {
                        assert_eq!(
                            expr.double_symmetric_sum(k, n, m).unwrap(),
                            brute_double_sum(expr, k, n, m),
                            "k={k} N={n} m={m}"
                        );
                    }
                }
            }
        }
    }
}
