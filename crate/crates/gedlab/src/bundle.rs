//! Formal vector-bundle calculus over the base: a bundle is a rank together
//! with a total Chern class. Duals and direct sums are grade-by-grade
//! manipulations; tensor products go through the Chern character (Newton's
//! identities over exact rationals, truncated at `dim B`), with a mandatory
//! integrality check on the way back. Segre classes are graded inverses of
//! the total Chern class.

use num_traits::One;

use crate::chowring::{ChowClass, ProductCtx};
use crate::combinat::factorial;
use crate::{GedError, Rat};

/// A formal bundle on the base: rank plus total Chern class (unit in
/// grade 0, truncated beyond `dim B` where the Chow ring vanishes anyway).
#[derive(Clone, Debug, PartialEq)]
pub struct BundleClass {
    ctx: ProductCtx,
    rank: u32,
    total_chern: ChowClass,
}

impl BundleClass {
    pub fn new(ctx: ProductCtx, rank: u32, total_chern: ChowClass) -> Result<Self, GedError> {
        if total_chern.graded_component(0) != ChowClass::one(ctx) {
            return Err(GedError::invalid(
                "total Chern class must have unit grade-0 component",
            ));
        }
        Ok(BundleClass {
            ctx,
            rank,
            total_chern,
        })
    }

    pub fn trivial(ctx: ProductCtx, rank: u32) -> Self {
        BundleClass {
            ctx,
            rank,
            total_chern: ChowClass::one(ctx),
        }
    }

    pub fn ctx(&self) -> ProductCtx {
        self.ctx
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn total_chern(&self) -> &ChowClass {
        &self.total_chern
    }

    /// `c_i` as a homogeneous class.
    pub fn chern(&self, i: u32) -> ChowClass {
        self.total_chern.graded_component(i)
    }

    /// `c_i(E^v) = (-1)^i c_i(E)`: negate odd grades, same rank.
    pub fn dual(&self) -> BundleClass {
        let terms = self
            .total_chern
            .terms()
            .iter()
            .map(|(k, c)| {
                let g = ChowClass::grade_of(k);
                let c = if g % 2 == 1 { -c.clone() } else { c.clone() };
                (k.clone(), c)
            })
            .collect::<Vec<_>>();
        BundleClass {
            ctx: self.ctx,
            rank: self.rank,
            total_chern: ChowClass::from_terms(self.ctx, terms).expect("keys unchanged"),
        }
    }

    /// Whitney sum: ranks add, total Chern classes multiply.
    pub fn direct_sum(&self, other: &BundleClass) -> BundleClass {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        BundleClass {
            ctx: self.ctx,
            rank: self.rank + other.rank,
            total_chern: self.total_chern.multiply(&other.total_chern),
        }
    }

    /// Chern character `ch = rank + sum_{i>=1} p_i / i!`, graded pieces up to
    /// `dim B`, power sums from Chern classes by Newton's identities.
    fn chern_character(&self) -> Vec<ChowClass> {
        let dim_b = self.ctx.dim_b() as usize;
        let mut c: Vec<ChowClass> = (0..=dim_b as u32).map(|i| self.chern(i)).collect();
        c[0] = ChowClass::one(self.ctx);
        // p_k = sum_{j=1}^{k-1} (-1)^{j-1} c_j p_{k-j} + (-1)^{k-1} k c_k
        let mut p: Vec<ChowClass> = vec![ChowClass::zero(self.ctx)];
        for k in 1..=dim_b {
            let mut acc = c[k].scale(&Rat::from_integer(
                if (k - 1) % 2 == 1 {
                    -(k as i64)
                } else {
                    k as i64
                }
                .into(),
            ));
            for j in 1..k {
                let term = c[j].multiply(&p[k - j]);
                acc = if (j - 1) % 2 == 1 {
                    acc.sub(&term)
                } else {
                    acc.add(&term)
                };
            }
            p.push(acc);
        }
        let mut ch: Vec<ChowClass> =
            vec![ChowClass::one(self.ctx).scale(&Rat::from_integer((self.rank as i64).into()))];
        for (k, pk) in p.iter().enumerate().skip(1) {
            ch.push(pk.scale(&Rat::new(1.into(), factorial(k as u64))));
        }
        ch
    }

    /// Inverse conversion: from graded Chern character back to Chern classes;
    /// every coefficient must come out an integer, which is the cheapest
    /// global sanity check of the whole Chern-character path.
    fn from_character(
        ctx: ProductCtx,
        rank: u32,
        ch: &[ChowClass],
    ) -> Result<BundleClass, GedError> {
        let dim_b = ctx.dim_b() as usize;
        // p_k = k! ch_k
        let mut p: Vec<ChowClass> = vec![ChowClass::zero(ctx)];
        #[allow(clippy::needless_range_loop)]
        for k in 1..=dim_b {
            p.push(ch[k].scale(&Rat::from_integer(factorial(k as u64))));
        }
        // k e_k = sum_{j=1}^{k} (-1)^{j-1} e_{k-j} p_j
        let mut e: Vec<ChowClass> = vec![ChowClass::one(ctx)];
        for k in 1..=dim_b {
            let mut acc = ChowClass::zero(ctx);
            for j in 1..=k {
                let term = e[k - j].multiply(&p[j]);
                acc = if (j - 1) % 2 == 1 {
                    acc.sub(&term)
                } else {
                    acc.add(&term)
                };
            }
            e.push(acc.scale(&Rat::new(1.into(), (k as i64).into())));
        }
        let mut total = ChowClass::zero(ctx);
        for ek in &e {
            for (key, coeff) in ek.terms() {
                if !coeff.denom().is_one() {
                    return Err(GedError::NonIntegerValue {
                        what: format!("Chern coefficient at ({}, {})", key.0, key.1),
                        value: coeff.to_string(),
                    });
                }
            }
            total = total.add(ek);
        }
        BundleClass::new(ctx, rank, total)
    }

    /// Tensor product via Chern characters. Errors on context mismatch only
    /// through the shared assertion; a fractional Chern class afterwards
    /// signals an internal bug and aborts the computation.
    pub fn tensor(&self, other: &BundleClass) -> Result<BundleClass, GedError> {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let dim_b = self.ctx.dim_b() as usize;
        let cha = self.chern_character();
        let chb = other.chern_character();
        let mut ch: Vec<ChowClass> = Vec::with_capacity(dim_b + 1);
        #[allow(clippy::needless_range_loop)]
        for g in 0..=dim_b {
            let mut acc = ChowClass::zero(self.ctx);
            for u in 0..=g {
                acc = acc.add(&cha[u].multiply(&chb[g - u]));
            }
            ch.push(acc);
        }
        BundleClass::from_character(self.ctx, self.rank * other.rank, &ch)
    }

    /// `t`-th Segre class: the grade-`t` component of the inverse of the
    /// total Chern class. Zero for negative `t`, the unit for `t = 0`.
    pub fn segre(&self, t: i64) -> ChowClass {
        if t < 0 {
            return ChowClass::zero(self.ctx);
        }
        let t = t as u32;
        if t > self.ctx.dim_b() {
            return ChowClass::zero(self.ctx);
        }
        self.total_segre_up_to(t)[t as usize].clone()
    }

    /// All Segre classes `s_0 .. s_cap` by the graded inversion
    /// `s_t = -sum_{i>=1} c_i s_{t-i}`.
    pub fn total_segre_up_to(&self, cap: u32) -> Vec<ChowClass> {
        let mut s: Vec<ChowClass> = vec![ChowClass::one(self.ctx)];
        for t in 1..=cap {
            let mut acc = ChowClass::zero(self.ctx);
            for i in 1..=t {
                let ci = self.chern(i);
                if ci.is_zero() {
                    continue;
                }
                acc = acc.add(&ci.multiply(&s[(t - i) as usize]));
            }
            s.push(acc.neg());
        }
        s
    }

    /// Full Segre vector up to `dim B`.
    pub fn total_segre(&self) -> Vec<ChowClass> {
        self.total_segre_up_to(self.ctx.dim_b())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowring::{taut_chern, TautBundle};
    use crate::combinat::Partition;
    use crate::rat_from_int;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn dual_involution_and_line_sign() {
        let ctx = ProductCtx::new(2, 2, 1).unwrap();
        let q = taut_chern(ctx, TautBundle::SourceQuot);
        assert_eq!(q.dual().dual(), q);
        let dq = q.dual();
        assert_eq!(
            dq.chern(1),
            ChowClass::term(ctx, p(&[1]), Partition::empty(), rat_from_int(-1))
        );
        let t = BundleClass::trivial(ctx, 3);
        assert_eq!(t.dual(), t);
    }

    #[test]
    fn sum_identities() {
        let ctx = ProductCtx::new(3, 3, 1).unwrap();
        let u = taut_chern(ctx, TautBundle::SourceSub);
        let q = taut_chern(ctx, TautBundle::SourceQuot);
        let e = u.direct_sum(&q);
        assert_eq!(e.rank(), 3);
        assert_eq!(e.total_chern(), &ChowClass::one(ctx));
        let z = BundleClass::trivial(ctx, 0);
        assert_eq!(q.direct_sum(&z), q);
    }

    #[test]
    fn tensor_line_bundles_add_first_chern() {
        let ctx = ProductCtx::new(2, 2, 1).unwrap();
        let l = taut_chern(ctx, TautBundle::SourceQuot); // c1 = (sigma_1, 0)
        let m = taut_chern(ctx, TautBundle::TargetSub); // c1 = -(0, sigma_1)
        let t = l.tensor(&m).unwrap();
        assert_eq!(t.rank(), 1);
        assert_eq!(t.chern(1), l.chern(1).add(&m.chern(1)));
    }

    #[test]
    fn tensor_with_trivial_line_is_identity() {
        let ctx = ProductCtx::new(3, 2, 1).unwrap();
        let q = taut_chern(ctx, TautBundle::SourceQuot);
        let t = q.tensor(&BundleClass::trivial(ctx, 1)).unwrap();
        assert_eq!(t, q);
    }

    #[test]
    fn first_chern_of_tensor_rank_formula() {
        // c1(A⊗B) = rk(B) c1(A) + rk(A) c1(B)
        let ctx = ProductCtx::new(4, 4, 2).unwrap();
        let a = taut_chern(ctx, TautBundle::SourceQuot).dual();
        let b = taut_chern(ctx, TautBundle::TargetSub);
        let t = a.tensor(&b).unwrap();
        let expected = a
            .chern(1)
            .scale(&rat_from_int(b.rank() as i64))
            .add(&b.chern(1).scale(&rat_from_int(a.rank() as i64)));
        assert_eq!(t.chern(1), expected);
        assert_eq!(t.rank(), 4);
    }

    #[test]
    fn segre_edge_cases_and_line_geometric_series() {
        let ctx = ProductCtx::new(2, 2, 1).unwrap();
        let q = taut_chern(ctx, TautBundle::SourceQuot);
        assert!(q.segre(-3).is_zero());
        assert_eq!(q.segre(0), ChowClass::one(ctx));
        // for a line bundle, s_t = (-c1)^t
        let mut pow = ChowClass::one(ctx);
        for t in 1..=ctx.dim_b() as i64 {
            pow = pow.multiply(&q.chern(1).neg());
            assert_eq!(q.segre(t), pow, "t={t}");
        }
    }

    #[test]
    fn segre_inverts_chern() {
        // s(E)·c(E) = 1 for sums/tensors of tautological bundles
        for (n, m, k) in [(2, 2, 1), (3, 2, 1), (4, 3, 2), (3, 3, 2), (4, 4, 2)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            let e = taut_chern(ctx, TautBundle::SourceQuot)
                .dual()
                .tensor(&taut_chern(ctx, TautBundle::TargetSub))
                .unwrap();
            let s = e.total_segre();
            let mut total_s = ChowClass::zero(ctx);
            for cls in &s {
                total_s = total_s.add(cls);
            }
            assert_eq!(total_s.multiply(e.total_chern()), ChowClass::one(ctx));
        }
    }

    #[test]
    fn character_round_trip() {
        for (n, m, k) in [(3, 3, 1), (4, 3, 2), (4, 4, 2)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            for which in [
                TautBundle::SourceSub,
                TautBundle::SourceQuot,
                TautBundle::TargetSub,
                TautBundle::TargetQuot,
            ] {
                let e = taut_chern(ctx, which);
                let ch = e.chern_character();
                let back = BundleClass::from_character(ctx, e.rank(), &ch).unwrap();
                assert_eq!(back, e, "ctx {ctx:?} {which:?}");
            }
        }
    }

    #[test]
    fn character_round_trip_on_random_bundles() {
        use crate::combinat::partitions_in_rect;
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(23);
        for (n, m, k) in [(3u32, 3u32, 1u32), (4, 4, 2), (5, 3, 2)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            let r1 = partitions_in_rect(ctx.rect1().rows, ctx.rect1().cols);
            let r2 = partitions_in_rect(ctx.rect2().rows, ctx.rect2().cols);
            for _ in 0..8 {
                let mut entries = vec![((Partition::empty(), Partition::empty()), rat_from_int(1))];
                for _ in 0..rng.gen_range(1..=8) {
                    let a = r1[rng.gen_range(0..r1.len())].clone();
                    let b = r2[rng.gen_range(0..r2.len())].clone();
                    if a.is_empty() && b.is_empty() {
                        continue;
                    }
                    entries.push(((a, b), rat_from_int(rng.gen_range(-5i64..=5))));
                }
                let total = ChowClass::from_terms(ctx, entries).unwrap();
                let e = BundleClass::new(ctx, rng.gen_range(0..=6), total).unwrap();
                let back =
                    BundleClass::from_character(ctx, e.rank(), &e.chern_character()).unwrap();
                assert_eq!(back, e);
            }
        }
    }

    #[test]
    fn segre_inverts_chern_for_nash_data_across_contexts() {
        // s(E)·c(E) = 1 for the bundles the pipeline actually builds,
        // across every context with N, m <= 6, k <= 3
        for n in 1..=6u32 {
            for m in 1..=6u32 {
                for k in 1..=n.min(m).min(3) {
                    let ctx = ProductCtx::new(n, m, k).unwrap();
                    let e = crate::ged::nash_bundle(&ctx).unwrap();
                    let mut s_total = ChowClass::zero(ctx);
                    for cls in e.total_segre() {
                        s_total = s_total.add(&cls);
                    }
                    assert_eq!(
                        s_total.multiply(e.total_chern()),
                        ChowClass::one(ctx),
                        "ctx ({n},{m},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn tensor_distributes_over_sum() {
        let ctx = ProductCtx::new(4, 3, 2).unwrap();
        let e = taut_chern(ctx, TautBundle::SourceQuot).dual();
        let f = taut_chern(ctx, TautBundle::TargetSub);
        let g = taut_chern(ctx, TautBundle::TargetQuot);
        let lhs = e.tensor(&f.direct_sum(&g)).unwrap();
        let rhs = e.tensor(&f).unwrap().direct_sum(&e.tensor(&g).unwrap());
        assert_eq!(lhs, rhs);
    }
}
