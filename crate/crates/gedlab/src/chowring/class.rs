use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::chowring::ProductCtx;
use crate::combinat::{schur_expand, Partition};
use crate::{GedError, Rat};

pub type PairKey = (Partition, Partition);

/// Sparse element of the Chow ring of the product of two Grassmannians in
/// the Kunneth-Schubert basis. Keys always fit the context rectangles and
/// stored coefficients are never zero; classes are immutable values.
#[derive(Clone, PartialEq)]
pub struct ChowClass {
    ctx: ProductCtx,
    terms: BTreeMap<PairKey, Rat>,
}

impl ChowClass {
    pub fn zero(ctx: ProductCtx) -> Self {
        ChowClass {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: ProductCtx) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            (Partition::empty(), Partition::empty()),
            Rat::from_integer(1.into()),
        );
        ChowClass { ctx, terms }
    }

    /// Builds a class from explicit terms, rejecting keys outside the
    /// rectangles and dropping zero coefficients.
    pub fn from_terms(
        ctx: ProductCtx,
        entries: impl IntoIterator<Item = (PairKey, Rat)>,
    ) -> Result<Self, GedError> {
        let mut terms = BTreeMap::new();
        for (key, coeff) in entries {
            if !ctx.key_fits(&key) {
                return Err(GedError::invalid(format!(
                    "Schubert key ({}, {}) does not fit the context rectangles",
                    key.0, key.1
                )));
            }
            if coeff.is_zero() {
                continue;
            }
            let slot = terms.entry(key).or_insert_with(Rat::zero);
            *slot += coeff;
        }
        terms.retain(|_, c: &mut Rat| !c.is_zero());
        Ok(ChowClass { ctx, terms })
    }

    /// Single term constructor, mostly for tests and tautological classes.
    pub fn term(ctx: ProductCtx, first: Partition, second: Partition, coeff: Rat) -> Self {
        ChowClass::from_terms(ctx, [((first, second), coeff)]).expect("term must fit rectangles")
    }

    pub fn ctx(&self) -> ProductCtx {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<PairKey, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &PairKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn grade_of(key: &PairKey) -> u32 {
        (key.0.weight() + key.1.weight()) as u32
    }

    /// Largest grade with a nonzero term (0 for the zero class).
    pub fn max_grade(&self) -> u32 {
        self.terms.keys().map(Self::grade_of).max().unwrap_or(0)
    }

    /// The grade-`g` homogeneous component.
    pub fn graded_component(&self, g: u32) -> ChowClass {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| Self::grade_of(k) == g)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        ChowClass {
            ctx: self.ctx,
            terms,
        }
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let slot = terms.entry(k.clone()).or_insert_with(Rat::zero);
            *slot += c;
        }
        terms.retain(|_, c| !c.is_zero());
        ChowClass {
            ctx: self.ctx,
            terms,
        }
    }

    pub fn neg(&self) -> ChowClass {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), -c.clone()))
            .collect();
        ChowClass {
            ctx: self.ctx,
            terms,
        }
    }

    pub fn sub(&self, other: &ChowClass) -> ChowClass {
        self.add(&other.neg())
    }

    pub fn scale(&self, factor: &Rat) -> ChowClass {
        if factor.is_zero() {
            return ChowClass::zero(self.ctx);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c * factor))
            .collect();
        ChowClass {
            ctx: self.ctx,
            terms,
        }
    }

    /// Kunneth-factorwise product through LR expansion. Keys exceeding either
    /// rectangle vanish in the truncated ring and are dropped.
    pub fn multiply(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let ctx = self.ctx;
        let rect1 = ctx.rect1();
        let rect2 = ctx.rect2();
        let dim_b = ctx.dim_b();
        let mut terms: BTreeMap<PairKey, Rat> = BTreeMap::new();
        for ((l1, m1), c1) in &self.terms {
            let g1 = (l1.weight() + m1.weight()) as u32;
            for ((l2, m2), c2) in &other.terms {
                let g2 = (l2.weight() + m2.weight()) as u32;
                if g1 + g2 > dim_b {
                    continue;
                }
                let e1 = schur_expand(l1, l2);
                let e2 = schur_expand(m1, m2);
                let c12 = c1 * c2;
                for (n1, a1) in e1.iter() {
                    if !rect1.contains(n1) {
                        continue;
                    }
                    for (n2, a2) in e2.iter() {
                        if !rect2.contains(n2) {
                            continue;
                        }
                        let coeff = &c12 * Rat::from_integer((a1 * a2).into());
                        let slot = terms
                            .entry((n1.clone(), n2.clone()))
                            .or_insert_with(Rat::zero);
                        *slot += coeff;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        ChowClass { ctx, terms }
    }

    /// Coefficient of the point class (full rectangle in both factors).
    pub fn integrate(&self) -> Rat {
        self.coeff(&self.ctx.top_key())
    }

    /// Poincare pairing `∫ self · other` without forming the product:
    /// pairs each key against its complement.
    pub fn pair_integral(&self, other: &ChowClass) -> Rat {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let mut acc = Rat::zero();
        for (key, c) in &self.terms {
            if let Some(dual) = self.ctx.complement_key(key) {
                let oc = other.terms.get(&dual);
                if let Some(oc) = oc {
                    acc += c * oc;
                }
            }
        }
        acc
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*({},{})", c, a, b)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partitions_in_rect;
    use crate::rat_from_int;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn sigma(ctx: ProductCtx, first: &[u32], second: &[u32]) -> ChowClass {
        ChowClass::term(ctx, p(first), p(second), rat_from_int(1))
    }

    fn random_class(ctx: ProductCtx, rng: &mut StdRng, max_terms: usize) -> ChowClass {
        let r1 = partitions_in_rect(ctx.rect1().rows, ctx.rect1().cols);
        let r2 = partitions_in_rect(ctx.rect2().rows, ctx.rect2().cols);
        let mut entries = Vec::new();
        for _ in 0..rng.gen_range(1..=max_terms) {
            let a = r1[rng.gen_range(0..r1.len())].clone();
            let b = r2[rng.gen_range(0..r2.len())].clone();
            entries.push(((a, b), rat_from_int(rng.gen_range(-4i64..=4))));
        }
        ChowClass::from_terms(ctx, entries).unwrap()
    }

    #[test]
    fn multiply_spec_examples() {
        // (4,4,2): sigma_1^2 = sigma_2 + sigma_11 on the first factor
        let ctx = ProductCtx::new(4, 4, 2).unwrap();
        let s1 = sigma(ctx, &[1], &[]);
        let expected = sigma(ctx, &[2], &[]).add(&sigma(ctx, &[1, 1], &[]));
        assert_eq!(s1.multiply(&s1), expected);

        // unit is the identity
        let a = sigma(ctx, &[2, 1], &[1]).scale(&rat_from_int(3));
        assert_eq!(ChowClass::one(ctx).multiply(&a), a);

        // (3,2,1): first rectangle is 2x1, the sigma_2 term dies
        let ctx = ProductCtx::new(3, 2, 1).unwrap();
        let s1 = sigma(ctx, &[1], &[]);
        assert_eq!(s1.multiply(&s1), sigma(ctx, &[1, 1], &[]));
    }

    #[test]
    fn integrate_spec_examples() {
        let ctx = ProductCtx::new(2, 2, 1).unwrap();
        assert_eq!(sigma(ctx, &[1], &[1]).integrate(), rat_from_int(1));
        assert_eq!(sigma(ctx, &[1], &[]).integrate(), rat_from_int(0));
        let ctx = ProductCtx::new(4, 4, 2).unwrap();
        assert_eq!(sigma(ctx, &[2, 2], &[2, 2]).integrate(), rat_from_int(1));
    }

    #[test]
    fn poincare_duality() {
        for (n, m, k) in [(3u32, 3u32, 1u32), (4, 3, 2), (5, 4, 2)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            let rect1 = ctx.rect1();
            let full2 = ctx.rect2().full();
            let all1 = partitions_in_rect(rect1.rows, rect1.cols);
            for lam in &all1 {
                let lam_c = rect1.complement(lam).unwrap();
                let left = ChowClass::term(ctx, lam.clone(), full2.clone(), rat_from_int(1));
                for mu in &all1 {
                    if mu.weight() != lam_c.weight() {
                        continue;
                    }
                    let right =
                        ChowClass::term(ctx, mu.clone(), Partition::empty(), rat_from_int(1));
                    let want = if *mu == lam_c { 1 } else { 0 };
                    assert_eq!(
                        left.multiply(&right).integrate(),
                        rat_from_int(want),
                        "ctx ({n},{m},{k}), lam {lam}, mu {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_shortcut_matches_multiplication() {
        let ctx = ProductCtx::new(4, 3, 2).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_class(ctx, &mut rng, 6);
            let b = random_class(ctx, &mut rng, 6);
            assert_eq!(a.pair_integral(&b), a.multiply(&b).integrate());
        }
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = StdRng::seed_from_u64(7);
        for (n, m, k) in [(3u32, 3u32, 1u32), (4, 3, 2), (4, 4, 2)] {
            let ctx = ProductCtx::new(n, m, k).unwrap();
            for _ in 0..12 {
                let a = random_class(ctx, &mut rng, 5);
                let b = random_class(ctx, &mut rng, 5);
                let c = random_class(ctx, &mut rng, 5);
                assert_eq!(a.multiply(&b), b.multiply(&a), "commutativity");
                assert_eq!(
                    a.multiply(&b).multiply(&c),
                    a.multiply(&b.multiply(&c)),
                    "associativity"
                );
                // distributivity comes along for free
                assert_eq!(
                    a.multiply(&b.add(&c)),
                    a.multiply(&b).add(&a.multiply(&c)),
                    "distributivity"
                );
            }
        }
    }
}
