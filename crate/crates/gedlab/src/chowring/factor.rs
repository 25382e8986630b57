use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chowring::Rect;
use crate::combinat::{schur_expand, Partition};
use crate::{GedError, Rat};

/// A single Grassmannian `Gr_{sub_rank}(C^dim)`. Schubert classes live in
/// the `sub_rank x (dim - sub_rank)` rectangle and the quotient bundle has
/// rank `dim - sub_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassCtx {
    pub dim: u32,
    pub sub_rank: u32,
}

impl GrassCtx {
    pub fn new(dim: u32, sub_rank: u32) -> Result<Self, GedError> {
        if sub_rank > dim {
            return Err(GedError::invalid(format!(
                "sub_rank {sub_rank} exceeds ambient dimension {dim}"
            )));
        }
        Ok(GrassCtx { dim, sub_rank })
    }

    pub fn quot_rank(&self) -> u32 {
        self.dim - self.sub_rank
    }

    pub fn rect(&self) -> Rect {
        Rect {
            rows: self.sub_rank,
            cols: self.quot_rank(),
        }
    }
}

/// Sparse class on a single Grassmannian factor in the Schubert basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorClass {
    ctx: GrassCtx,
    terms: BTreeMap<Partition, Rat>,
}

impl FactorClass {
    pub fn zero(ctx: GrassCtx) -> Self {
        FactorClass {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        ctx: GrassCtx,
        entries: impl IntoIterator<Item = (Partition, Rat)>,
    ) -> Result<Self, GedError> {
        let rect = ctx.rect();
        let mut terms = BTreeMap::new();
        for (p, c) in entries {
            if !rect.contains(&p) {
                return Err(GedError::invalid(format!(
                    "partition {p} does not fit the {}x{} rectangle",
                    rect.rows, rect.cols
                )));
            }
            if c.is_zero() {
                continue;
            }
            let slot = terms.entry(p).or_insert_with(Rat::zero);
            *slot += c;
        }
        terms.retain(|_, c: &mut Rat| !c.is_zero());
        Ok(FactorClass { ctx, terms })
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn multiply(&self, other: &FactorClass) -> FactorClass {
        assert_eq!(self.ctx, other.ctx, "context mismatch");
        let rect = self.ctx.rect();
        let mut terms: BTreeMap<Partition, Rat> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                for (nu, m) in schur_expand(a, b).iter() {
                    if !rect.contains(nu) {
                        continue;
                    }
                    let slot = terms.entry(nu.clone()).or_insert_with(Rat::zero);
                    *slot += ca * cb * Rat::from_integer((*m).into());
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        FactorClass {
            ctx: self.ctx,
            terms,
        }
    }
}

/// Pullback along the stabilization embedding
/// `Gr_{N-k}(C^N) -> Gr_{N'-k}(C^{N'})`, `U |-> U ⊕ C^{N'-N}` (same quotient
/// rank `k` on both sides): `sigma_lam` maps to `sigma_lam` when `lam` fits
/// the destination rectangle and to zero otherwise, extended linearly.
pub fn stabilize_pullback(
    src: GrassCtx,
    dst: GrassCtx,
    cls: &FactorClass,
) -> Result<FactorClass, GedError> {
    if src.quot_rank() != dst.quot_rank() {
        return Err(GedError::invalid(format!(
            "quotient ranks differ: {} vs {}",
            src.quot_rank(),
            dst.quot_rank()
        )));
    }
    if src.dim < dst.dim {
        return Err(GedError::invalid(
            "stabilization goes from the larger Grassmannian to the smaller",
        ));
    }
    if cls.ctx() != src {
        return Err(GedError::invalid("class does not live on the source"));
    }
    let rect = dst.rect();
    let terms = cls
        .terms
        .iter()
        .filter(|(p, _)| rect.contains(p))
        .map(|(p, c)| (p.clone(), c.clone()));
    FactorClass::from_terms(dst, terms)
}
