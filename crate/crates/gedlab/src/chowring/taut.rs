use crate::bundle::BundleClass;
use crate::chowring::{ChowClass, ProductCtx};
use crate::combinat::Partition;
use crate::{rat_from_int, Rat};

/// The four tautological bundles on `B = Gr_{N-k}(V) x Gr_k(W)`.
///
/// On the first factor the sub is the kernel plane `U_S` (rank `N-k`) and the
/// quotient `Q_S` has rank `k`; on the second the sub is the image plane
/// `U_k` (rank `k`) and the quotient `Q_k = Q_W` has rank `m-k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TautBundle {
    /// `U_S`, tautological sub on `Gr_{N-k}(V)`
    SourceSub,
    /// `Q_S`, tautological quotient on `Gr_{N-k}(V)`
    SourceQuot,
    /// `U_k`, tautological sub on `Gr_k(W)`
    TargetSub,
    /// `Q_k`, tautological quotient on `Gr_k(W)`
    TargetQuot,
}

/// Rank and total Chern class of a tautological bundle:
/// `c(Q) = sum_i sigma_(i)` on its factor, and `c(U) = sum_i (-1)^i
/// sigma_(1^i)`, the inverse of `c(Q)` by the Whitney formula for the
/// tautological sequence.
pub fn taut_chern(ctx: ProductCtx, which: TautBundle) -> BundleClass {
    let one = Rat::from_integer(1.into());
    let mut terms: Vec<((Partition, Partition), Rat)> =
        vec![((Partition::empty(), Partition::empty()), one)];
    let (rank, first_factor) = match which {
        TautBundle::SourceSub => (ctx.n - ctx.k, true),
        TautBundle::SourceQuot => (ctx.k, true),
        TautBundle::TargetSub => (ctx.k, false),
        TautBundle::TargetQuot => (ctx.m - ctx.k, false),
    };
    let rect = if first_factor {
        ctx.rect1()
    } else {
        ctx.rect2()
    };
    let is_sub = matches!(which, TautBundle::SourceSub | TautBundle::TargetSub);
    // on a point factor (rows or cols 0) every positive-degree class dies
    let limit = if rect.rows == 0 || rect.cols == 0 {
        0
    } else if is_sub {
        rect.rows
    } else {
        rect.cols
    };
    for i in 1..=limit {
        let part = if is_sub {
            Partition::column(i)
        } else {
            Partition::row(i)
        };
        let key = if first_factor {
            (part, Partition::empty())
        } else {
            (Partition::empty(), part)
        };
        let sign = if is_sub && i % 2 == 1 { -1 } else { 1 };
        terms.push((key, rat_from_int(sign)));
    }
    BundleClass::new(
        ctx,
        rank,
        ChowClass::from_terms(ctx, terms).expect("tautological classes fit by construction"),
    )
    .expect("unit in grade 0 by construction")
}
