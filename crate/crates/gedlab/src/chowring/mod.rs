//! The truncated Chow ring of `B = Gr_{N-k}(C^N) x Gr_k(C^m)` in the
//! Kunneth-Schubert basis: sparse classes keyed by pairs of partitions,
//! multiplication through Littlewood-Richardson expansion with rectangle
//! truncation, integration as the top-cell coefficient, tautological Chern
//! classes, and the single-factor stabilization pullback.

mod class;
mod ctx;
mod factor;
mod taut;

pub use class::ChowClass;
pub use ctx::{ProductCtx, Rect};
pub use factor::{stabilize_pullback, FactorClass, GrassCtx};
pub use taut::{taut_chern, TautBundle};
