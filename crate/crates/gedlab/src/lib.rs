//! Exact-arithmetic engine for the generic Euclidean distance degree (gED)
//! and Chern-Mather degree vector of determinantal varieties, the varieties
//! that arise as neurovarieties of shallow polynomial neural layers.
//!
//! Everything is computed twice, through two independent evaluation paths:
//!
//! * [`ged`] integrates Chern and Segre classes of the Nash bundle in the
//!   Schubert basis of the Chow ring of a product of two Grassmannians
//!   ([`chowring`], [`bundle`]);
//! * [`localization`] evaluates the same intersection numbers by torus
//!   fixed-point localization with integer weight specializations.
//!
//! The two paths share no arithmetic beyond big-integer primitives, so exact
//! agreement is a strong correctness certificate. On top of the engine,
//! [`stability`] fits the computed gED tables to bivariate polynomials with
//! exact rational linear algebra and tabulates monomial-reduction evidence.
//!
//! All coefficients are exact: `BigInt` / `BigRational` throughout, no
//! floating point anywhere.

pub mod bundle;
pub mod chowring;
pub mod combinat;
pub mod error;
pub mod ged;
pub mod linalg;
pub mod localization;
pub mod stability;

pub use error::GedError;

/// Exact integer used across the crate.
pub type Int = num_bigint::BigInt;
/// Exact rational used across the crate.
pub type Rat = num_rational::BigRational;

pub(crate) fn rat_from_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Converts an exact rational known to be integral, or reports the
/// inconsistency. Used wherever the theory demands an integer.
pub(crate) fn rat_to_int(r: &Rat, what: &str) -> Result<Int, GedError> {
    if num_traits::One::is_one(r.denom()) {
        Ok(r.numer().clone())
    } else {
        Err(GedError::NonIntegerValue {
            what: what.to_string(),
            value: r.to_string(),
        })
    }
}
