//! Coefficient domains: the cyclotomic field and the Laurent rings over it.

pub mod cyclo;
pub mod laurent;

pub use cyclo::{fmt_rational, rat, CycloField, CycloScalar, Rational, DEFAULT_CONDUCTOR};
pub use laurent::{binomial, binomial_int, format_sum, Exponent, LaurentElt};
