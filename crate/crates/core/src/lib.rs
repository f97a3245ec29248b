//! Exact combinatorics of non-crossing partitions and the free probability of
//! k-divisible and k-symmetric elements.

pub mod error;
pub mod incidence;
pub mod json;
pub mod ksym;
pub mod matmodel;
pub mod ncpart;
pub mod scalar;
pub mod series;
pub mod transforms;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational scalar used throughout the public API.
pub type Rational = num_rational::BigRational;
pub type RationalSequence = incidence::Sequence<Rational>;
pub type RationalPowerSeries = series::PowerSeries<Rational>;
pub type RationalPuiseux = series::PuiseuxSeries<Rational>;
pub type RationalKSymmetric = ksym::KSymmetricDistribution<Rational>;
