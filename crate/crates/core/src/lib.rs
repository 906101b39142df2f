//! Exact symbolic machinery for Krichever–Novikov type function and current
//! algebras attached to the family of elliptic curves with two marked points,
//! their degenerations, and the local two-cocycles of their central extensions.
//!
//! All arithmetic is exact over the rationals, with parameters kept symbolic.

#![no_std]

extern crate alloc;

pub mod error;
pub mod parse;
pub mod poly;
pub mod report;
pub mod series;
pub mod function_algebra;
pub mod lie;
pub mod current;
pub mod cocycle;
pub mod central;

pub use error::{ArithError, CentralError, CochainError, CurveError, FamilyError, LieError, SeriesError};
pub use parse::parse_rational;
pub use poly::{int, rat, Bindings, Monomial, MultiPoly, ParamId, Point, Rational};
pub use report::{Report, Witness};
pub use series::{basis_series, wp_series, BasisSeriesCache, CurveParams, LaurentSeries};
