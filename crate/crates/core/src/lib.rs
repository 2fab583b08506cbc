//! Finite rings, skew polynomial rings `R[x; alpha]`, the prime radical, and
//! exhaustive checkers for Armendariz-type properties.
//!
//! Rings are small and fully tabulated. Every property check returns a
//! [`Verdict`] whose failures carry a certificate that
//! [`verify_witness`] re-checks from scratch.

pub mod endo;
pub mod error;
pub mod nested;
pub mod properties;
pub mod radical;
pub mod ring;
mod search;
pub mod skewpoly;
pub mod theorems;
pub mod verdict;

pub use endo::{endo_order, enumerate_endos, is_alpha_ideal, AlphaPowers, Endo};
pub use error::{Error, Result};
pub use properties::{
    check_property, check_zero_product_property, verify_witness, CheckOptions, Checker, ModeRequest,
};
pub use radical::{prime_radical, prime_radical_via_primes, IdealSet};
pub use ring::{Elem, FiniteRing, Shape};
pub use skewpoly::{smul, SkewPoly, SkewRing};
pub use verdict::{Outcome, Params, Property, ScanMode, Subject, Target, Twist, Verdict, Witness};
