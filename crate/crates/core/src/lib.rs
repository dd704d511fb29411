//! Exact and empirical densities of subsets of holomorphy rings of the
//! rational function field `F_q(x)`.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`gf`] and [`polyring`]: arithmetic in `F_q` and `F_q[x]`.
//! * [`places`]: places of `F_q(x)`, rational functions and valuations.
//! * [`local`]: the residue field `O_P/P` and the truncated ring `O_P/P^2`.
//! * [`holomorphy`]: holomorphy rings `H_S`, divisors supported off `S`, and
//!   Riemann-Roch boxes `L(D)` (genus 0).
//! * [`eisenstein`]: shifted Eisenstein tests and the density of polynomials
//!   defining nicely totally ramified extensions.
//! * [`unimodular`]: rectangular unimodular matrices and their density.
//! * [`zeta`]: zeta functions of `F` and `H` at integer arguments.
//! * [`density`]: the box-counting harness, in exhaustive or sampling mode.
//!
//! Every density, measure and zeta value is an exact [`BigRational`].
#![no_std]

extern crate alloc;

pub mod density;
pub mod eisenstein;
mod error;
pub mod gf;
pub mod holomorphy;
pub mod local;
pub mod places;
pub mod polyring;
pub mod rational;
pub mod unimodular;
pub mod zeta;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use gf::{GaloisField, Gf};
pub use holomorphy::{DivisorOnT, HolomorphySpec, RiemannRochBox};
pub use places::{Place, RationalFunction, RationalFunctionField, Valuation};
pub use polyring::{Poly, PolyRing};
