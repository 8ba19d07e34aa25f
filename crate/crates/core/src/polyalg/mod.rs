//! Exact coefficient fields, monomials and monomial orders, sparse
//! multivariate polynomials and ring maps.

mod field;
mod monomial;
mod poly;
mod ring;
mod ringmap;
pub mod text;

pub use field::{is_prime, CoefficientField, Field, PrimeField, Rationals};
pub use monomial::{compare_monomials, Monomial, MonomialOrder, MAX_VARS};
pub(crate) use poly::add_scaled;
pub use poly::{poly_arith, ArithOp, Polynomial, Term};
pub use ring::PolyRing;
pub use ringmap::{apply_map, RingMap};
