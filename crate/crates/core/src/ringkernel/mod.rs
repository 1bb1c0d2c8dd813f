//! Exact arithmetic foundation: prime fields, monomials under degrevlex,
//! multivariate polynomials, Gröbner bases and quotient-ring normal forms.

pub mod field;
pub mod monomial;
pub mod poly;
pub mod ring;

pub use field::{FieldElement, PrimeField};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::QuotientRing;
