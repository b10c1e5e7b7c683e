//! Exact coefficient fields, monomials, sparse polynomials and elements of
//! graded free modules.

pub mod field;
pub mod module;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use module::{FreeModule, ModuleElement, ModuleOrder, ModuleRef, Term};
pub use monomial::Monomial;
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{MonomialOrder, Ring, RingRef, DEFAULT_MAX_DEGREE};
