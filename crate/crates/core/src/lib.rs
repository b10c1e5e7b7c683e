//! Exact commutative algebra for Rees algebras of graded modules.

pub mod asymptotics;
pub mod error;
pub mod groebner;
pub mod modops;
pub mod polyring;
pub mod rees;

pub use asymptotics::{Asymptotics, CheckerVerdict, DepthSequence, Verdict, WindowOptions};
pub use error::{Error, Result};
pub use groebner::{eliminate, syzygies, GroebnerBasis};
pub use modops::{ExtendedNat, GradedQuotient, Submodule};
pub use polyring::{
    parse_polynomial, Field, FreeModule, ModuleElement, ModuleOrder, ModuleRef, Monomial,
    MonomialOrder, Polynomial, PrimeField, Rationals, Ring, RingRef, Term,
};
pub use rees::{ReesContext, ReesPower};
