//! Torsion invariants of homology cylinders.
//!
//! Elements of the group ring `Z[H]` of a surface's first homology are
//! [`LaurentPolynomial`]s; torsions live in its fraction field as
//! [`LaurentFraction`]s. On top of exact arithmetic and irreducible
//! factorization the crate provides the `Aut*(H)` action and its invariants,
//! the exponent homomorphisms `Ψ` and `Θ`, the norm-subgroup test, Mahler
//! measure, Fox calculus, and the semidirect-product cylinder algebra.

pub mod autstar;
pub mod cylinder;
pub mod descriptor;
pub mod equivalence;
pub mod error;
pub mod factor;
pub mod fox;
pub mod fraction;
pub mod homs;
pub mod invariants;
pub mod lattice;
pub mod laurent;
pub mod mahler;
pub(crate) mod poly;
pub mod registry;
pub mod syntax;

pub use autstar::AutStarElement;
pub use cylinder::TorsionClass;
pub use error::{Error, Result};
pub use factor::Factorization;
pub use fraction::LaurentFraction;
pub use lattice::{ExponentVector, IntMatrix, LatticeMap, SurfaceSignature};
pub use laurent::{LaurentPolynomial, Unit, UnitClass};
pub use syntax::{parse_polynomial, print_polynomial};
