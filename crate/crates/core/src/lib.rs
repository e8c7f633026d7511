//! Exact arithmetic for cyclotomic root systems of complex reflection groups.
//!
//! The crate is organised in layers:
//!
//! * [`poly`] — integer/rational polynomial arithmetic and cyclotomic polynomials;
//! * [`linalg`] — exact rational linear algebra, Hermite normal forms and lattices;
//! * [`cyclo`] — the field `Q(zeta_N)` with exact coefficients, Galois-stable
//!   subrings of its ring of integers;
//! * [`ideals`] — fractional ideals of those rings in canonical HNF form,
//!   together with the explicit factorizations of ideals generated by
//!   `1 - zeta`;
//! * [`refgroups`] — matrix reflection groups (imprimitive series, cyclic
//!   groups, the exceptional groups from the embedded data tables);
//! * [`roots`] — roots as (ideal, vector) pairs, root systems, lattices,
//!   Cartan matrices and connection indices;
//! * [`classify`] — genus enumeration of root systems;
//! * [`badnum`] — symbol arithmetic and bad prime ideals;
//! * [`realgeom`] — simple systems, Coxeter verification and highest
//!   half-lines for real reflection groups;
//! * [`verify`] — the batch verification suites exposed by the CLI.

pub mod badnum;
pub mod classify;
pub mod cyclo;
pub mod cycmat;
pub mod error;
pub mod exceptional;
pub mod ideals;
pub mod linalg;
pub mod poly;
pub mod realgeom;
pub mod realsign;
pub mod refgroups;
pub mod roots;
pub mod verify;

pub use error::Error;

/// Shorthand used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
