//! Exact computational commutative algebra in prime characteristic.
//!
//! The crate is organized around a small stack of engines:
//!
//! * [`field`] — arithmetic in the prime field `F_p`;
//! * [`poly`] — sparse multivariate polynomials over `F_p`, monomial
//!   orders, and the iterated Frobenius power map;
//! * [`parse`] — a text grammar for polynomials and ring descriptions;
//! * [`groebner`] — a Buchberger engine with normal forms, ideal
//!   membership, colon, intersection, elimination, and subalgebra
//!   membership;
//! * [`charp`] — bracket powers, Frobenius roots, Frobenius/tight
//!   closure membership as bounded semi-decisions, the Fedder purity
//!   test, and the colon/bracket flatness identity;
//! * [`semigroup`] — affine semigroup combinatorics: lattice group,
//!   cone, saturation, faces and retracts, and the F-coherence
//!   classifier;
//! * [`onedim`] — one-dimensional classification for numerical
//!   semigroup rings and parametrized curve algebras.

pub mod charp;
pub mod error;
pub mod field;
pub mod groebner;
pub mod onedim;
pub mod parse;
pub mod poly;
pub mod semigroup;

pub use error::Error;
pub use field::PrimeChar;
pub use groebner::{GbLimits, Ideal, QuotientRing};
pub use poly::{MonomialOrder, Polynomial, Ring};

/// Crate version reported in CLI and JSON output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
