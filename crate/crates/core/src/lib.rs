//! Exact computer algebra for the rank-3 quadratic equations of Veronese
//! embeddings.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: sparse multivariate polynomials over the rationals, monomial
//!   orders, binary-form gcd and square parts, an infix parser and a JSON
//!   codec.
//! - [`linalg`]: dense exact rational matrices (echelon forms, rank, solving).
//! - [`plucker`]: Plücker relations, the basis of degree-two Plücker
//!   monomials, the `D`-term basis of bidegree (2,2) sections and the
//!   witness terms used by the nondegeneracy argument.
//! - [`qmap`]: the `Q_ℓ` maps, quadratic forms on `P^r`, the binomial
//!   generators of the rational normal curve and the α/β coefficient tables.
//! - [`structure`]: rank checks and certificate generators (nondegeneracy,
//!   minimality, fibers, singular-locus bounds).
//! - [`groebner`]: a Buchberger engine with elimination, membership,
//!   radical membership and Hilbert polynomials.
//! - [`replay`]: the worked `d = 4` and `d = 5` examples end to end.

pub mod error;
pub mod groebner;
pub mod json;
pub mod linalg;
pub mod plucker;
pub mod poly;
pub mod qmap;
pub mod replay;
pub mod structure;

pub use error::{Error, Result};
pub use poly::{ExponentVector, MonomialOrder, MultiPoly, Rational, Roster};
