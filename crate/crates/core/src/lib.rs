//! Exact algebra for small finitely presented Kleinian-type groups.
//!
//! The crate covers the arithmetic side of the toolkit: Smith normal form
//! over the integers, sparse multivariate polynomials over the rationals with
//! resultants and univariate factorization, real root isolation, quadratic
//! splitting over number fields, and the symbolic SL(2) representation
//! computations built on top of them.
//!
//! The ring-level types are generic over their scalar (`MultiPoly<C>`,
//! `UniPoly<C>`, `Mat2<E>`, `IntMatrix<T>`); the aliases below name the
//! instantiations the algorithms are written for.

pub mod charvar;
pub mod exact;
pub mod factor;
pub mod numfield;
pub mod poly;
pub mod repvar;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod word;

mod modp;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use poly::{MultiPoly, RationalFunction, UniPoly};
pub use word::GroupWord;

/// Arbitrary-precision integer.
pub type Integer = BigInt;
/// Reduced fraction of arbitrary-precision integers.
pub type Rational = BigRational;
/// Integer matrix used for relation matrices.
pub type ZMatrix = exact::IntMatrix<BigInt>;
/// Multivariate polynomial over the rationals.
pub type QPoly = MultiPoly<BigRational>;
/// Multivariate polynomial over the integers.
pub type ZPoly = MultiPoly<BigInt>;
/// Univariate polynomial over the rationals.
pub type QUniPoly = UniPoly<BigRational>;
/// 2x2 matrix over Q(x, y, ...).
pub type QMat2 = repvar::Mat2<RationalFunction>;
