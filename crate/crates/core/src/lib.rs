//! Generalized polynomial identities of the 2×2 upper triangular matrices
//! UT2, viewed as a UT2-algebra under the regular, D and F actions.
//!
//! The core types are generic over the coefficient field ([`scalar::Scalar`]);
//! the aliases below fix it to exact rationals.

pub mod basis;
pub mod cli;
pub mod eval;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod rep;
pub mod scalar;
pub mod suite;
pub mod walgebra;

pub use scalar::Rational;

pub type Element = walgebra::UTElement<Rational>;
pub type Action = walgebra::WAlgebraAction<Rational>;
pub type Polynomial = poly::GenPolynomial<Rational>;
pub type Operator = walgebra::LinearOperator<Rational>;
pub type Image = eval::MultilinearImage<Rational>;
