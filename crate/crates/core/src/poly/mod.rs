//! Exact arithmetic: ℚ(i) scalars, univariate polynomials and rational
//! functions, affine maps, and polynomials over ℚ(i)(z) with resultants.

mod affine;
mod bivariate;
mod gaussian;
mod ratfun;
mod roots;
mod serial;
mod univariate;

pub use affine::AffineMap;
pub use bivariate::{resultant_in_w, resultant_over_z, BiPoly, WPoly};
pub(crate) use bivariate::sylvester_resultant;
pub use gaussian::{parse_rational, GaussianRational, Rational};
pub use ratfun::RatFun;
pub use roots::gaussian_roots;
pub use univariate::Poly;
