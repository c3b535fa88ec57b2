//! Dense exact linear algebra over arbitrary-precision integers and
//! rationals.

mod charpoly;
mod det;
mod matrix;
mod modp;
mod rational;
mod snf;

pub(crate) use charpoly::char_poly_i64;
pub use charpoly::{char_poly, poly_equal, IntPolynomial};
pub use det::det_bareiss;
pub use matrix::{mat_mul, IntMatrix};
pub use modp::rank_mod_p;
pub use rational::{rat_inverse, RatMatrix};
pub use snf::{smith_normal_form, SnfDecomposition};
