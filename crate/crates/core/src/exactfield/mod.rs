//! Exact arithmetic: Gaussian rationals, polynomials, polynomial-exponential
//! functions and their quotients.

mod denom;
mod lattice;
pub(crate) mod modp;
mod poly;
mod polyexp;
mod ratexp;
mod rational;
mod scalar;

pub use denom::Denom;
pub(crate) use denom::cancel_common;
pub use lattice::{exact_divide, exponent_lattice, ExpLattice};
pub use poly::Poly;
pub use polyexp::{PolyExp, EXP_BOUND};
pub use ratexp::RatExp;
pub use scalar::{GaussianRational, Gq};
