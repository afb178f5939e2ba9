//! Translational-differential operators in the spectral variable `z` and the
//! anti-isomorphism `b` from operators in `x`.

mod ratfun;
mod tdiff;
mod zden;

pub use ratfun::RatFunZ;
pub use tdiff::{b_map, TransDiffOpZ};
pub use zden::ZDen;
