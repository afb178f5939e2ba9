//! Condition spaces and the bispectral construction built on them.

pub mod linalg;
mod pipeline;
mod space;

pub use pipeline::{
    ac_basis_up_to_degree, factorize, in_ac, is_point_supported, kbar, lambda_from_parts, lambda_op, lp, q_roots, qpoly, tau,
    wavefunction, AdChain, AdStep, BispectralData, Identity,
};
pub use space::{ConditionSpace, Distribution};
