#![no_std]
extern crate alloc;

pub mod error;
pub mod exactfield;
pub mod opalgebra_x;
pub mod opalgebra_z;
pub mod waveform;
pub mod bispectral_core;
pub mod text;

pub use error::{Error, Result};
