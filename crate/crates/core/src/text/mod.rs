//! Text and LaTeX forms.

mod parse;
mod render;

pub use parse::{
    parse_diffop, parse_polyexp, parse_ratexp, parse_ratfunz, parse_scalar, parse_tdiff, parse_waveform, parse_zpoly,
};
pub use render::{Render, Style, ZPoly};

#[cfg(test)]
mod tests;
