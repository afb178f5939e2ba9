//! Random condition spaces for randomized checks.

use rand::Rng;
use tbisp_core::bispectral_core::{qpoly, tau, ConditionSpace, Distribution};
use tbisp_core::exactfield::Gq;

/// Largest `deg q_C` admitted, keeping exact arithmetic at desk scale.
pub const MAX_Q_DEGREE: usize = 6;

fn pick<R: Rng>(rng: &mut R, pool: &[Gq]) -> Gq {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// A space of dimension at most 3 with support points in `{0, ±1, ±2, i}`,
/// orders at most 2 and coefficients in `{±1, ±2, ±i}`; `None` for dependent
/// or degenerate draws and for `deg q_C > MAX_Q_DEGREE`.
pub fn random_space<R: Rng>(rng: &mut R) -> Option<ConditionSpace> {
    let points = [Gq::zero(), Gq::one(), Gq::from_int(-1), Gq::from_int(2), Gq::from_int(-2), Gq::i()];
    let coeffs = [Gq::one(), Gq::from_int(-1), Gq::from_int(2), Gq::from_int(-2), Gq::i(), -Gq::i()];
    let dim = rng.gen_range(1..=3);
    let gens = (0..dim)
        .map(|_| {
            let terms = rng.gen_range(1..=2);
            Distribution::from_terms(
                (0..terms).map(|_| (pick(rng, &points), rng.gen_range(0..=2u32), pick(rng, &coeffs))).collect::<Vec<_>>(),
            )
        })
        .collect();
    let c = ConditionSpace::new(gens).ok()?;
    tau(&c).ok()?;
    (qpoly(&c).degree()? <= MAX_Q_DEGREE).then_some(c)
}

/// `count` accepted spaces from repeated draws.
pub fn random_spaces<R: Rng>(rng: &mut R, count: usize) -> Vec<ConditionSpace> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Some(c) = random_space(rng) {
            out.push(c);
        }
    }
    out
}
