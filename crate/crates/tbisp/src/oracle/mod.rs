//! Floating-point cross-checks of exact identities at random points.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use tbisp_core::exactfield::{Denom, Poly, PolyExp, RatExp};
use tbisp_core::opalgebra_x::DiffOpX;
use tbisp_core::opalgebra_z::{RatFunZ, TransDiffOpZ, ZDen};
use tbisp_core::waveform::WaveForm;

mod hp;
use hp::Hc;

/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Smallest accepted modulus of a denominator factor at a sample point,
/// relative to the sum of the moduli of its terms (for factors in `x`) or
/// as a distance to a root (for factors in `z`).
pub const POLE_MARGIN: f64 = 0.1;

const MAX_ATTEMPTS_PER_SAMPLE: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub id: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
    pub seed: u64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("{id}: no pole-free sample found after {attempts} attempts")]
    NoSample { id: String, attempts: usize },
}

/// A point with `0.5 ≤ |w| ≤ 1.5` and uniform argument.
fn sample(rng: &mut ChaCha8Rng) -> Complex64 {
    let r = rng.gen_range(0.5..=1.5);
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

/// `∑ |pₖ(x)|·|e^{λx}|`-style magnitude of the terms of `f` at `x`.
fn term_magnitude(f: &PolyExp, x: Complex64) -> f64 {
    f.terms()
        .map(|(l, p)| {
            let poly: f64 = p.coeffs().iter().enumerate().map(|(k, c)| c.to_complex().norm() * x.norm().powi(k as i32)).sum();
            poly * (l.to_complex() * x).exp().norm()
        })
        .sum()
}

fn x_clear(d: &Denom, x: Complex64) -> bool {
    d.factors().all(|(f, _)| f.eval(x).is_ok_and(|v| v.norm() >= POLE_MARGIN * term_magnitude(f, x)))
}

fn z_clear(d: &ZDen, z: Complex64) -> bool {
    let rest = d.rest();
    let rest_mag: f64 = rest.coeffs().iter().enumerate().map(|(k, c)| c.to_complex().norm() * z.norm().powi(k as i32)).sum();
    d.roots().all(|(a, _)| (z - a.to_complex()).norm() >= POLE_MARGIN)
        && rest.eval_complex(z).norm() >= POLE_MARGIN * rest_mag
}

fn clear_of_poles(w: &WaveForm, x: Complex64, z: Complex64) -> bool {
    x_clear(w.xden(), x) && z_clear(w.zden(), z)
}

/// Compares `lhs` and `rhs` at `samples` random pole-free points with
/// residual `|l − r| / (1 + max(|l|, |r|))`.
pub fn check_identity(
    id: &str,
    lhs: &WaveForm,
    rhs: &WaveForm,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    let mut attempts = 0;
    let mut taken = 0;
    while taken < samples {
        if attempts >= MAX_ATTEMPTS_PER_SAMPLE * samples.max(1) {
            return Err(OracleError::NoSample { id: id.to_string(), attempts });
        }
        attempts += 1;
        let (x, z) = (sample(&mut rng), sample(&mut rng));
        let (Some(l), Some(r)) = (form_value(lhs, x, z), form_value(rhs, x, z)) else { continue };
        max_residual = max_residual.max(residual(&l, &r));
        taken += 1;
    }
    Ok(OracleReport { id: id.to_string(), samples, max_residual, tol, pass: max_residual < tol, seed })
}

/// One side of an identity, evaluated numerically without the exact
/// application code: operators act through their coefficients on Taylor
/// expansions of the closed form at the sample point.
#[derive(Clone, Copy, Debug)]
pub enum Side<'a> {
    Form(&'a WaveForm),
    /// `L[W]` for an operator in `x`.
    ApplyX(&'a DiffOpX, &'a WaveForm),
    /// `T[W]` for an operator in `z` with shifts.
    ApplyZ(&'a TransDiffOpZ, &'a WaveForm),
}

/// Truncated Taylor series `∑ sⱼ hʲ`.
#[derive(Clone, Debug)]
struct Series(Vec<Hc>);

impl Series {
    fn constant(c: Hc, n: usize) -> Series {
        let mut v = vec![Hc::zero(); n];
        v[0] = c;
        Series(v)
    }

    fn add(&self, o: &Series) -> Series {
        Series(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    fn mul(&self, o: &Series) -> Series {
        let n = self.0.len();
        let mut v = vec![Hc::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().take(n - i).enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Series(v)
    }

    fn div(&self, o: &Series) -> Option<Series> {
        let n = self.0.len();
        let mut q: Vec<Hc> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.0[k].clone();
            for j in 1..=k {
                acc = acc.sub(&o.0[j].mul(&q[k - j]));
            }
            q.push(acc.div(&o.0[0])?);
        }
        Some(Series(q))
    }

    /// `e^{r(a + h)}`.
    fn exp_linear(r: &Hc, a: &Hc, n: usize) -> Series {
        let mut v = Vec::with_capacity(n);
        let mut term = r.mul(a).exp();
        for j in 0..n {
            let next = term.mul(r).div(&Hc::from_f64((j + 1) as f64)).unwrap_or_else(Hc::zero);
            v.push(term);
            term = next;
        }
        Series(v)
    }

    /// `∑ cₖ (a + h)ᵏ` from ascending coefficients.
    fn poly(coeffs: &[Hc], a: &Hc, n: usize) -> Series {
        let mut acc = Series::constant(Hc::zero(), n);
        let mut lin = Series::constant(a.clone(), n);
        if n > 1 {
            lin.0[1] = Hc::from_f64(1.0);
        }
        for c in coeffs.iter().rev() {
            acc = acc.mul(&lin);
            acc.0[0] = acc.0[0].add(c);
        }
        acc
    }

    fn gq_poly(p: &Poly, a: &Hc, n: usize) -> Series {
        let cs: Vec<Hc> = p.coeffs().iter().map(Hc::from_gq).collect();
        Series::poly(&cs, a, n)
    }

    fn polyexp(f: &PolyExp, a: &Hc, n: usize) -> Series {
        let mut acc = Series::constant(Hc::zero(), n);
        for (l, p) in f.terms() {
            acc = acc.add(&Series::gq_poly(p, a, n).mul(&Series::exp_linear(&Hc::from_gq(l), a, n)));
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.0.iter().all(Hc::is_finite)
    }
}

/// Taylor coefficients of `x ↦ W(x0 + h, z)`.
fn series_in_x(w: &WaveForm, x0: &Hc, z: &Hc, n: usize) -> Option<Series> {
    let mut num = Series::constant(Hc::zero(), n);
    let mut zk = Hc::from_f64(1.0);
    for c in w.numerator() {
        num = num.add(&Series::polyexp(c, x0, n).mul(&Series::constant(zk.clone(), n)));
        zk = zk.mul(z);
    }
    let e = Series::gq_poly(&w.zden().expand(), z, 1).0.remove(0);
    let den = Series::polyexp(&w.xden().expand(), x0, n).mul(&Series::constant(e, n));
    let s = num.mul(&Series::exp_linear(z, x0, n)).div(&den)?;
    s.is_finite().then_some(s)
}

/// Taylor coefficients of `z ↦ W(x, z0 + h)`.
fn series_in_z(w: &WaveForm, x: &Hc, z0: &Hc, n: usize) -> Option<Series> {
    let cs: Vec<Hc> = w.numerator().iter().map(|c| Series::polyexp(c, x, 1).0.remove(0)).collect();
    let d = Series::polyexp(&w.xden().expand(), x, 1).0.remove(0);
    let den = Series::gq_poly(&w.zden().expand(), z0, n).mul(&Series::constant(d, n));
    let s = Series::poly(&cs, z0, n).mul(&Series::exp_linear(x, z0, n)).div(&den)?;
    s.is_finite().then_some(s)
}

fn ratexp_value(c: &RatExp, x: &Hc) -> Option<Hc> {
    let n = Series::polyexp(c.num(), x, 1).0.remove(0);
    let d = Series::polyexp(&c.den().expand(), x, 1).0.remove(0);
    n.div(&d).filter(Hc::is_finite)
}

fn ratfun_value(r: &RatFunZ, z: &Hc) -> Option<Hc> {
    let n = Series::gq_poly(r.num(), z, 1).0.remove(0);
    let d = Series::gq_poly(&r.den().expand(), z, 1).0.remove(0);
    n.div(&d).filter(Hc::is_finite)
}

fn form_value(w: &WaveForm, x: Complex64, z: Complex64) -> Option<Hc> {
    if !clear_of_poles(w, x, z) {
        return None;
    }
    series_in_x(w, &Hc::from_complex(x), &Hc::from_complex(z), 1).map(|mut s| s.0.remove(0))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn eval_side(side: &Side<'_>, x: Complex64, z: Complex64) -> Option<Hc> {
    match side {
        Side::Form(w) => form_value(w, x, z),
        Side::ApplyX(l, w) => {
            form_value(w, x, z)?;
            let (xh, zh) = (Hc::from_complex(x), Hc::from_complex(z));
            let coeffs = l.coeffs();
            let s = series_in_x(w, &xh, &zh, coeffs.len().max(1))?;
            let mut acc = Hc::zero();
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !x_clear(c.den(), x) {
                    return None;
                }
                acc = acc.add(&ratexp_value(c, &xh)?.mul(&s.0[i]).scale(factorial(i)));
            }
            Some(acc)
        }
        Side::ApplyZ(t, w) => {
            form_value(w, x, z)?;
            let (xh, zh) = (Hc::from_complex(x), Hc::from_complex(z));
            let mut acc = Hc::zero();
            for (l, cs) in t.terms() {
                if !clear_of_poles(w, x, z + l.to_complex()) {
                    return None;
                }
                let s = series_in_z(w, &xh, &zh.add(&Hc::from_gq(l)), cs.len())?;
                for (k, r) in cs.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    if !z_clear(r.den(), z) {
                        return None;
                    }
                    acc = acc.add(&ratfun_value(r, &zh)?.mul(&s.0[k]).scale(factorial(k)));
                }
            }
            Some(acc)
        }
    }
}

/// `|l − r| / (1 + max(|l|, |r|))`, with the difference taken before
/// rounding to `f64`.
fn residual(l: &Hc, r: &Hc) -> f64 {
    let d = l.sub(r).to_complex().norm();
    let res = d / (1.0 + l.to_complex().norm().max(r.to_complex().norm()));
    if res.is_nan() {
        f64::INFINITY
    } else {
        res
    }
}

/// Like [`check_identity`], for sides that may apply operators.
pub fn check_sides(
    id: &str,
    lhs: Side<'_>,
    rhs: Side<'_>,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<OracleReport, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_residual: f64 = 0.0;
    let mut attempts = 0;
    let mut taken = 0;
    while taken < samples {
        if attempts >= MAX_ATTEMPTS_PER_SAMPLE * samples.max(1) {
            return Err(OracleError::NoSample { id: id.to_string(), attempts });
        }
        attempts += 1;
        let (x, z) = (sample(&mut rng), sample(&mut rng));
        let (Some(l), Some(r)) = (eval_side(&lhs, x, z), eval_side(&rhs, x, z)) else { continue };
        max_residual = max_residual.max(residual(&l, &r));
        taken += 1;
    }
    Ok(OracleReport { id: id.to_string(), samples, max_residual, tol, pass: max_residual < tol, seed })
}
