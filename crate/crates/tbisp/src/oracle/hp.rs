//! Complex arithmetic in 256-bit binary floating point.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_complex::Complex64;
use tbisp_core::exactfield::Gq;

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn real(s: &str) -> BigFloat {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, PREC, RM, cc))
}

fn to_f64(v: &BigFloat) -> f64 {
    if v.is_nan() {
        return f64::NAN;
    }
    if v.is_inf() {
        return if v.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let Some((words, _, sign, exponent, _)) = v.as_raw_parts() else { return 0.0 };
    let Some(&top) = words.last() else { return 0.0 };
    if top == 0 {
        return 0.0;
    }
    let next = if words.len() > 1 { words[words.len() - 2] } else { 0 };
    let m = top as f64 + next as f64 / 2f64.powi(64);
    let mag = m * 2f64.powi(exponent - 64);
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// A complex number with 256-bit real and imaginary parts.
#[derive(Clone, Debug)]
pub(crate) struct Hc {
    re: BigFloat,
    im: BigFloat,
}

impl Hc {
    pub(crate) fn zero() -> Hc {
        Hc { re: BigFloat::from_f64(0.0, PREC), im: BigFloat::from_f64(0.0, PREC) }
    }

    pub(crate) fn from_f64(v: f64) -> Hc {
        Hc { re: BigFloat::from_f64(v, PREC), im: BigFloat::from_f64(0.0, PREC) }
    }

    pub(crate) fn from_complex(v: Complex64) -> Hc {
        Hc { re: BigFloat::from_f64(v.re, PREC), im: BigFloat::from_f64(v.im, PREC) }
    }

    pub(crate) fn from_gq(g: &Gq) -> Hc {
        let part = |n: String, d: String| real(&n).div(&real(&d), PREC, RM);
        let (re, im) = (g.re(), g.im());
        Hc {
            re: part(re.numer().to_string(), re.denom().to_string()),
            im: part(im.numer().to_string(), im.denom().to_string()),
        }
    }

    pub(crate) fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub(crate) fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub(crate) fn add(&self, o: &Hc) -> Hc {
        Hc { re: self.re.add(&o.re, PREC, RM), im: self.im.add(&o.im, PREC, RM) }
    }

    pub(crate) fn sub(&self, o: &Hc) -> Hc {
        Hc { re: self.re.sub(&o.re, PREC, RM), im: self.im.sub(&o.im, PREC, RM) }
    }

    pub(crate) fn mul(&self, o: &Hc) -> Hc {
        let re = self.re.mul(&o.re, PREC, RM).sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.re.mul(&o.im, PREC, RM).add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Hc { re, im }
    }

    pub(crate) fn scale(&self, k: f64) -> Hc {
        self.mul(&Hc::from_f64(k))
    }

    pub(crate) fn div(&self, o: &Hc) -> Option<Hc> {
        if o.is_zero() {
            return None;
        }
        let n = o.re.mul(&o.re, PREC, RM).add(&o.im.mul(&o.im, PREC, RM), PREC, RM);
        let conj = Hc { re: o.re.clone(), im: o.im.neg() };
        let p = self.mul(&conj);
        Some(Hc { re: p.re.div(&n, PREC, RM), im: p.im.div(&n, PREC, RM) })
    }

    pub(crate) fn exp(&self) -> Hc {
        with_consts(|cc| {
            let m = self.re.exp(PREC, RM, cc);
            let c = self.im.cos(PREC, RM, cc);
            let s = self.im.sin(PREC, RM, cc);
            Hc { re: m.mul(&c, PREC, RM), im: m.mul(&s, PREC, RM) }
        })
    }
}
