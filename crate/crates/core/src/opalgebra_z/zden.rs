//! Monic denominators in `z`, with linear factors kept apart.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::exactfield::{Gq, Poly};

/// `∏ (z − a)^{e_a} · rest` with `rest` monic. The split is not canonical:
/// `rest` may itself have linear factors when it came from a general
/// polynomial. Equality compares the expanded product.
#[derive(Clone, Debug)]
pub struct ZDen {
    roots: BTreeMap<Gq, u32>,
    rest: Poly,
}

pub(crate) fn linear(a: &Gq) -> Poly {
    Poly::from_coeffs(alloc::vec![-a, Gq::one()])
}

/// Positive divisors of `n`, or `None` when `n` is too large to factor by
/// trial division.
fn divisors(n: u64) -> Option<Vec<u64>> {
    if n == 0 || n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Candidates `±p/q` from the rational root test, for polynomials of degree
/// at least two with rational coefficients and a nonzero constant term.
fn rational_root_candidates(p: &Poly) -> Vec<Gq> {
    if p.degree().unwrap_or(0) < 2 || p.coeffs().iter().any(|c| !c.is_real()) {
        return Vec::new();
    }
    let l = p.coeffs().iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, &c.denom_lcm()));
    let scaled = p.scale(&Gq::from(num_rational::BigRational::from_integer(l)));
    let int_abs = |c: &Gq| -> Option<u64> {
        let r = c.re();
        num_traits::ToPrimitive::to_u64(&num_traits::Signed::abs(r.numer()))
    };
    let (Some(a0), Some(an)) = (int_abs(&scaled.coeff(0)), scaled.lc().and_then(int_abs)) else {
        return Vec::new();
    };
    let (Some(ps), Some(qs)) = (divisors(a0), divisors(an)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &num in &ps {
        for &den in &qs {
            if num_integer::gcd(num, den) == 1 {
                let r = Gq::from_frac(num as i64, den as i64);
                out.push(-&r);
                out.push(r);
            }
        }
    }
    out
}

impl ZDen {
    pub fn one() -> Self {
        ZDen { roots: BTreeMap::new(), rest: Poly::one() }
    }

    /// `∏ (z − a)^e`.
    pub fn from_roots<I: IntoIterator<Item = (Gq, u32)>>(roots: I) -> Self {
        let mut m = BTreeMap::new();
        for (a, e) in roots {
            if e > 0 {
                *m.entry(a).or_insert(0) += e;
            }
        }
        ZDen { roots: m, rest: Poly::one() }
    }

    /// A nonzero polynomial made monic; returns the inverse of its leading
    /// coefficient alongside. Powers of `z` and a remaining linear factor are
    /// recognized.
    pub fn from_poly(p: &Poly) -> (Gq, Self) {
        let lc_inv = p.lc().expect("nonzero denominator").inv().expect("nonzero");
        let v = p.valuation();
        let mut rest = p.shift_down(v).scale(&lc_inv);
        let mut roots = BTreeMap::new();
        if v > 0 {
            roots.insert(Gq::zero(), v as u32);
        }
        for a in rational_root_candidates(&rest) {
            while let Some(q) = rest.div_by_root(&a) {
                *roots.entry(a.clone()).or_insert(0) += 1;
                rest = q;
            }
            if rest.is_constant() {
                break;
            }
        }
        if rest.degree() == Some(1) {
            *roots.entry(-&rest.coeff(0)).or_insert(0) += 1;
            rest = Poly::one();
        }
        (lc_inv, ZDen { roots, rest })
    }

    pub fn roots(&self) -> impl Iterator<Item = (&Gq, u32)> {
        self.roots.iter().map(|(a, e)| (a, *e))
    }

    pub fn rest(&self) -> &Poly {
        &self.rest
    }

    pub(crate) fn multiplicity(&self, a: &Gq) -> u32 {
        self.roots.get(a).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.roots.is_empty() && self.rest.is_one()
    }

    /// True when every factor is linear.
    pub fn is_split(&self) -> bool {
        self.rest.is_one()
    }

    pub fn expand(&self) -> Poly {
        self.roots.iter().fold(self.rest.clone(), |acc, (a, e)| &acc * &Poly::linear_power(a, *e))
    }

    pub fn mul(&self, o: &ZDen) -> ZDen {
        let mut roots = self.roots.clone();
        for (a, e) in &o.roots {
            *roots.entry(a.clone()).or_insert(0) += e;
        }
        ZDen { roots, rest: &self.rest * &o.rest }
    }

    pub fn pow(&self, k: u32) -> ZDen {
        ZDen { roots: self.roots.iter().map(|(a, e)| (a.clone(), e * k)).collect(), rest: self.rest.pow(k) }
    }

    /// `D(z + λ)`.
    pub fn shift(&self, lambda: &Gq) -> ZDen {
        if lambda.is_zero() {
            return self.clone();
        }
        ZDen {
            roots: self.roots.iter().map(|(a, e)| (a - lambda, *e)).collect(),
            rest: self.rest.translate(lambda),
        }
    }

    /// Least common multiple together with the cofactors `l/self`, `l/o`.
    pub fn lcm(&self, o: &ZDen) -> (ZDen, Poly, Poly) {
        let mut roots = self.roots.clone();
        let mut ca = Poly::one();
        let mut cb = Poly::one();
        for (r, e) in &o.roots {
            let ea = self.roots.get(r).copied().unwrap_or(0);
            if *e > ea {
                ca = &ca * &Poly::linear_power(r, e - ea);
                roots.insert(r.clone(), *e);
            }
        }
        for (r, e) in &self.roots {
            let eb = o.roots.get(r).copied().unwrap_or(0);
            if *e > eb {
                cb = &cb * &Poly::linear_power(r, e - eb);
            }
        }
        let rest = if self.rest == o.rest {
            self.rest.clone()
        } else {
            let l = self.rest.lcm(&o.rest);
            ca = &ca * &l.exact_div(&self.rest).expect("lcm");
            cb = &cb * &l.exact_div(&o.rest).expect("lcm");
            l
        };
        (ZDen { roots, rest }, ca, cb)
    }

    /// Removes one factor `z − a`.
    pub(crate) fn decrement(&mut self, a: &Gq) {
        if let Some(e) = self.roots.get_mut(a) {
            *e -= 1;
            if *e == 0 {
                self.roots.remove(a);
            }
        }
    }

    pub(crate) fn root_list(&self) -> Vec<(Gq, u32)> {
        self.roots.iter().map(|(a, e)| (a.clone(), *e)).collect()
    }

    pub(crate) fn set_rest(&mut self, rest: Poly) {
        self.rest = rest;
    }

    /// `(R, S)` with `R = ∏ (z − a)` over the roots and
    /// `D′/D = S/R` when `D` splits.
    pub(crate) fn log_derivative(&self) -> (Poly, Poly) {
        let rad = self.roots.keys().fold(Poly::one(), |acc, a| &acc * &linear(a));
        let mut s = Poly::zero();
        for (a, e) in &self.roots {
            let others = rad.div_by_root(a).expect("root of the radical");
            s = &s + &others.scale(&Gq::from_int(*e as i64));
        }
        (rad, s)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut d = self.rest.eval_complex(z);
        for (a, e) in &self.roots {
            d *= (z - a.to_complex()).powi(*e as i32);
        }
        d
    }
}

impl PartialEq for ZDen {
    fn eq(&self, o: &ZDen) -> bool {
        (self.roots == o.roots && self.rest == o.rest) || self.expand() == o.expand()
    }
}

impl Eq for ZDen {}
