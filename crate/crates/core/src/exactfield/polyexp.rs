//! Polynomial-exponential functions `∑ p_λ(x)·e^{λx}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;


use super::poly::Poly;
use super::scalar::Gq;
use crate::error::{Error, Result};

/// Largest `|λ·x|` accepted by [`PolyExp::eval`].
pub const EXP_BOUND: f64 = 600.0;

/// A polynomial-exponential function in canonical form: exponents are
/// distinct, sorted by the `(re, im)` order, and carry nonzero polynomials.
/// Structural equality is functional equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct PolyExp {
    terms: BTreeMap<Gq, Poly>,
}

impl PolyExp {
    pub fn zero() -> Self {
        PolyExp { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Gq::from_int(n))
    }

    /// The function `x`.
    pub fn x() -> Self {
        Self::from_poly(Poly::var())
    }

    /// The function `e^{λx}`.
    pub fn exp(lambda: Gq) -> Self {
        Self::term(lambda, Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::term(Gq::zero(), p)
    }

    /// `p(x)·e^{λx}`.
    pub fn term(lambda: Gq, p: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(lambda, p);
        }
        PolyExp { terms }
    }

    /// `c·x^k·e^{λx}`.
    pub fn monomial(c: Gq, k: usize, lambda: Gq) -> Self {
        Self::term(lambda, Poly::monomial(c, k))
    }

    pub fn from_terms<I: IntoIterator<Item = (Gq, Poly)>>(it: I) -> Self {
        let mut out = PolyExp::zero();
        for (l, p) in it {
            out.add_term(l, &p);
        }
        out
    }

    fn add_term(&mut self, lambda: Gq, p: &Poly) {
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&lambda) {
            Some(q) => {
                let s = &*q + p;
                if s.is_zero() {
                    self.terms.remove(&lambda);
                } else {
                    *q = s;
                }
            }
            None => {
                self.terms.insert(lambda, p.clone());
            }
        }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Gq, &Poly)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Gq> {
        self.terms.keys()
    }

    pub fn poly_at(&self, lambda: &Gq) -> Option<&Poly> {
        self.terms.get(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The scalar value when `self` is constant.
    pub fn as_constant(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        match self.as_poly() {
            Some(p) if p.is_constant() => Some(p.coeff(0)),
            _ => None,
        }
    }

    /// The polynomial when only the exponent 0 occurs.
    pub fn as_poly(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => self.terms.get(&Gq::zero()).cloned(),
            _ => None,
        }
    }

    /// Units of the ring are exactly `c·e^{μx}` with `c ≠ 0`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|p| p.is_constant())
    }

    pub fn min_exponent(&self) -> Option<&Gq> {
        self.terms.keys().next()
    }

    /// Largest `k` such that `x^k` divides every polynomial part.
    pub fn x_valuation(&self) -> usize {
        self.terms.values().map(|p| p.valuation()).min().unwrap_or(0)
    }

    /// Divides by `x^k`; the caller guarantees divisibility.
    pub fn divide_x_power(&self, k: usize) -> Self {
        PolyExp {
            terms: self.terms.iter().map(|(l, p)| (l.clone(), p.shift_down(k))).collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyExp {
            terms: self.terms.iter().map(|(l, p)| (l.clone(), p.scale(c))).collect(),
        }
    }

    /// Multiplies by `e^{μx}`.
    pub fn shift_exponents(&self, mu: &Gq) -> Self {
        if mu.is_zero() {
            return self.clone();
        }
        PolyExp {
            terms: self.terms.iter().map(|(l, p)| (l + mu, p.clone())).collect(),
        }
    }

    /// Multiplies by `c·x^k·e^{μx}`.
    pub fn mul_monomial(&self, c: &Gq, k: usize, mu: &Gq) -> Self {
        PolyExp {
            terms: self
                .terms
                .iter()
                .map(|(l, p)| (l + mu, p.scale(c).shift_up(k)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// d/dx, termwise `(p e^{λx})′ = (p′ + λp) e^{λx}`.
    pub fn derive(&self) -> Self {
        PolyExp::from_terms(
            self.terms
                .iter()
                .map(|(l, p)| (l.clone(), &p.derivative() + &p.scale(l))),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            if f.is_zero() {
                break;
            }
            f = f.derive();
        }
        f
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyExp::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `Some(c)` when `self = c·other` for a scalar `c`.
    pub fn scalar_ratio(&self, other: &PolyExp) -> Option<Gq> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Gq::zero());
        }
        let (l, p) = other.terms.iter().next()?;
        let q = self.terms.get(l)?;
        let c = q.lc()? / p.lc()?;
        if other.scale(&c) == *self {
            Some(c)
        } else {
            None
        }
    }

    /// Floating-point evaluation of `∑ p_λ(x)e^{λx}`.
    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (l, p) in &self.terms {
            let lx = l.to_complex() * x;
            if lx.norm() > EXP_BOUND {
                return Err(Error::Overflow);
            }
            acc += p.eval_complex(x) * lx.exp();
        }
        Ok(acc)
    }

    /// Exact quotient in the polynomial-exponential ring, if it exists.
    pub fn exact_div(&self, divisor: &PolyExp) -> Result<PolyExp> {
        super::lattice::exact_divide(self, divisor)
    }
}

impl From<Poly> for PolyExp {
    fn from(p: Poly) -> Self {
        PolyExp::from_poly(p)
    }
}

impl From<Gq> for PolyExp {
    fn from(c: Gq) -> Self {
        PolyExp::constant(c)
    }
}

impl<'a> Add<&'a PolyExp> for &'a PolyExp {
    type Output = PolyExp;
    fn add(self, o: &PolyExp) -> PolyExp {
        let mut out = self.clone();
        for (l, p) in &o.terms {
            out.add_term(l.clone(), p);
        }
        out
    }
}

impl<'a> Sub<&'a PolyExp> for &'a PolyExp {
    type Output = PolyExp;
    fn sub(self, o: &PolyExp) -> PolyExp {
        let mut out = self.clone();
        for (l, p) in &o.terms {
            out.add_term(l.clone(), &-p);
        }
        out
    }
}

impl<'a> Mul<&'a PolyExp> for &'a PolyExp {
    type Output = PolyExp;
    fn mul(self, o: &PolyExp) -> PolyExp {
        let mut out = PolyExp::zero();
        for (l, p) in &self.terms {
            for (m, q) in &o.terms {
                out.add_term(l + m, &(p * q));
            }
        }
        out
    }
}

impl Neg for &PolyExp {
    type Output = PolyExp;
    fn neg(self) -> PolyExp {
        PolyExp {
            terms: self.terms.iter().map(|(l, p)| (l.clone(), -p)).collect(),
        }
    }
}

impl Neg for PolyExp {
    type Output = PolyExp;
    fn neg(self) -> PolyExp {
        -&self
    }
}

macro_rules! forward_pe {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<PolyExp> for PolyExp {
            type Output = PolyExp;
            fn $m(self, o: PolyExp) -> PolyExp { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a PolyExp> for PolyExp {
            type Output = PolyExp;
            fn $m(self, o: &PolyExp) -> PolyExp { (&self).$m(o) }
        }
    )*};
}
forward_pe!(Add add, Sub sub, Mul mul);

impl core::iter::Sum for PolyExp {
    fn sum<I: Iterator<Item = PolyExp>>(iter: I) -> PolyExp {
        iter.fold(PolyExp::zero(), |a, b| a + b)
    }
}

/// Collects the distinct exponents of several functions.
pub(crate) fn all_exponents<'a, I: IntoIterator<Item = &'a PolyExp>>(fs: I) -> Vec<Gq> {
    let mut v: Vec<Gq> = fs.into_iter().flat_map(|f| f.exponents().cloned()).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(l: i64) -> PolyExp {
        PolyExp::exp(Gq::from_int(l))
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&ex(1) * &ex(-1), PolyExp::one());
        let a = &PolyExp::one() + &ex(1);
        let b = &PolyExp::one() - &ex(1);
        assert_eq!(&a * &b, &PolyExp::one() - &ex(2));
        let xe = PolyExp::monomial(Gq::one(), 1, Gq::one());
        assert_eq!(&xe * &xe, PolyExp::monomial(Gq::one(), 2, Gq::from_int(2)));
    }

    #[test]
    fn derive_examples() {
        let xe = PolyExp::monomial(Gq::one(), 1, Gq::one());
        assert_eq!(xe.derive(), PolyExp::term(Gq::one(), Poly::from_ints(&[1, 1])));
        assert_eq!(PolyExp::from_poly(Poly::from_ints(&[0, 0, 1])).derive(), PolyExp::from_poly(Poly::from_ints(&[0, 2])));
        let eix = PolyExp::exp(Gq::i());
        assert_eq!(eix.derive(), eix.scale(&Gq::i()));
    }

    #[test]
    fn eval_examples() {
        let f = PolyExp::monomial(Gq::one(), 2, Gq::one());
        let v = f.eval(Complex64::new(1.0, 0.0)).unwrap();
        assert!((v.re - core::f64::consts::E).abs() < 1e-12 && v.im.abs() < 1e-12);
        assert_eq!(PolyExp::one().eval(Complex64::new(0.3, -2.0)).unwrap(), Complex64::new(1.0, 0.0));
        let g = &(&ex(3) + &ex(1).scale(&Gq::from_int(2))) + &ex(-1);
        assert!((g.eval(Complex64::new(0.0, 0.0)).unwrap() - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert_eq!(ex(1000).eval(Complex64::new(1.0, 0.0)), Err(Error::Overflow));
    }
}
