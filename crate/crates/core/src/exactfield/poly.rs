//! Dense univariate polynomials over ℚ(i).
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and otherwise ends in a nonzero coefficient.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;


use super::scalar::Gq;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Poly {
    coeffs: Vec<Gq>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate.
    pub fn var() -> Self {
        Self::monomial(Gq::one(), 1)
    }

    pub fn monomial(c: Gq, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Gq::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Gq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| Gq::from_int(c)).collect())
    }

    /// `(z - root)^mult`.
    pub fn linear_power(root: &Gq, mult: u32) -> Self {
        Poly::from_coeffs(vec![-root, Gq::one()]).pow(mult)
    }

    pub fn coeffs(&self) -> &[Gq] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Gq {
        self.coeffs.get(k).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Gq> {
        self.coeffs.last()
    }

    /// Largest `k` with `var^k` dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![Gq::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `var^k`, dropping lower terms.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Gq::from_int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            if p.is_zero() {
                break;
            }
            p = p.derivative();
        }
        p
    }

    pub fn eval(&self, at: &Gq) -> Gq {
        let mut acc = Gq::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    pub fn eval_complex(&self, at: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * at + c.to_complex())
    }

    /// `p(var + shift)`, by repeated synthetic division (Taylor shift).
    pub fn translate(&self, shift: &Gq) -> Self {
        if shift.is_zero() || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * shift;
                c[j] += &t;
            }
        }
        Poly::from_coeffs(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        match self.lc() {
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dl = d.lc().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![Gq::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &c;
                r[k + j] -= &t;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    /// `p / (var − a)` when `a` is a root of `p`.
    pub fn div_by_root(&self, a: &Gq) -> Option<Poly> {
        let n = self.coeffs.len();
        if n == 0 {
            return Some(Poly::zero());
        }
        if !super::modp::may_vanish(&self.coeffs, a) {
            return None;
        }
        let mut q = vec![Gq::zero(); n - 1];
        let mut carry = Gq::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &(&carry * a);
            q[k - 1] = carry.clone();
        }
        let rem = &self.coeffs[0] + &(&carry * a);
        rem.is_zero().then(|| Poly::from_coeffs(q))
    }

    /// Exact quotient, failing with `NotDivisible` on a nonzero remainder.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic greatest common divisor (zero iff both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut c = long.coeffs.clone();
        for (k, v) in short.coeffs.iter().enumerate() {
            c[k] += v;
        }
        Poly::from_coeffs(c)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, Gq::zero());
        for (k, v) in o.coeffs.iter().enumerate() {
            c[k] -= v;
        }
        Poly::from_coeffs(c)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Gq::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a * b;
                c[i + j] += &t;
            }
        }
        Poly::from_coeffs(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly { (&self).$m(o) }
        }
    )*};
}
forward_poly!(Add add, Sub sub, Mul mul);
