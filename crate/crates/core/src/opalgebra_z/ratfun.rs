//! Rational functions of `z` over ℚ(i), kept in lowest terms.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::zden::ZDen;
use crate::error::{Error, Result};
use crate::exactfield::{Gq, Poly};

/// `num / den` in lowest terms with a monic denominator; zero is `0/1`.
/// Linear denominator factors are kept apart so that reduction is trial
/// division by `z − a`.
#[derive(Clone, Debug)]
pub struct RatFunZ {
    num: Poly,
    den: ZDen,
}

/// Cancels common factors of `num` and `den`.
pub(crate) fn reduce(num: Poly, den: ZDen) -> (Poly, ZDen) {
    let roots = den.root_list();
    reduce_at(num, den, roots)
}

/// Like [`reduce`], trying only the listed roots of `den`.
fn reduce_at(mut num: Poly, den: ZDen, roots: Vec<(Gq, u32)>) -> (Poly, ZDen) {
    if num.is_zero() {
        return (num, ZDen::one());
    }
    let mut den = den;
    for (a, e) in roots {
        for _ in 0..e {
            match num.div_by_root(&a) {
                Some(q) => {
                    num = q;
                    den.decrement(&a);
                }
                None => break,
            }
        }
    }
    if !den.rest().is_constant() {
        let g = num.gcd(den.rest());
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides");
            let r = den.rest().exact_div(&g).expect("gcd divides").monic();
            den.set_rest(r);
        }
    }
    (num, den)
}

impl RatFunZ {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (lc, d) = ZDen::from_poly(&den);
        Ok(Self::from_den(num.scale(&lc), d))
    }

    /// `num / den` reduced to lowest terms.
    pub fn from_den(num: Poly, den: ZDen) -> Self {
        let (num, den) = reduce(num, den);
        RatFunZ { num, den }
    }

    /// `num / ∏ (z − a)^{e}`.
    pub fn with_roots<I: IntoIterator<Item = (Gq, u32)>>(num: Poly, roots: I) -> Self {
        Self::from_den(num, ZDen::from_roots(roots))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: Gq) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The function `z`.
    pub fn z() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunZ { num: p, den: ZDen::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &ZDen {
        &self.den
    }

    /// The expanded monic denominator.
    pub fn den_poly(&self) -> Poly {
        self.den.expand()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.is_poly()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunZ::new(self.den.expand(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunZ) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunZ { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self) -> Self {
        if self.is_poly() {
            return Self::from_poly(self.num.derivative());
        }
        if !self.den.is_split() {
            let den = self.den.expand();
            let n = &(&self.num.derivative() * &den) - &(&self.num * &den.derivative());
            return RatFunZ::new(n, &den * &den).expect("nonzero denominator");
        }
        // (n/D)′ = (n′·R − n·S) / (D·R) with D′/D = S/R
        let (rad, s) = self.den.log_derivative();
        let n = &(&self.num.derivative() * &rad) - &(&self.num * &s);
        let den = self.den.mul(&ZDen::from_roots(self.den.roots().map(|(a, _)| (a.clone(), 1))));
        Self::from_den(n, den)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunZ { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// `r(z + λ)`.
    pub fn shift(&self, lambda: &Gq) -> Self {
        if lambda.is_zero() {
            return self.clone();
        }
        // Translation preserves coprimality and the leading coefficient.
        RatFunZ { num: self.num.translate(lambda), den: self.den.shift(lambda) }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval(z)
    }
}

impl PartialEq for RatFunZ {
    fn eq(&self, o: &RatFunZ) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl Eq for RatFunZ {}

impl<'a> Add<&'a RatFunZ> for &'a RatFunZ {
    type Output = RatFunZ;
    fn add(self, o: &RatFunZ) -> RatFunZ {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (den, ca, cb) = self.den.lcm(&o.den);
        let n = &(&self.num * &ca) + &(&o.num * &cb);
        // a root of unequal multiplicity divides exactly one cofactor, so
        // only roots shared with equal multiplicity can cancel
        let shared = self.den.roots().filter(|(a, e)| o.den.multiplicity(a) == *e).map(|(a, e)| (a.clone(), e)).collect();
        let (num, den) = reduce_at(n, den, shared);
        RatFunZ { num, den }
    }
}

impl<'a> Sub<&'a RatFunZ> for &'a RatFunZ {
    type Output = RatFunZ;
    fn sub(self, o: &RatFunZ) -> RatFunZ {
        self + &-o
    }
}

impl<'a> Mul<&'a RatFunZ> for &'a RatFunZ {
    type Output = RatFunZ;
    fn mul(self, o: &RatFunZ) -> RatFunZ {
        if self.is_zero() || o.is_zero() {
            return RatFunZ::zero();
        }
        if self.is_poly() && o.is_poly() {
            return RatFunZ::from_poly(&self.num * &o.num);
        }
        RatFunZ::from_den(&self.num * &o.num, self.den.mul(&o.den))
    }
}

impl Neg for &RatFunZ {
    type Output = RatFunZ;
    fn neg(self) -> RatFunZ {
        RatFunZ { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_examples() {
        let z2 = RatFunZ::from_poly(Poly::from_ints(&[0, 0, 1]));
        assert_eq!(z2.shift(&Gq::one()), RatFunZ::from_poly(Poly::from_ints(&[1, 2, 1])));
        let inv_z = RatFunZ::z().inv().unwrap();
        let expect = RatFunZ::new(Poly::one(), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(inv_z.shift(&Gq::from_int(-1)), expect);
        let r = RatFunZ::new(Poly::from_ints(&[-1, 1]), Poly::var()).unwrap();
        let expect = RatFunZ::new(Poly::var(), Poly::from_ints(&[1, 1])).unwrap();
        assert_eq!(r.shift(&Gq::one()), expect);
    }

    #[test]
    fn lowest_terms() {
        let r = RatFunZ::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[2, 2])).unwrap();
        assert_eq!(r, RatFunZ::from_poly(Poly::from_ints(&[-1, 1])));
        let s = &RatFunZ::z().inv().unwrap() + &RatFunZ::one();
        assert_eq!(&s - &RatFunZ::one(), RatFunZ::z().inv().unwrap());
        assert_eq!(RatFunZ::z().inv().unwrap().derivative(), RatFunZ::new(Poly::from_ints(&[-1]), Poly::from_ints(&[0, 0, 1])).unwrap());
    }

    #[test]
    fn root_and_general_denominators_agree() {
        // 1/(z² − z) entered as a general denominator and as linear factors
        let general = RatFunZ::new(Poly::one(), Poly::from_ints(&[0, -1, 1])).unwrap();
        let split = RatFunZ::with_roots(Poly::one(), [(Gq::zero(), 1), (Gq::one(), 1)]);
        assert_eq!(general, split);
        let q = RatFunZ::new(Poly::one(), Poly::from_ints(&[2, -3, 1])).unwrap();
        let sum = &(&general + &q) - &q;
        assert_eq!(sum, split);
        assert_eq!(general.derivative(), split.derivative());
        let p = RatFunZ::from_poly(Poly::from_ints(&[0, -1, 1]));
        assert!((&split * &p).is_one());
        assert_eq!(split.pow(-1).unwrap(), p);
        let z = num_complex::Complex64::new(0.3, 0.7);
        assert!((split.eval(z) - general.eval(z)).norm() < 1e-12);
    }
}
