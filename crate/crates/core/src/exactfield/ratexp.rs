//! Rational-exponential functions: quotients of polynomial-exponential ones.

use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::denom::{cancel_common, Denom};
use super::polyexp::PolyExp;
use super::scalar::Gq;
use crate::error::{Error, Result};

/// `num / den`, kept unreduced apart from unit extraction and cancellation
/// of denominator factors that divide the numerator. Equality is decided
/// by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatExp {
    num: PolyExp,
    den: Denom,
}

impl RatExp {
    pub fn new(num: PolyExp, den: &PolyExp) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, d) = Denom::split(den)?;
        let num = num.exact_div(&unit)?;
        Ok(RatExp::from_parts(num, d))
    }

    pub fn from_parts(num: PolyExp, den: Denom) -> Self {
        let mut r = RatExp { num, den };
        if r.num.is_zero() {
            r.den = Denom::one();
        }
        r
    }

    pub fn zero() -> Self {
        RatExp::from_parts(PolyExp::zero(), Denom::one())
    }

    pub fn one() -> Self {
        RatExp::from_parts(PolyExp::one(), Denom::one())
    }

    pub fn num(&self) -> &PolyExp {
        &self.num
    }

    pub fn den(&self) -> &Denom {
        &self.den
    }

    pub fn den_expanded(&self) -> PolyExp {
        self.den.expand()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.as_polyexp().is_some_and(|p| p.is_one())
    }

    /// The polynomial-exponential value when the denominator is trivial.
    pub fn as_polyexp(&self) -> Option<PolyExp> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Certifies membership in the polynomial-exponential ring by exact
    /// division of the numerator by the denominator.
    pub fn to_polyexp(&self) -> Result<PolyExp> {
        if self.den.is_one() {
            return Ok(self.num.clone());
        }
        self.num.exact_div(&self.den.expand()).map_err(|e| match e {
            Error::NotDivisible => Error::NotPolyExp,
            e => e,
        })
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn cancel(mut self) -> Self {
        let mut nums = [core::mem::take(&mut self.num)];
        cancel_common(&mut nums, &mut self.den);
        let [n] = nums;
        self.num = n;
        self
    }

    pub fn scale(&self, c: &Gq) -> Self {
        RatExp::from_parts(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (unit, d) = Denom::split(&self.num)?;
        Ok(RatExp::from_parts(self.den.expand().exact_div(&unit)?, d))
    }

    pub fn div(&self, o: &RatExp) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn derive(&self) -> Self {
        if self.den.is_one() {
            return RatExp::from_parts(self.num.derive(), Denom::one());
        }
        // (n/D)′ = (n′R − n·∑eⱼfⱼ′R/fⱼ) / (D·R)
        let (rad, logd) = self.den.log_derivative();
        let num = &(&self.num.derive() * &rad) - &(&self.num * &logd);
        let den = self.den.mul(&Denom::from_radical(&self.den));
        RatExp::from_parts(num, den)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derive();
        }
        f
    }

    pub fn pow(&self, e: u32) -> Self {
        RatExp::from_parts(self.num.pow(e), self.den.pow(e))
    }

    pub fn eval(&self, x: Complex64) -> Result<Complex64> {
        Ok(self.num.eval(x)? / self.den.eval(x)?)
    }
}

impl Denom {
    pub(crate) fn from_radical(d: &Denom) -> Denom {
        let mut out = Denom::one();
        for (f, _) in d.factors() {
            out = out.mul(&Denom::factor(f.clone(), 1));
        }
        out
    }
}

impl From<PolyExp> for RatExp {
    fn from(p: PolyExp) -> Self {
        RatExp::from_parts(p, Denom::one())
    }
}

impl PartialEq for RatExp {
    fn eq(&self, o: &RatExp) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let l = self.den.lcm(&o.den);
        &self.num * &l.cofactor(&self.den) == &o.num * &l.cofactor(&o.den)
    }
}

impl Eq for RatExp {}

fn add_sub(a: &RatExp, b: &RatExp, neg: bool) -> RatExp {
    let sign = |p: PolyExp| if neg { -p } else { p };
    if a.den == b.den {
        let n = if neg { &a.num - &b.num } else { &a.num + &b.num };
        return RatExp::from_parts(n, a.den.clone());
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return RatExp::from_parts(sign(b.num.clone()), b.den.clone());
    }
    let l = a.den.lcm(&b.den);
    let n = &(&a.num * &l.cofactor(&a.den)) + &sign(&b.num * &l.cofactor(&b.den));
    RatExp::from_parts(n, l)
}

impl<'a> Add<&'a RatExp> for &'a RatExp {
    type Output = RatExp;
    fn add(self, o: &RatExp) -> RatExp {
        add_sub(self, o, false)
    }
}

impl<'a> Sub<&'a RatExp> for &'a RatExp {
    type Output = RatExp;
    fn sub(self, o: &RatExp) -> RatExp {
        add_sub(self, o, true)
    }
}

impl<'a> Mul<&'a RatExp> for &'a RatExp {
    type Output = RatExp;
    fn mul(self, o: &RatExp) -> RatExp {
        RatExp::from_parts(&self.num * &o.num, self.den.mul(&o.den))
    }
}

impl Neg for &RatExp {
    type Output = RatExp;
    fn neg(self) -> RatExp {
        RatExp::from_parts(-&self.num, self.den.clone())
    }
}
