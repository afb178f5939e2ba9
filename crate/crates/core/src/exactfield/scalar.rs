//! Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use alloc::string::String;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rational::Rat;
use crate::error::{Error, Result};

/// An element of ℚ(i). Both parts are kept in lowest terms.
///
/// The derived order is lexicographic on `(re, im)`; it is the order used
/// for every canonical sort in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GaussianRational {
    re: Rat,
    im: Rat,
}

pub type Gq = GaussianRational;

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re: Rat::from_big(re), im: Rat::from_big(im) }
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational { re: Rat::from_int(1), im: Rat::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: Rat::from_int(n), im: Rat::default() }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussianRational { re: Rat::new(num, den), im: Rat::default() }
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational { re: Rat::new(re.0, re.1), im: Rat::new(im.0, im.1) }
    }

    pub fn i() -> Self {
        GaussianRational { re: Rat::default(), im: Rat::from_int(1) }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub(crate) fn parts(&self) -> (&Rat, &Rat) {
        (&self.re, &self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        (&(&self.re * &self.re) + &(&self.im * &self.im)).to_big()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(GaussianRational { re: self.re.recip(), im: Rat::default() });
        }
        let n = &(&self.re * &self.re) + &(&self.im * &self.im);
        Ok(GaussianRational { re: &self.re / &n, im: -&(&self.im / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Integer value when `self` is a real integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match (&self.re, self.im.is_zero()) {
            (Rat::Small(n, 1), true) => Some(*n),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(&self.re.denom(), &self.im.denom())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::default()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_one(&self) -> bool {
        GaussianRational::is_one(self)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(re: BigRational) -> Self {
        GaussianRational { re: Rat::from_big(re), im: Rat::default() }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational {
                re: &self.re * &o.re,
                im: Rat::default(),
            };
        }
        GaussianRational {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division of a Gaussian rational by zero")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re = &self.re + &o.re;
        self.im = &self.im + &o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re = &self.re - &o.re;
        self.im = &self.im - &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

fn fmt_rational(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `a/b+c/d*i`; a unit imaginary part prints as `i`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rational(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rational(&self.re, f)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_one() {
            f.write_str("i")
        } else if (-&self.im).is_one() {
            f.write_str("-i")
        } else {
            fmt_rational(&self.im, f)?;
            f.write_str("*i")
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parses the grammar `a/b+c/d*i` (either part optional, `i` alone allowed).
impl FromStr for GaussianRational {
    type Err = Error;
    fn from_str(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(alloc::format!("malformed Gaussian rational `{}`", src));
        if s.is_empty() {
            return Err(bad());
        }
        // Split at the last sign that is not leading and not inside a denominator.
        let bytes = s.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                split = Some(k);
                break;
            }
        }
        let parse_imag = |t: &str| -> Option<BigRational> {
            let t = t.strip_suffix('i')?;
            let t = t.strip_suffix('*').unwrap_or(t);
            match t {
                "" | "+" => Some(BigRational::one()),
                "-" => Some(-BigRational::one()),
                _ => parse_rational(t),
            }
        };
        let (re, im) = match split {
            Some(k) => {
                let (a, b) = s.split_at(k);
                if !b.ends_with('i') {
                    return Err(bad());
                }
                (parse_rational(a).ok_or_else(bad)?, parse_imag(b).ok_or_else(bad)?)
            }
            None if s.ends_with('i') => (BigRational::zero(), parse_imag(&s).ok_or_else(bad)?),
            None => (parse_rational(&s).ok_or_else(bad)?, BigRational::zero()),
        };
        Ok(GaussianRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_render() {
        for s in ["0", "3", "-1/2", "i", "-i", "2*i", "1/2+3/4*i", "1-i", "-2/3-5/7*i"] {
            let v: Gq = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<Gq>().unwrap(), v);
        }
        assert_eq!("1/2+3/4*i".parse::<Gq>().unwrap(), Gq::from_parts((1, 2), (3, 4)));
        assert_eq!("1-i".parse::<Gq>().unwrap().to_string(), "1-i");
        assert!("1/0".parse::<Gq>().is_err());
        assert!("abc".parse::<Gq>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = Gq::from_parts((1, 2), (1, 1));
        let b = Gq::from_parts((-3, 1), (2, 3));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&Gq::i() * &Gq::i(), Gq::from_int(-1));
        assert!(Gq::zero().inv().is_err());
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn lexicographic_order() {
        let a = Gq::from_int(1);
        let b = Gq::i();
        assert!(b < a);
        assert!(Gq::from_int(-1) < Gq::from_parts((-1, 1), (1, 1)));
    }
}
