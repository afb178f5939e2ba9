//! Rational numbers with an inline fast path for values fitting in `i64`.

use core::cmp::Ordering;
use core::hash::{Hash, Hasher};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational number in lowest terms with positive denominator. Values whose
/// numerator and denominator fit in `i64` are always stored inline, so the
/// representation is canonical.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    pub fn from_int(n: i64) -> Rat {
        Rat::Small(n, 1)
    }

    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        Rat::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Rat {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    /// Normalizes a reduced big rational, moving it inline when it fits.
    pub fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::Small(a, b),
            _ => Rat::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, d) => *d == 1,
            Rat::Big(r) => r.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n < 0,
            Rat::Big(r) => r.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Rat::Small(n, _) => *n > 0,
            Rat::Big(r) => r.is_positive(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rat::Small(n, _) => BigInt::from(*n),
            Rat::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rat::Small(_, d) => BigInt::from(*d),
            Rat::Big(r) => r.denom().clone(),
        }
    }

    /// Panics on zero.
    pub fn recip(&self) -> Rat {
        match self {
            Rat::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Rat::from_i128(*d as i128, *n as i128)
            }
            Rat::Big(r) => Rat::from_big(r.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rat::Small(n, d) => *n as f64 / *d as f64,
            Rat::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::Small(0, 1)
    }
}

impl PartialEq for Rat {
    fn eq(&self, o: &Rat) -> bool {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => a == c && b == d,
            (Rat::Big(a), Rat::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match self {
            Rat::Small(n, d) => {
                n.hash(h);
                d.hash(h);
            }
            Rat::Big(r) => r.hash(h),
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) => o.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, 1), Rat::Small(c, 1)) => Rat::from_i128(*a as i128 + *c as i128, 1),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                Rat::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        self + &-o
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::default(),
            (Rat::Small(1, 1), _) => o.clone(),
            (_, Rat::Small(1, 1)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => Rat::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        self * &o.recip()
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(n, d) if *n != i64::MIN => Rat::Small(-n, *d),
            _ => Rat::from_big(-self.to_big()),
        }
    }
}

impl Zero for Rat {
    fn zero() -> Self {
        Rat::default()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl One for Rat {
    fn one() -> Self {
        Rat::Small(1, 1)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, o: Rat) -> Rat {
        &self + &o
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, o: Rat) -> Rat {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_big_agree() {
        let a = Rat::new(i64::MAX, 3);
        let b = Rat::new(5, 7);
        let s = &a + &b;
        assert!(matches!(s, Rat::Big(_)));
        assert_eq!(Rat::from_big(s.to_big() - b.to_big()), a);
        let back = &s - &b;
        assert_eq!(back, a);
        assert!(matches!(back, Rat::Small(..)));
        assert_eq!(&Rat::new(2, 4) * &Rat::new(-3, 1), Rat::new(-3, 2));
        assert!(Rat::new(-1, 2) < Rat::new(1, 3));
        assert!(s > a);
        assert_eq!((&a * &a).to_big(), a.to_big() * a.to_big());
        assert_eq!(Rat::new(3, -6), Rat::new(-1, 2));
        assert_eq!(Rat::new(4, 6).recip(), Rat::new(3, 2));
    }
}
